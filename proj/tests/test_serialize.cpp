#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <nlohmann/json.hpp>

#include "chainstab/serialize.hpp"

using namespace chainstab;

TEST_CASE("rational strings round trip, including the UTF-8 minus sign") {
    CHECK(rational_from_json(Json("-3/2")) == Rational(-3, 2));
    CHECK(rational_from_json(Json("−3/2")) == Rational(-3, 2));
    CHECK(rational_from_json(Json(7)) == Rational(7));
    CHECK(rational_json(Rational(-3, 2)) == Json("-3/2"));
    CHECK_THROWS_AS((void)rational_from_json(Json("1.5")), std::invalid_argument);
    CHECK_THROWS_AS((void)rational_from_json(Json(nullptr)), std::invalid_argument);
}

TEST_CASE("matrices and classes round trip") {
    const QMat m{{Rational(1), Rational(-1, 2)}, {Rational(0), Rational(3)}};
    CHECK(qmat_from_json(qmat_json(m)) == m);
    CHECK_THROWS(qmat_from_json(Json::parse(R"([["1"],["1","2"]])")));

    const LatticeClass q = quiver_class({1, 2, 0});
    CHECK(lattice_class_from_json(lattice_class_json(q)) == q);
    const LatticeClass c = chain_class({{2, 1}, {-1, 3}});
    CHECK(lattice_class_from_json(lattice_class_json(c)) == c);
    CHECK_THROWS(lattice_class_from_json(Json::parse(R"({"kind":"weird","n":1,"coords":["1"]})")));
    // fractional coordinates are rejected
    CHECK_THROWS(lattice_class_from_json(
        Json::parse(R"({"kind":"quiver","n":1,"coords":["1/2"]})")));
}

TEST_CASE("charges round trip in both accepted shapes") {
    const GluedCharge z = alpha_charge_quiver({Rational(1), Rational(0)});
    const GluedCharge back = glued_charge_from_json(glued_charge_json(z));
    REQUIRE(back.node_count() == 2);
    CHECK(back.nodes[0].re == z.nodes[0].re);
    CHECK(back.nodes[1].im == z.nodes[1].im);

    const GluedCharge bare =
        glued_charge_from_json(Json::parse(R"({"re":["-1","0"],"im":["0","1"]})"));
    CHECK(bare.node_count() == 1);
    CHECK(bare.total_rank() == 2);
}

TEST_CASE("representations round trip and reject inconsistent data") {
    ChainRep rep({2, 1}, {QMat{{Rational(1), Rational(0)}}});
    const ChainRep back = chain_rep_from_json(chain_rep_json(rep));
    CHECK(back.dims == rep.dims);
    CHECK(back.maps[0] == rep.maps[0]);
    CHECK_THROWS(chain_rep_from_json(
        Json::parse(R"({"n":3,"dims":["1","1"],"maps":[[["1"]]]})")));
    // zero-dimensional nodes may write their maps as []
    const ChainRep z =
        chain_rep_from_json(Json::parse(R"({"dims":["1","0"],"maps":[[]]})"));
    CHECK(z.maps[0].rows() == 0);
}

TEST_CASE("decomposition, verdict and wall outputs carry exact strings") {
    ChainRep rep({1, 1}, {QMat{{Rational(1)}}});
    const Json dec = interval_sum_json(decompose(rep));
    CHECK(dec.at("display") == "M[1,2]");
    CHECK(dec.at("terms")[0].at("mult") == "1");

    const auto z = alpha_charge_quiver({Rational(0), Rational(1)});
    const Json v = verdict_json(is_semistable(rep, z));
    CHECK(v.at("semistable") == false);
    CHECK(v.at("certificate").at("coords")[1] == "1");

    const Json hn = hn_json(hn_filtration(rep, z));
    REQUIRE(hn.at("factors").size() == 2);
    CHECK(hn.at("factors")[0].at("phase").at("exact") == "3/4");

    ParamBox box;
    box.ranges = {{Rational(-10), Rational(10)}, {Rational(-10), Rational(10)}};
    const Json walls =
        walls_json(exact_walls(quiver_class({1, 1}), alpha_family_quiver(2), box));
    REQUIRE(walls.size() == 1);
    CHECK(walls[0].at("equation").at("display") == "a1 - a2 = 0");
    CHECK(walls[0].at("subclass").size() == 2);
}

TEST_CASE("decomposition records round trip") {
    SODRecord rec({{"A", 1}, {"B", 2}},
                  QMat{{Rational(1), Rational(0), Rational(2)},
                       {Rational(0), Rational(1), Rational(0)},
                       {Rational(0), Rational(0), Rational(1)}});
    const SODRecord back = sod_record_from_json(sod_record_json(rec));
    CHECK(back.components.size() == 2);
    CHECK(back.components[1].generators == 2);
    CHECK(back.gram == rec.gram);
}

TEST_CASE("derivations and tower records serialize completely") {
    const Derivation d = derive_gluing_functor(2);
    const Json jd = derivation_json(d);
    CHECK(jd.at("result") == "E[-1]");
    CHECK(jd.at("steps").size() == d.steps.size());
    for (const auto& s : jd.at("steps")) {
        CHECK(s.contains("rule"));
        CHECK(s.contains("before_hash"));
        CHECK(s.contains("after_hash"));
    }
    const Json jt = tower_record_json(build_tower(3));
    CHECK(jt.at("n") == 3);
    CHECK(jt.at("levels")[2].at("fiber_rank").is_null());
    CHECK(jt.at("line_bundles")[1].at("description") == "Pull_3(O(-1))");
}

TEST_CASE("chamber CSV uses rational strings and a fixed header") {
    ParamBox box;
    box.ranges = {{Rational(-1), Rational(1)}, {Rational(-1), Rational(1)}};
    const auto grid =
        chamber_grid(quiver_class({1, 1}), alpha_family_quiver(2), box, 2);
    const std::string csv = chamber_grid_csv(grid);
    CHECK(csv.rfind("param_1,param_2,n_semistable,hn_type_id\n", 0) == 0);
    CHECK(csv.find('.') == std::string::npos);
}

TEST_CASE("chain classes round trip") {
    const ChainClass c(2, {{3, 1}, {0, 0}});
    const ChainClass back = chain_class_from_json(chain_class_json(c));
    CHECK(back.g == 2);
    CHECK(back.pairs == c.pairs);
    CHECK_THROWS(chain_class_from_json(Json::parse(R"({"g":"0","pairs":[["1"]]})")));
}
