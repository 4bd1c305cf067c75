#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chainstab/charge.hpp"
#include "chainstab/lattice.hpp"

using namespace chainstab;

namespace {

Rational R(long long p, long long q = 1) { return Rational(p, q); }

QVec qv(std::initializer_list<long long> xs) {
    QVec v;
    for (auto x : xs) v.emplace_back(x);
    return v;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("-3/2") == R(-3, 2));
    CHECK(parse_rational("−3/2") == R(-3, 2));  // U+2212 minus
    CHECK(parse_rational("7") == R(7));
    CHECK(parse_rational("4/6") == R(2, 3));
    CHECK(rational_to_string(R(-3, 2)) == "-3/2");
    CHECK(rational_to_string(R(5)) == "5");
    CHECK(rational_to_string(R(0)) == "0");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("matrix basics") {
    QMat a{{R(1), R(2)}, {R(3), R(4)}};
    CHECK(a.det() == R(-2));
    CHECK(a.rank() == 2);
    QMat inv = a.inverse();
    CHECK(a * inv == QMat::identity(2));
    QMat sing{{R(1), R(2)}, {R(2), R(4)}};
    CHECK(sing.rank() == 1);
    CHECK(sing.det() == R(0));
    CHECK_THROWS(sing.inverse());
}

TEST_CASE("null space is primitive with positive leading entry") {
    QMat z = QMat::from_rows({qv({-1, 0, -1, 0}), qv({0, 1, 0, 1})});
    auto basis = z.null_space();
    REQUIRE(basis.size() == 2);
    CHECK(basis[0] == qv({1, 0, -1, 0}));
    CHECK(basis[1] == qv({0, 1, 0, -1}));
    for (const auto& v : basis) {
        CHECK(z.apply(v) == qv({0, 0}));
    }
}

TEST_CASE("kernel basis of a central charge") {
    CentralCharge z(qv({-1, 0, -1, 0}), qv({0, 1, 0, 1}));
    auto basis = kernel_basis(z);
    REQUIRE(basis.size() == 2);
    CHECK(basis[0] == qv({1, 0, -1, 0}));
    CHECK(basis[1] == qv({0, 1, 0, -1}));

    CentralCharge full(qv({-1, 0}), qv({0, 1}));
    CHECK(kernel_basis(full).empty());

    CentralCharge zero(qv({0, 0}), qv({0, 0}));
    CHECK(kernel_basis(zero).size() == 2);
}

TEST_CASE("support property verdicts") {
    CentralCharge z(qv({-1, 0, -1, 0}), qv({0, 1, 0, 1}));

    QuadForm identity(QMat::identity(4));
    auto rep = check_support_property(z, identity, {});
    CHECK_FALSE(rep.kernel_negdef);

    CentralCharge inj(qv({-1, 0}), qv({0, 1}));
    QuadForm zero2(QMat(2, 2));
    auto vac = check_support_property(inj, zero2, {});
    CHECK(vac.kernel_negdef);

    QMat neg = QMat::identity(4);
    for (size_t i = 0; i < 4; ++i) neg.at(i, i) = R(-1);
    auto sample = quiver_class({1, 1, 0, 0});
    auto rep2 = check_support_property(z, QuadForm(neg), {sample});
    CHECK(rep2.kernel_negdef);
    REQUIRE(rep2.violating_samples.size() == 1);
    CHECK(rep2.violating_samples[0] == sample);

    CHECK_THROWS(QuadForm(QMat{{R(0), R(1)}, {R(2), R(0)}}));
}

TEST_CASE("definiteness agrees with the fraction-free minor oracle") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int trial = 0; trial < 200; ++trial) {
        QMat q(4, 4);
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = i; j < 4; ++j) {
                Rational v(coef(rng), 1 + (trial % 3));
                q.at(i, j) = v;
                q.at(j, i) = v;
            }
        std::vector<QVec> std_basis;
        for (size_t i = 0; i < 4; ++i) {
            QVec e(4, R(0));
            e[i] = R(1);
            std_basis.push_back(e);
        }
        bool sylvester = negative_definite_on_span(QuadForm(q), std_basis);

        QMat neg(4, 4);
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j) neg.at(i, j) = -q.at(i, j);
        auto minors = leading_principal_minors(neg);
        bool oracle = true;
        for (const auto& d : minors) oracle = oracle && d > 0;

        CHECK(sylvester == oracle);
    }
}

TEST_CASE("support verdict is invariant under kernel basis change") {
    CentralCharge z(qv({-1, 0, -1, 0}), qv({0, 1, 0, 1}));
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-2, 2);
    QMat neg = QMat::identity(4);
    for (size_t i = 0; i < 4; ++i) neg.at(i, i) = R(-1);
    QuadForm q(neg);
    auto basis = kernel_basis(z);
    bool base_verdict = negative_definite_on_span(q, basis);
    for (int trial = 0; trial < 25; ++trial) {
        // random unimodular 2x2 change of basis
        long long a = coef(rng), b = coef(rng);
        QMat u{{R(1), R(a)}, {R(0), R(1)}};
        QMat l{{R(1), R(0)}, {R(b), R(1)}};
        QMat m = u * l;
        std::vector<QVec> alt = {m.at(0, 0) * basis[0] + m.at(0, 1) * basis[1],
                                 m.at(1, 0) * basis[0] + m.at(1, 1) * basis[1]};
        CHECK(negative_definite_on_span(q, alt) == base_verdict);
    }
}

TEST_CASE("alpha charge values") {
    auto z0 = alpha_charge_chain({R(0)});
    auto b = chain_class({{1, 2}});
    CHECK(z0.evaluate(b) == ComplexQ(R(-1), R(2)));

    auto z1 = alpha_charge_chain({R(1)});
    CHECK(z1.evaluate(chain_class({{0, 1}})) == ComplexQ(R(-1), R(1)));

    auto glued = alpha_charge_chain({R(0), R(0)});
    CHECK(glued.evaluate(chain_class({{1, 1}, {2, 0}})) == ComplexQ(R(-3), R(1)));
}

TEST_CASE("gluing adds node values") {
    auto g = alpha_charge_chain({R(0), R(0)});
    CHECK(g.evaluate(chain_class({{0, 1}, {0, 1}})) == ComplexQ(R(0), R(2)));

    auto mixed = alpha_charge_chain({R(0), R(1)});
    auto beta = chain_class({{1, 1}, {1, 1}});
    CHECK(mixed.evaluate(beta) == ComplexQ(R(-3), R(2)));
    CHECK(mixed.evaluate_node(0, beta) + mixed.evaluate_node(1, beta) ==
          mixed.evaluate(beta));

    auto single = glue_charges({CentralCharge(qv({-1, 0}), qv({0, 1}))});
    CHECK(single.evaluate(chain_class({{1, 0}})) == ComplexQ(R(-1), R(0)));
    CHECK(single.evaluate(chain_class({{0, 1}})) == ComplexQ(R(0), R(1)));
}

TEST_CASE("slopes") {
    CHECK(slope_of_value({R(-1), R(2)}) == Slope{false, R(1, 2)});
    CHECK(slope_of_value({R(-3), R(0)}).infinite);
    CHECK(slope_of_value({R(-3), R(1)}) == Slope{false, R(3)});
    CHECK_THROWS_WITH(slope_of_value({R(0), R(0)}), "zero object class");
}

TEST_CASE("phase values and ordering") {
    auto half = phase_of_value({R(0), R(1)});
    REQUIRE(half.exact_rational().has_value());
    CHECK(*half.exact_rational() == R(1, 2));

    auto one = phase_of_value({R(-1), R(0)});
    REQUIRE(one.exact_rational().has_value());
    CHECK(*one.exact_rational() == R(1));

    CHECK(phase_of_value({R(-1), R(2)}) > half);
    CHECK(half < one);
    CHECK_THROWS_WITH(phase_of_value({R(1), R(0)}), "not a heart class under Z");
    CHECK_THROWS(phase_of_value({R(0), R(-1)}));

    // for fixed positive imaginary part, larger slope means larger phase
    for (long long a = -3; a <= 3; ++a)
        for (long long b = -3; b <= 3; ++b) {
            ComplexQ x(R(a), R(2)), y(R(b), R(2));
            bool slope_lt = slope_of_value(x) < slope_of_value(y) &&
                            !(slope_of_value(y) < slope_of_value(x));
            CHECK(slope_lt == (phase_of_value(x) < phase_of_value(y)));
        }
}

TEST_CASE("phase shift by integers") {
    auto p = phase_of_value({R(-1), R(1)});
    CHECK(p.plus_int(1) > p);
    CHECK(p.plus_int(-1) < p);
    CHECK(p.plus_int(2).compare(p.plus_int(2)) == 0);
}

TEST_CASE("gl action relabels but keeps semistables") {
    // one quiver node, Z(S_1) = i
    StabilityData sigma(alpha_charge_quiver({R(0)}));
    auto s1 = quiver_class({1});
    sigma.record_semistable(s1);
    REQUIRE(sigma.semistables.size() == 1);
    CHECK(*sigma.semistables[0].second.exact_rational() == R(1, 2));

    SUBCASE("identity with k=1 shifts every phase down by one") {
        GLtildeElement g(QMat::identity(2), 1);
        auto moved = act_gl(sigma, g);
        CHECK(moved.effective_value(s1) == ComplexQ(R(0), R(1)));
        CHECK(*moved.semistables[0].second.exact_rational() == R(-1, 2));
    }

    SUBCASE("identity element changes nothing") {
        auto moved = act_gl(sigma, GLtildeElement());
        CHECK(moved.effective_value(s1) == ComplexQ(R(0), R(1)));
        CHECK(moved.semistables[0].second.compare(sigma.semistables[0].second) == 0);
    }

    SUBCASE("quarter rotation sends i to -1 and the phase to 1") {
        GLtildeElement g(QMat{{R(0), R(-1)}, {R(1), R(0)}}, 0);
        auto moved = act_gl(sigma, g);
        CHECK(moved.effective_value(s1) == ComplexQ(R(-1), R(0)));
        REQUIRE(moved.semistables[0].second.exact_rational().has_value());
        CHECK(*moved.semistables[0].second.exact_rational() == R(1));
    }

    SUBCASE("acting by g then its inverse is the identity") {
        std::mt19937 rng(99);
        std::uniform_int_distribution<int> coef(-3, 3);
        int done = 0;
        while (done < 30) {
            QMat t{{R(coef(rng)), R(coef(rng))}, {R(coef(rng)), R(coef(rng))}};
            if (!(t.det() > 0)) continue;
            ++done;
            GLtildeElement g(t, coef(rng));
            auto back = act_gl(act_gl(sigma, g), gl_inverse(g));
            CHECK(back.effective_value(s1) == sigma.effective_value(s1));
            CHECK(back.semistables[0].second.compare(sigma.semistables[0].second) == 0);
            auto gg = gl_compose(g, gl_inverse(g));
            CHECK(gg.is_identity());
        }
    }

    CHECK_THROWS(act_gl(sigma, GLtildeElement(QMat{{R(1), R(0)}, {R(0), R(-1)}}, 0)));
}

TEST_CASE("gl composition matches sequential action") {
    StabilityData sigma(alpha_charge_quiver({R(0), R(1, 2)}));
    auto beta = quiver_class({1, 1});
    sigma.record_semistable(beta);
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> coef(-3, 3);
    int done = 0;
    while (done < 30) {
        QMat t1{{R(coef(rng)), R(coef(rng))}, {R(coef(rng)), R(coef(rng))}};
        QMat t2{{R(coef(rng)), R(coef(rng))}, {R(coef(rng)), R(coef(rng))}};
        if (!(t1.det() > 0) || !(t2.det() > 0)) continue;
        ++done;
        GLtildeElement g1(t1, coef(rng)), g2(t2, coef(rng));
        auto seq = act_gl(act_gl(sigma, g1), g2);
        auto comp = act_gl(sigma, gl_compose(g1, g2));
        CHECK(seq.effective_value(beta) == comp.effective_value(beta));
        CHECK(seq.semistables[0].second.compare(comp.semistables[0].second) == 0);
    }
}

TEST_CASE("autoequivalence action on the charge") {
    StabilityData sigma(alpha_charge_quiver({R(0)}));
    auto s1 = quiver_class({1});

    SUBCASE("negated lattice matrix negates the charge") {
        QMat m{{R(-1)}};
        auto moved = act_autoequivalence(sigma, m);
        CHECK(moved.base.evaluate(s1) == ComplexQ(R(0), R(-1)));
    }

    SUBCASE("identity changes nothing") {
        auto moved = act_autoequivalence(sigma, QMat::identity(1));
        CHECK(moved.base.evaluate(s1) == sigma.base.evaluate(s1));
    }

    SUBCASE("swapping the two chain nodes swaps the parameters") {
        StabilityData two(alpha_charge_chain({R(0), R(1)}));
        QMat swap(4, 4);
        swap.at(0, 2) = R(1);
        swap.at(1, 3) = R(1);
        swap.at(2, 0) = R(1);
        swap.at(3, 1) = R(1);
        auto moved = act_autoequivalence(two, swap);
        auto expect = alpha_charge_chain({R(1), R(0)});
        for (auto coords : {chain_class({{1, 0}, {0, 0}}), chain_class({{0, 1}, {0, 0}}),
                            chain_class({{0, 0}, {1, 0}}), chain_class({{0, 0}, {0, 1}})}) {
            CHECK(moved.base.evaluate(coords) == expect.evaluate(coords));
        }
    }

    CHECK_THROWS(act_autoequivalence(sigma, QMat{{R(2)}}));
}
