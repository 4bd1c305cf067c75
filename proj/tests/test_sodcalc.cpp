#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chainstab/sodcalc.hpp"

using namespace chainstab;

namespace {

Rational R(long long p, long long q = 1) { return Rational(p, q); }

SODRecord pair_record(Rational upper, Rational lower = R(0)) {
    return SODRecord({{"A", 1}, {"B", 1}},
                     QMat{{R(1), upper}, {lower, R(1)}});
}

// Random block-upper-triangular record with unimodular diagonal blocks.
SODRecord random_record(std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> bsize(1, 2);
    const size_t ncomp = 2 + rng() % 2;
    std::vector<SODComponent> comps;
    for (size_t i = 0; i < ncomp; ++i)
        comps.push_back({"C" + std::to_string(i + 1), (size_t)bsize(rng)});
    size_t total = 0;
    std::vector<size_t> offs;
    for (const auto& c : comps) {
        offs.push_back(total);
        total += c.generators;
    }
    QMat g(total, total);
    for (size_t i = 0; i < ncomp; ++i) {
        const size_t o = offs[i], s = comps[i].generators;
        if (s == 1) {
            g.at(o, o) = R(rng() % 2 ? 1 : -1);
        } else {
            // unit-triangular product keeps the determinant at +-1
            long long x = coef(rng), y = coef(rng);
            long long sign = rng() % 2 ? 1 : -1;
            g.at(o, o) = R(sign);
            g.at(o, o + 1) = R(sign * x);
            g.at(o + 1, o) = R(y);
            g.at(o + 1, o + 1) = R(x * y + (rng() % 2 ? 1 : -1));
        }
        for (size_t j = i + 1; j < ncomp; ++j)
            for (size_t r = 0; r < s; ++r)
                for (size_t c = 0; c < comps[j].generators; ++c)
                    g.at(o + r, offs[j] + c) = R(coef(rng));
    }
    return SODRecord(std::move(comps), std::move(g));
}

}  // namespace

TEST_CASE("semiorthogonality is block upper triangularity") {
    CHECK(check_semiorthogonal(pair_record(R(5))));
    CHECK_FALSE(check_semiorthogonal(pair_record(R(0), R(1))));
    CHECK(check_semiorthogonal(pair_record(R(-1))));  // two node chain simples

    SODRecord blocks({{"A", 2}, {"B", 1}},
                     QMat{{R(1), R(0), R(2)},
                          {R(0), R(1), R(3)},
                          {R(0), R(0), R(1)}});
    CHECK(check_semiorthogonal(blocks));
    blocks.gram.at(2, 1) = R(1);
    CHECK_FALSE(check_semiorthogonal(blocks));

    CHECK_THROWS(SODRecord({{"A", 1}}, QMat(2, 2)));
}

TEST_CASE("pair mutations at class level") {
    SUBCASE("pairing one subtracts the pivot class") {
        auto rec = pair_record(R(1));
        auto m = left_mutation_matrix(rec, 1);
        CHECK(m.at(1, 0) == R(-1));
        CHECK(m.at(1, 1) == R(1));
    }

    SUBCASE("orthogonal pair just swaps") {
        auto rec = pair_record(R(0));
        auto m = left_mutation_matrix(rec, 1);
        CHECK(m == QMat::identity(2));
        auto moved = left_mutate(rec, 1);
        CHECK(moved.components[0].label == "B");
        CHECK(moved.gram == QMat::identity(2));
    }

    SUBCASE("two node chain simples produce the projective cover") {
        auto rec = pair_record(R(-1));
        auto m = left_mutation_matrix(rec, 1);
        CHECK(m.at(1, 0) == R(1));  // new class is the sum of the simples
        auto moved = left_mutate(rec, 1);
        CHECK(moved.components[0].label == "B");
        CHECK(moved.components[1].label == "A");
        CHECK(moved.gram == QMat{{R(1), R(1)}, {R(0), R(1)}});
    }

    SUBCASE("non-unimodular pivot is rejected") {
        SODRecord rec({{"A", 1}, {"B", 1}}, QMat{{R(2), R(1)}, {R(0), R(1)}});
        CHECK_THROWS_WITH(left_mutate(rec, 1), doctest::Contains("non-unimodular"));
    }
}

TEST_CASE("mutations preserve semiorthogonality and invert each other") {
    std::mt19937 rng(60221023);
    for (int trial = 0; trial < 120; ++trial) {
        auto rec = random_record(rng);
        REQUIRE(check_semiorthogonal(rec));
        const size_t k = 1 + rng() % (rec.components.size() - 1);

        auto m = left_mutation_matrix(rec, k);
        const Rational d = m.det();
        CHECK((d == 1 || d == -1));  // the class lattice is preserved

        auto left = left_mutate(rec, k);
        CHECK(check_semiorthogonal(left));
        auto back = right_mutate(left, k);
        CHECK(back.gram == rec.gram);
        for (size_t i = 0; i < rec.components.size(); ++i)
            CHECK(back.components[i].label == rec.components[i].label);

        auto right = right_mutate(rec, k);
        CHECK(check_semiorthogonal(right));
        auto fwd = left_mutate(right, k);
        CHECK(fwd.gram == rec.gram);
    }
}

TEST_CASE("component counting in the chain complement") {
    CHECK(complement_component_count(1, {}) == 1);
    CHECK(complement_component_count(2, {Integer(3)}) == 4);
    CHECK(complement_component_count(2, {Integer(2)}) == 2);
    CHECK(complement_component_count(3, {Integer(3), Integer(3)}) == 15);
    CHECK_THROWS(complement_component_count(2, {}));
    CHECK_THROWS(complement_component_count(2, {Integer(1)}));
    CHECK_THROWS(complement_component_count(0, {}));
}
