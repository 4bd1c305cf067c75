#include "chainstab/curvechain.hpp"

#include <map>
#include <stdexcept>

namespace chainstab {

ChainClass::ChainClass(Integer genus, std::vector<std::pair<Integer, Integer>> p)
    : g(std::move(genus)), pairs(std::move(p)) {
    if (g < 0) throw std::invalid_argument("genus must be nonnegative");
    for (const auto& [d, r] : pairs) {
        (void)d;
        if (r < 0) throw std::invalid_argument("ranks must be nonnegative");
    }
}

bool ChainClass::is_zero() const {
    for (const auto& [d, r] : pairs) {
        if (d != 0 || r != 0) return false;
    }
    return true;
}

LatticeClass ChainClass::to_lattice() const { return chain_class(pairs); }

void ChainClass::check_heart() const {
    for (const auto& [d, r] : pairs) {
        if (r == 0 && d < 0)
            throw std::invalid_argument("torsion class with negative degree");
    }
}

ComplexQ z_alpha(const std::vector<Rational>& alpha, const ChainClass& beta) {
    if (alpha.size() != beta.pairs.size())
        throw std::invalid_argument("parameter length mismatch");
    ComplexQ z;
    for (size_t j = 0; j < alpha.size(); ++j) {
        const Rational d(beta.pairs[j].first), r(beta.pairs[j].second);
        z.re += -d - alpha[j] * r;
        z.im += r;
    }
    return z;
}

Slope mu_alpha(const std::vector<Rational>& alpha, const ChainClass& beta) {
    const ComplexQ z = z_alpha(alpha, beta);
    if (z.is_zero()) throw std::invalid_argument("zero object class");
    return slope_of_value(z);
}

TorsionReport torsion_free_necessary(const ChainClass& beta, PhaseBand band) {
    TorsionReport out;
    bool torsion = false, positive_rank = false, any_degree = false;
    for (const auto& [d, r] : beta.pairs) {
        if (r == 0 && d > 0) torsion = true;
        if (r > 0) positive_rank = true;
        if (d != 0) any_degree = true;
    }
    if (!positive_rank && any_degree) out.note = "phase-1 locus";
    if (band == PhaseBand::phase_one) return out;
    // interior band: a torsion component injects as a phase-1 subchain
    if (torsion && positive_rank) out.possible = false;
    return out;
}

std::vector<Wall> alpha_walls(const ChainClass& beta, const DegreeBox& box) {
    const size_t n = beta.pairs.size();
    if (box.degree.size() != n) throw std::invalid_argument("degree box length mismatch");
    for (const auto& [lo, hi] : box.degree) {
        if (lo > hi) throw std::invalid_argument("empty degree box");
    }
    Integer total_rank = 0, total_deg = 0;
    for (const auto& [d, r] : beta.pairs) {
        total_deg += d;
        total_rank += r;
    }
    if (total_rank == 0) return {};  // slope is +infinity, no affine locus

    std::map<std::pair<QVec, Rational>, std::vector<LatticeClass>> walls;
    std::vector<std::pair<Integer, Integer>> cand(n);
    for (size_t j = 0; j < n; ++j) cand[j] = {box.degree[j].first, Integer(0)};
    while (true) {
        bool zero = true, full = true;
        Integer rank_p = 0, deg_p = 0;
        for (size_t j = 0; j < n; ++j) {
            zero = zero && cand[j].first == 0 && cand[j].second == 0;
            full = full && cand[j] == beta.pairs[j];
            rank_p += cand[j].second;
            deg_p += cand[j].first;
        }
        if (!zero && !full && rank_p > 0) {
            // cross-multiplied slope equality, affine in alpha
            AffineForm eq;
            eq.constant = Rational(total_rank * deg_p - rank_p * total_deg);
            eq.coeffs.resize(n);
            for (size_t j = 0; j < n; ++j)
                eq.coeffs[j] = Rational(total_rank * cand[j].second -
                                        rank_p * beta.pairs[j].second);
            bool has_coeff = false;
            for (const auto& cj : eq.coeffs) has_coeff = has_coeff || cj != 0;
            // constant-only equations are either trivial or an empty locus
            if (has_coeff) {
                const AffineForm norm = eq.normalized();
                walls[{norm.coeffs, norm.constant}].push_back(chain_class(cand));
            }
        }
        size_t j = 0;
        while (j < n) {
            if (cand[j].second < beta.pairs[j].second) {
                ++cand[j].second;
                break;
            }
            cand[j].second = 0;
            if (cand[j].first < box.degree[j].second) {
                ++cand[j].first;
                break;
            }
            cand[j].first = box.degree[j].first;
            ++j;
        }
        if (j == n) break;
    }
    std::vector<Wall> out;
    for (auto& [key, subs] : walls) {
        std::sort(subs.begin(), subs.end());
        out.push_back(Wall{AffineForm{key.first, key.second}, std::move(subs),
                           std::nullopt});
    }
    return out;
}

SymPowerReport sym_power_case(const ChainClass& beta) {
    Integer length = 0;
    for (const auto& [d, r] : beta.pairs) {
        if (r != 0) throw std::invalid_argument("class has a positive-rank node");
        if (d < 0) throw std::invalid_argument("torsion class with negative degree");
        length += d;
    }
    if (length == 0) throw std::invalid_argument("zero class");
    SymPowerReport out;
    out.phase = 1;
    out.length = length;
    out.model = "Sym^" + integer_to_string(length) + "(C)";
    return out;
}

}  // namespace chainstab
