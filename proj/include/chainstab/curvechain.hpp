#pragma once

#include <string>
#include <vector>

#include "chainstab/walls.hpp"

namespace chainstab {

// Numerical class of a chain of sheaves on a genus-g curve: one (degree,
// rank) pair per node. The genus is carried as metadata only.
struct ChainClass {
    Integer g = 0;
    std::vector<std::pair<Integer, Integer>> pairs;

    ChainClass() = default;
    ChainClass(Integer genus, std::vector<std::pair<Integer, Integer>> p);

    int n() const { return (int)pairs.size(); }
    bool is_zero() const;
    LatticeClass to_lattice() const;

    // Heart classes have r_i >= 0 and, when r_i = 0, d_i >= 0.
    void check_heart() const;
};

// Z = sum_j (-d_j - alpha_j r_j + i r_j).
ComplexQ z_alpha(const std::vector<Rational>& alpha, const ChainClass& beta);

// mu = (sum d_j + sum alpha_j r_j) / (sum r_j); +infinity when all ranks vanish.
Slope mu_alpha(const std::vector<Rational>& alpha, const ChainClass& beta);

enum class PhaseBand { interior, phase_one };  // 0 < phi < 1 vs phi = 1

struct TorsionReport {
    bool possible = true;  // false: numerically impossible to be semistable
    std::string note;
};

// Necessary condition in the interior band: a node with torsion (r_i = 0,
// d_i > 0) next to a node of positive rank forces a phase-1 subchain, so the
// class cannot be semistable at 0 < phi < 1. Purely numerical; true verdicts
// are only necessary, never sufficient.
TorsionReport torsion_free_necessary(const ChainClass& beta, PhaseBand band);

// Candidate-destabilizer bounds: per node, ranks run over [0, r_i] and
// degrees over the supplied [lo, hi]. Degree bounds are mandatory.
struct DegreeBox {
    std::vector<std::pair<Integer, Integer>> degree;
};

// Slope-equality walls mu_alpha(beta') = mu_alpha(beta) over all proper
// nonzero candidates in the box with positive total rank; affine in alpha.
// Complete within the box; candidates need not be actual subsheaves.
std::vector<Wall> alpha_walls(const ChainClass& beta, const DegreeBox& box);

struct SymPowerReport {
    Rational phase;   // always 1
    Integer length;   // total torsion length, sum of degrees
    std::string model;  // symmetric power of the curve, symbolic
};

// The all-torsion case: every rank zero, positive total degree.
SymPowerReport sym_power_case(const ChainClass& beta);

}  // namespace chainstab
