#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainstab/anmodel.hpp"

namespace chainstab {

// Affine-linear form c . params + constant in the stability parameters.
struct AffineForm {
    QVec coeffs;
    Rational constant;

    Rational evaluate(const std::vector<Rational>& params) const;
    bool is_trivial() const;  // identically zero

    // Scales to primitive integer coefficients with positive leading entry.
    AffineForm normalized() const;

    bool operator==(const AffineForm& o) const = default;
    std::string to_string() const;  // e.g. "a1 - a2 = 0"
};

// Closed parameter box, one (lo, hi) range per parameter.
struct ParamBox {
    std::vector<std::pair<Rational, Rational>> ranges;
};

// Family of glued charges, one parameter per node, each node charge affine in
// its parameter: Z_j = base_j + alpha_j * linear_j. The imaginary rows of the
// linear parts must vanish, so every phase-equality locus is affine.
struct AffineChargeFamily {
    std::vector<CentralCharge> base;
    std::vector<CentralCharge> linear;

    AffineChargeFamily(std::vector<CentralCharge> b, std::vector<CentralCharge> l);

    size_t param_count() const { return base.size(); }
    size_t total_rank() const;
    GluedCharge at(const std::vector<Rational>& params) const;
};

AffineChargeFamily alpha_family_quiver(int n);
AffineChargeFamily alpha_family_chain(int n);

struct Wall {
    AffineForm equation;                 // wall locus: equation = 0
    std::vector<LatticeClass> subclasses;
    std::optional<ParamBox> active_region;
};

// One wall per proper nonzero subclass 0 < u < beta whose phase-equality
// locus meets the box; walls with the same normalized equation are merged.
// Identically satisfied equations (phases equal everywhere) produce no wall.
std::vector<Wall> exact_walls(const LatticeClass& beta,
                              const AffineChargeFamily& family,
                              const ParamBox& box);

// All shift-0 interval sums of class beta that are semistable under z,
// lexicographically ordered. All of them share the phase of beta.
std::vector<IntervalSum> enumerate_semistables(const LatticeClass& beta,
                                               const GluedCharge& z);

struct HNStratum {
    std::vector<LatticeClass> type;
    std::vector<IntervalSum> members;
};

// Partition of all shift-0 interval sums of class beta by HN type; strata
// ordered by the phase-ordered type sequence, members lexicographic.
std::vector<HNStratum> hn_stratification(const LatticeClass& beta,
                                         const GluedCharge& z);

// Rational upper bound for hi - lo (hi >= lo required). Exact zero when the
// phases are equal; otherwise bounds the angular piece through tan.
Rational phase_gap_upper(const PhaseValue& hi, const PhaseValue& lo);

// Upper bound for the slicing distance on the given samples: each sample is
// read in the tau heart and filtered under sigma; the bound is the max over
// samples of max(top sigma phase - tau phase, tau phase - bottom sigma phase),
// with negative differences clamped to zero. Throws on an empty sample list.
Rational slicing_distance_estimate(const GluedCharge& sigma, const GluedCharge& tau,
                                   const std::vector<IntervalSum>& samples, int n);

struct GridRow {
    std::vector<Rational> point;
    size_t n_semistable = 0;
    size_t signature_id = 0;  // index into ChamberGrid::signatures
};

struct ChamberGrid {
    // Distinct HN stratification fingerprints, in order of first appearance.
    std::vector<std::vector<HNStratum>> signatures;
    std::vector<GridRow> rows;
};

// Samples a k x ... x k grid inside the box; every sample point is nudged off
// all wall loci (verified against the exact wall list, not assumed).
ChamberGrid chamber_grid(const LatticeClass& beta, const AffineChargeFamily& family,
                         const ParamBox& box, int k);

}  // namespace chainstab
