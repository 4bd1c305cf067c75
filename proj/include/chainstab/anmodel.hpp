#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chainstab/charge.hpp"

namespace chainstab {

// Representation of the linear quiver 1 -> 2 -> ... -> n over Q.
// maps[i] has shape dims[i+1] x dims[i] and carries node i+1 -> node i+2.
struct ChainRep {
    int n = 0;
    std::vector<Integer> dims;
    std::vector<QMat> maps;

    ChainRep() = default;
    ChainRep(std::vector<Integer> d, std::vector<QMat> m);

    LatticeClass class_of() const { return quiver_class(dims); }
    bool is_zero() const;

    // Composite map node a -> node b (1-based, a <= b); identity when a == b.
    QMat composite(int a, int b) const;

    // Rank of composite(a, b), precomputed at construction so repeated
    // subclass scans never re-run elimination.
    Integer composite_rank(int a, int b) const;

  private:
    std::vector<Integer> ranks_;  // row-major upper triangle, a <= b
};

// One Krull-Schmidt summand M[a,b][shift] with multiplicity.
struct Interval {
    int a = 1, b = 1;
    long long shift = 0;
    Integer mult = 1;

    auto key() const { return std::tuple{a, b, shift}; }
    bool operator==(const Interval& o) const = default;
};

struct IntervalSum {
    std::vector<Interval> terms;  // canonical: sorted by (a, b, shift), merged

    static IntervalSum of(std::vector<Interval> t);

    bool is_zero() const { return terms.empty(); }
    int node_count() const;  // max b over terms, 0 when empty
    LatticeClass class_of(int n) const;
    bool all_shift_zero() const;

    // Direct sum of interval modules with identity maps; shift-0 terms only.
    ChainRep to_rep(int n) const;

    IntervalSum operator+(const IntervalSum& o) const;
    bool operator==(const IntervalSum& o) const = default;
    bool operator<(const IntervalSum& o) const;
    std::string to_string() const;
};

// Gabriel decomposition by the rank formula
//   mult[a,b] = r(a,b) - r(a-1,b) - r(a,b+1) + r(a-1,b+1)
// where r(i,j) is the rank of the composite map node i -> node j.
IntervalSum decompose(const ChainRep& rep);

// A_n Euler form chi(u, v) = sum u_i v_i - sum u_i v_{i+1}.
Rational euler_form(const LatticeClass& u, const LatticeClass& v);

struct HomExt {
    Integer hom;   // degree-0 Hom
    Integer ext1;
};

// Degree-0 Hom and Ext^1 between (possibly shifted) interval sums; the
// category is hereditary, so these are the only nonzero degrees per pair.
HomExt hom_ext(const IntervalSum& x, const IntervalSum& y);
Integer hom_dim(const IntervalSum& x, const IntervalSum& y);

// Rank criterion: rep has a subrepresentation of class u iff
//   u_i <= u_j + dim ker(composite i -> j) for all i <= j.
bool subclass_feasible(const ChainRep& rep, const LatticeClass& u);

// Constructive route on the interval decomposition: selects one subinterval
// M[k_t, b_t] per summand M[a_t, b_t] so the classes add up to u. Greedy
// right-to-left with a smallest-left-endpoint preference; the returned sum is
// verified to have class u.
struct SubQuotient {
    IntervalSum sub;
    IntervalSum quotient;
};
std::optional<SubQuotient> interval_subobject(const IntervalSum& obj, int n,
                                              const LatticeClass& u);

struct SemistableVerdict {
    bool semistable = false;
    std::optional<LatticeClass> certificate;  // a maximal-phase destabilizer
};

// Exhaustive search over the feasible subclass box.
SemistableVerdict is_semistable(const ChainRep& rep, const StabilityData& sigma);
SemistableVerdict is_semistable(const ChainRep& rep, const GluedCharge& z);

struct HNFactor {
    LatticeClass cls;
    PhaseValue phase;
    IntervalSum witness;
};

struct HNResult {
    std::vector<HNFactor> factors;

    std::vector<LatticeClass> type() const;
};

HNResult hn_filtration(const ChainRep& rep, const StabilityData& sigma);
HNResult hn_filtration(const ChainRep& rep, const GluedCharge& z);

// Admissibility of per-node shift vectors for the glued heart in the point
// model: m must be nondecreasing (m_j is the cohomological degree of the
// node-j component).
bool shift_vector_admissible(const std::vector<long long>& m);

struct ShiftVectorReport {
    std::string constraint;                         // "m_1 <= m_2 <= ... <= m_n"
    std::vector<std::vector<long long>> admissible; // enumeration inside the box
};

ShiftVectorReport glued_heart_shift_vectors(int n, long long lo, long long hi);

// Node components A_n, ..., A_1 of the filtration triangles of obj in the
// glued heart with shift vector m. Throws (naming the failing node) when obj
// does not lie in that heart.
struct GluingFiltration {
    // Entry j (0-based from the top) is the node-(n-j) component.
    std::vector<IntervalSum> components;
};

GluingFiltration gluing_filtration(const IntervalSum& obj, int n,
                                   const std::vector<long long>& m);

// All interval sums of class beta with shift 0 (finite Krull-Schmidt box).
std::vector<IntervalSum> interval_sums_of_class(const LatticeClass& beta);

}  // namespace chainstab
