#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainstab/linalg.hpp"

namespace chainstab {

struct CentralCharge;  // charge.hpp

enum class LatticeKind { quiver, chain };

// Integer vector in the numerical Grothendieck lattice. For the quiver model
// the coordinates are a dimension vector of length n; for chains over a curve
// they are interleaved (d_1, r_1, ..., d_n, r_n) of length 2n.
struct LatticeClass {
    LatticeKind kind = LatticeKind::quiver;
    int n = 0;
    std::vector<Integer> coords;

    LatticeClass() = default;
    LatticeClass(LatticeKind k, int nodes, std::vector<Integer> c);

    size_t rank() const { return coords.size(); }
    bool is_zero() const;

    // Heart-side invariant for chain classes: all ranks nonnegative.
    void check_heart_ranks() const;

    LatticeClass operator+(const LatticeClass& o) const;
    LatticeClass operator-(const LatticeClass& o) const;
    bool operator==(const LatticeClass& o) const = default;
    bool operator<(const LatticeClass& o) const;

    std::string to_string() const;
};

LatticeClass quiver_class(std::vector<Integer> dims);
LatticeClass chain_class(std::vector<std::pair<Integer, Integer>> pairs);

// Symmetric rational quadratic form on Lambda_R.
struct QuadForm {
    QMat matrix;

    explicit QuadForm(QMat m);
    size_t rank() const { return matrix.rows(); }
    Rational evaluate(const LatticeClass& beta) const;
};

struct SupportReport {
    bool kernel_negdef = false;
    std::vector<LatticeClass> violating_samples;
};

// Basis of ker(Z) over Q; empty iff Z is injective. Vectors are primitive
// integer vectors with positive leading entry.
std::vector<QVec> kernel_basis(const CentralCharge& z);

// Decides, by Sylvester's criterion on the Gram matrix in a kernel basis,
// whether Q restricted to ker(Z) is negative definite, and flags every sample
// class with Q(beta,beta) < 0. An empty kernel passes vacuously.
SupportReport check_support_property(const CentralCharge& z, const QuadForm& q,
                                     const std::vector<LatticeClass>& samples);

// Same decision on an explicit basis; exposed so the verdict can be checked
// for invariance under change of kernel basis.
bool negative_definite_on_span(const QuadForm& q, const std::vector<QVec>& basis);

}  // namespace chainstab
