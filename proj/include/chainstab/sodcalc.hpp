#pragma once

#include <string>
#include <vector>

#include "chainstab/linalg.hpp"

namespace chainstab {

// Ordered decomposition data at class level: a Gram matrix of Euler pairings
// between chosen generators, block-indexed by component. gram.at(i, j) pairs
// generator i against generator j; the decomposition is semiorthogonal when
// every below-diagonal block vanishes (no pairings from later components back
// into earlier ones).
struct SODComponent {
    std::string label;
    size_t generators = 1;
};

struct SODRecord {
    std::vector<SODComponent> components;
    QMat gram;

    SODRecord() = default;
    SODRecord(std::vector<SODComponent> c, QMat g);

    size_t total_generators() const;
    size_t block_offset(size_t k) const;  // 0-based component index
};

bool check_semiorthogonal(const SODRecord& record);

// Mutation of the adjacent pair (k, k+1), 1-based k. Left mutation passes the
// right member through the left one; right mutation is its inverse. Both
// require the pivot block's self-pairing to be unimodular and transform the
// Gram matrix by the exact congruence of the induced unimodular base change.
SODRecord left_mutate(const SODRecord& record, size_t k);
SODRecord right_mutate(const SODRecord& record, size_t k);

// The unimodular base-change matrix of the mutation, in the original
// generator order; exposed so congruence can be cross-checked.
QMat left_mutation_matrix(const SODRecord& record, size_t k);

// Number of components complementary to the chain inside the tower category:
// t(1) = 2, t(j) = t(j-1) * rank_of_level_j, result t(n) - n. kernel_ranks
// lists the fiber-bundle ranks for levels 2..n and each must be at least 2.
Integer complement_component_count(int n, const std::vector<Integer>& kernel_ranks);

}  // namespace chainstab
