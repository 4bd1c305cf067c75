#include "chainstab/sodcalc.hpp"

#include <stdexcept>

namespace chainstab {

SODRecord::SODRecord(std::vector<SODComponent> c, QMat g)
    : components(std::move(c)), gram(std::move(g)) {
    if (gram.rows() != gram.cols()) throw std::invalid_argument("gram must be square");
    size_t total = 0;
    for (const auto& comp : components) {
        if (comp.generators == 0)
            throw std::invalid_argument("component without generators");
        total += comp.generators;
    }
    if (total != gram.rows())
        throw std::invalid_argument("gram size does not match the components");
}

size_t SODRecord::total_generators() const { return gram.rows(); }

size_t SODRecord::block_offset(size_t k) const {
    size_t off = 0;
    for (size_t i = 0; i < k; ++i) off += components[i].generators;
    return off;
}

bool check_semiorthogonal(const SODRecord& record) {
    for (size_t i = 0; i < record.components.size(); ++i) {
        const size_t ri = record.block_offset(i), si = record.components[i].generators;
        for (size_t j = 0; j < i; ++j) {
            const size_t cj = record.block_offset(j);
            const size_t sj = record.components[j].generators;
            for (size_t r = 0; r < si; ++r)
                for (size_t c = 0; c < sj; ++c) {
                    if (record.gram.at(ri + r, cj + c) != 0) return false;
                }
        }
    }
    return true;
}

namespace {

QMat subblock(const QMat& m, size_t r0, size_t c0, size_t rows, size_t cols) {
    QMat out(rows, cols);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) out.at(r, c) = m.at(r0 + r, c0 + c);
    return out;
}

void require_unimodular(const QMat& block) {
    const Rational d = block.det();
    if (d != 1 && d != -1)
        throw std::invalid_argument("non-unimodular self-pairing block");
}

// Base change passing block `moved` through pivot block `pivot`, with the
// moved generators rewritten as g - (correction through the pivot's inverse
// self-pairing). `chi_pivot_moved` pairs pivot rows against moved columns
// when left, moved rows against pivot columns when right.
QMat mutation_matrix(const SODRecord& rec, size_t pivot, size_t moved, bool left) {
    const size_t n = rec.total_generators();
    const size_t po = rec.block_offset(pivot), ps = rec.components[pivot].generators;
    const size_t mo = rec.block_offset(moved), ms = rec.components[moved].generators;
    const QMat gpp = subblock(rec.gram, po, po, ps, ps);
    require_unimodular(gpp);
    QMat m = QMat::identity(n);
    if (left) {
        // moved' = moved - (Gpp^{-1} Gpm)^T . pivot generators
        const QMat w = gpp.inverse() * subblock(rec.gram, po, mo, ps, ms);
        for (size_t r = 0; r < ms; ++r)
            for (size_t c = 0; c < ps; ++c) m.at(mo + r, po + c) = -w.at(c, r);
    } else {
        // moved' = moved - Gmp Gpp^{-1} . pivot generators
        const QMat w = subblock(rec.gram, mo, po, ms, ps) * gpp.inverse();
        for (size_t r = 0; r < ms; ++r)
            for (size_t c = 0; c < ps; ++c) m.at(mo + r, po + c) = -w.at(r, c);
    }
    return m;
}

SODRecord apply_mutation(const SODRecord& rec, size_t k, bool left) {
    if (k < 1 || k + 1 > rec.components.size())
        throw std::invalid_argument("mutation index out of range");
    const size_t a = k - 1, b = k;  // adjacent pair, 0-based
    const size_t pivot = left ? a : b;
    const size_t moved = left ? b : a;
    const QMat m = mutation_matrix(rec, pivot, moved, left);
    const QMat transformed = m * rec.gram * m.transpose();

    // swap the two blocks into their new order
    std::vector<SODComponent> comps = rec.components;
    std::swap(comps[a], comps[b]);
    const size_t oa = rec.block_offset(a);
    const size_t sa = rec.components[a].generators, sb = rec.components[b].generators;
    std::vector<size_t> perm(rec.total_generators());
    for (size_t i = 0; i < oa; ++i) perm[i] = i;
    for (size_t i = 0; i < sb; ++i) perm[oa + i] = oa + sa + i;
    for (size_t i = 0; i < sa; ++i) perm[oa + sb + i] = oa + i;
    for (size_t i = oa + sa + sb; i < perm.size(); ++i) perm[i] = i;
    QMat out(transformed.rows(), transformed.cols());
    for (size_t r = 0; r < out.rows(); ++r)
        for (size_t c = 0; c < out.cols(); ++c)
            out.at(r, c) = transformed.at(perm[r], perm[c]);
    return SODRecord(std::move(comps), std::move(out));
}

}  // namespace

QMat left_mutation_matrix(const SODRecord& record, size_t k) {
    if (k < 1 || k + 1 > record.components.size())
        throw std::invalid_argument("mutation index out of range");
    return mutation_matrix(record, k - 1, k, true);
}

SODRecord left_mutate(const SODRecord& record, size_t k) {
    return apply_mutation(record, k, true);
}

SODRecord right_mutate(const SODRecord& record, size_t k) {
    return apply_mutation(record, k, false);
}

Integer complement_component_count(int n, const std::vector<Integer>& kernel_ranks) {
    if (n < 1) throw std::invalid_argument("need at least one level");
    if (kernel_ranks.size() != (size_t)(n - 1))
        throw std::invalid_argument("need one rank per level from 2 to n");
    Integer total = 2;
    for (const auto& r : kernel_ranks) {
        if (r < 2) throw std::invalid_argument("fiber ranks must be at least 2");
        total *= r;
    }
    return total - n;
}

}  // namespace chainstab
