#include "chainstab/lattice.hpp"

#include "chainstab/charge.hpp"

namespace chainstab {

LatticeClass::LatticeClass(LatticeKind k, int nodes, std::vector<Integer> c)
    : kind(k), n(nodes), coords(std::move(c)) {
    const size_t expect = kind == LatticeKind::quiver ? (size_t)n : (size_t)(2 * n);
    if (coords.size() != expect)
        throw std::invalid_argument("lattice class: coordinate length does not match kind");
}

bool LatticeClass::is_zero() const {
    for (const auto& c : coords)
        if (c != 0) return false;
    return true;
}

void LatticeClass::check_heart_ranks() const {
    if (kind != LatticeKind::chain) return;
    for (int i = 0; i < n; ++i)
        if (coords[2 * i + 1] < 0)
            throw std::invalid_argument("chain heart class needs r_i >= 0 at node " +
                                        std::to_string(i + 1));
}

LatticeClass LatticeClass::operator+(const LatticeClass& o) const {
    if (kind != o.kind || n != o.n) throw std::invalid_argument("lattice kind mismatch");
    LatticeClass r = *this;
    for (size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
    return r;
}

LatticeClass LatticeClass::operator-(const LatticeClass& o) const {
    if (kind != o.kind || n != o.n) throw std::invalid_argument("lattice kind mismatch");
    LatticeClass r = *this;
    for (size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
    return r;
}

bool LatticeClass::operator<(const LatticeClass& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (n != o.n) return n < o.n;
    return coords < o.coords;
}

std::string LatticeClass::to_string() const {
    std::string s = "(";
    for (size_t i = 0; i < coords.size(); ++i) {
        if (i) s += ",";
        s += coords[i].str();
    }
    return s + ")";
}

LatticeClass quiver_class(std::vector<Integer> dims) {
    const int n = (int)dims.size();
    return LatticeClass(LatticeKind::quiver, n, std::move(dims));
}

LatticeClass chain_class(std::vector<std::pair<Integer, Integer>> pairs) {
    std::vector<Integer> coords;
    coords.reserve(2 * pairs.size());
    for (auto& [d, r] : pairs) {
        coords.push_back(d);
        coords.push_back(r);
    }
    return LatticeClass(LatticeKind::chain, (int)pairs.size(), std::move(coords));
}

QuadForm::QuadForm(QMat m) : matrix(std::move(m)) {
    if (!matrix.is_symmetric())
        throw std::invalid_argument("quadratic form matrix must be symmetric");
}

Rational QuadForm::evaluate(const LatticeClass& beta) const {
    if (beta.rank() != matrix.rows())
        throw std::invalid_argument("quadratic form: class rank mismatch");
    QVec v(beta.rank());
    for (size_t i = 0; i < v.size(); ++i) v[i] = Rational(beta.coords[i]);
    return dot(v, matrix.apply(v));
}

std::vector<QVec> kernel_basis(const CentralCharge& z) {
    return z.as_matrix().null_space();
}

bool negative_definite_on_span(const QuadForm& q, const std::vector<QVec>& basis) {
    const size_t m = basis.size();
    if (m == 0) return true;  // empty kernel: vacuous
    for (const auto& b : basis)
        if (b.size() != q.rank())
            throw std::invalid_argument("kernel basis vector rank mismatch");
    // Gram matrix of -Q in the given basis; Sylvester: positive definite iff
    // all leading principal minors are positive.
    QMat gram(m, m);
    for (size_t i = 0; i < m; ++i) {
        const QVec qi = q.matrix.apply(basis[i]);
        for (size_t j = 0; j < m; ++j) gram.at(i, j) = -dot(qi, basis[j]);
    }
    QMat lead(0, 0);
    for (size_t k = 1; k <= m; ++k) {
        QMat blk(k, k);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) blk.at(i, j) = gram.at(i, j);
        if (blk.det() <= 0) return false;
    }
    return true;
}

SupportReport check_support_property(const CentralCharge& z, const QuadForm& q,
                                     const std::vector<LatticeClass>& samples) {
    if (z.rank() != q.rank())
        throw std::invalid_argument("charge and quadratic form rank mismatch");
    SupportReport report;
    report.kernel_negdef = negative_definite_on_span(q, kernel_basis(z));
    for (const auto& beta : samples)
        if (q.evaluate(beta) < 0) report.violating_samples.push_back(beta);
    return report;
}

}  // namespace chainstab
