#include "chainstab/linalg.hpp"

#include <algorithm>

namespace chainstab {

QMat::QMat(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (const auto& x : r) data_.push_back(x);
    }
}

QMat QMat::identity(size_t n) {
    QMat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMat QMat::from_rows(const std::vector<QVec>& rows) {
    QMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged rows");
        for (size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

QVec QMat::row(size_t r) const {
    QVec v(cols_);
    for (size_t j = 0; j < cols_; ++j) v[j] = at(r, j);
    return v;
}

QMat QMat::transpose() const {
    QMat t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

QMat QMat::operator*(const QMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    QMat r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

QMat QMat::operator+(const QMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    QMat r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
}

QMat QMat::operator-(const QMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    QMat r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
}

bool QMat::operator==(const QMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

QVec QMat::apply(const QVec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    QVec r(rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

QVec QMat::apply_left(const QVec& v) const {
    if (v.size() != rows_) throw std::invalid_argument("vector-matrix shape mismatch");
    QVec r(cols_);
    for (size_t j = 0; j < cols_; ++j)
        for (size_t i = 0; i < rows_; ++i) r[j] += v[i] * at(i, j);
    return r;
}

bool QMat::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

QMat QMat::rref() const {
    QMat m = *this;
    size_t lead = 0;
    for (size_t r = 0; r < m.rows_ && lead < m.cols_; ++r) {
        size_t i = r;
        while (i < m.rows_ && m.at(i, lead) == 0) ++i;
        if (i == m.rows_) {
            ++lead;
            --r;
            continue;
        }
        for (size_t j = 0; j < m.cols_; ++j) std::swap(m.at(i, j), m.at(r, j));
        const Rational piv = m.at(r, lead);
        for (size_t j = 0; j < m.cols_; ++j) m.at(r, j) /= piv;
        for (size_t k = 0; k < m.rows_; ++k) {
            if (k == r || m.at(k, lead) == 0) continue;
            const Rational f = m.at(k, lead);
            for (size_t j = 0; j < m.cols_; ++j) m.at(k, j) -= f * m.at(r, j);
        }
        ++lead;
    }
    return m;
}

size_t QMat::rank() const {
    const QMat m = rref();
    size_t r = 0;
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (m.at(i, j) != 0) {
                ++r;
                break;
            }
    return r;
}

Rational QMat::det() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    QMat m = *this;
    Rational d = 1;
    for (size_t c = 0; c < cols_; ++c) {
        size_t p = c;
        while (p < rows_ && m.at(p, c) == 0) ++p;
        if (p == rows_) return 0;
        if (p != c) {
            for (size_t j = 0; j < cols_; ++j) std::swap(m.at(p, j), m.at(c, j));
            d = -d;
        }
        d *= m.at(c, c);
        for (size_t k = c + 1; k < rows_; ++k) {
            if (m.at(k, c) == 0) continue;
            const Rational f = m.at(k, c) / m.at(c, c);
            for (size_t j = c; j < cols_; ++j) m.at(k, j) -= f * m.at(c, j);
        }
    }
    return d;
}

QMat QMat::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    QMat aug(rows_, 2 * cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = 1;
    }
    const QMat r = aug.rref();
    for (size_t i = 0; i < rows_; ++i)
        if (r.at(i, i) != 1) throw std::domain_error("singular matrix");
    QMat inv(rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) inv.at(i, j) = r.at(i, cols_ + j);
    return inv;
}

std::vector<QVec> QMat::null_space() const {
    const QMat m = rref();
    std::vector<long> pivot_of_col(cols_, -1);
    size_t r = 0;
    for (size_t i = 0; i < rows_; ++i) {
        size_t j = 0;
        while (j < cols_ && m.at(i, j) == 0) ++j;
        if (j < cols_) pivot_of_col[j] = (long)i, ++r;
    }
    std::vector<QVec> basis;
    for (size_t free = 0; free < cols_; ++free) {
        if (pivot_of_col[free] != -1) continue;
        QVec v(cols_);
        v[free] = 1;
        for (size_t j = 0; j < cols_; ++j) {
            if (pivot_of_col[j] == -1) continue;
            v[j] = -m.at((size_t)pivot_of_col[j], free);
        }
        basis.push_back(normalize_primitive(v));
    }
    return basis;
}

QVec operator*(const Rational& c, const QVec& v) {
    QVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

QVec operator+(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

QVec operator-(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Rational dot(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

QVec normalize_primitive(const QVec& v) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Integer lcm = 1, gcd = 0;
    for (const auto& x : v) lcm = boost::multiprecision::lcm(lcm, denominator(x));
    QVec w(v.size());
    bool all_zero = true;
    for (size_t i = 0; i < v.size(); ++i) {
        Integer n = numerator(v[i]) * (lcm / denominator(v[i]));
        gcd = boost::multiprecision::gcd(gcd, n);
        w[i] = Rational(n);
        if (n != 0) all_zero = false;
    }
    if (all_zero) return w;
    for (auto& x : w) x /= Rational(gcd);
    for (const auto& x : w) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : w) y = -y;
        break;
    }
    return w;
}

std::vector<Rational> leading_principal_minors(const QMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("minors of non-square matrix");
    std::vector<Rational> minors;
    for (size_t k = 1; k <= m.rows(); ++k) {
        // Bareiss fraction-free elimination on the leading k x k block.
        std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) a[i][j] = m.at(i, j);
        Rational prev = 1, sign = 1;
        bool zero = false;
        for (size_t c = 0; c + 1 < k && !zero; ++c) {
            if (a[c][c] == 0) {
                size_t p = c + 1;
                while (p < k && a[p][c] == 0) ++p;
                if (p == k) {
                    // Column is dead below the diagonal; determinant of the
                    // block may still be nonzero only through it, handle by
                    // falling back to plain expansion via rref determinant.
                    zero = true;
                    break;
                }
                std::swap(a[p], a[c]);
                sign = -sign;
            }
            for (size_t i = c + 1; i < k; ++i)
                for (size_t j = c + 1; j < k; ++j)
                    a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) / prev;
            prev = a[c][c];
        }
        if (zero) {
            QMat blk(k, k);
            for (size_t i = 0; i < k; ++i)
                for (size_t j = 0; j < k; ++j) blk.at(i, j) = m.at(i, j);
            minors.push_back(blk.det());
        } else {
            minors.push_back(sign * a[k - 1][k - 1]);
        }
    }
    return minors;
}

}  // namespace chainstab
