#pragma once

#include <vector>

#include "chainstab/rational.hpp"

namespace chainstab {

using QVec = std::vector<Rational>;

// Dense rational matrix. Everything here is exact; sizes in this project are
// tiny (lattice ranks, small quiver dimensions), so plain Gaussian elimination
// is all we need.
class QMat {
  public:
    QMat() = default;
    QMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    QMat(std::initializer_list<std::initializer_list<Rational>> init);

    static QMat identity(size_t n);
    static QMat from_rows(const std::vector<QVec>& rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Rational& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const Rational& at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    QVec row(size_t r) const;

    QMat transpose() const;
    QMat operator*(const QMat& o) const;
    QMat operator+(const QMat& o) const;
    QMat operator-(const QMat& o) const;
    bool operator==(const QMat& o) const;

    QVec apply(const QVec& v) const;          // matrix * column vector
    QVec apply_left(const QVec& v) const;     // row vector * matrix

    bool is_symmetric() const;

    size_t rank() const;
    Rational det() const;
    // Throws std::domain_error when singular.
    QMat inverse() const;
    // Basis of the right null space; vectors normalized to primitive integer
    // form with positive leading entry.
    std::vector<QVec> null_space() const;

    // Reduced row echelon form (in place copy returned).
    QMat rref() const;

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

QVec operator*(const Rational& c, const QVec& v);
QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);
Rational dot(const QVec& a, const QVec& b);

// Scales a rational vector to a primitive integer vector with positive
// leading nonzero entry. Zero vectors are returned unchanged.
QVec normalize_primitive(const QVec& v);

// Leading principal minors d_1,...,d_n computed by fraction-free (Bareiss)
// elimination. Used by the definiteness oracle in tests and available to
// callers that want an independent route.
std::vector<Rational> leading_principal_minors(const QMat& m);

}  // namespace chainstab
