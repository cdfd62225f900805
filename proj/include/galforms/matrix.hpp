#pragma once

// Dense matrices over an arbitrary exact field, and the elimination routines
// that everything else is built on. A "field" here is a context object that
// knows how to combine scalars; the scalars themselves carry no modulus.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "galforms/errors.hpp"

namespace galforms {

using Index = std::ptrdiff_t;

template <class F>
concept ExactField = requires(const F& f, const typename F::Scalar& a) {
  typename F::Scalar;
  { f.zero() } -> std::convertible_to<typename F::Scalar>;
  { f.one() } -> std::convertible_to<typename F::Scalar>;
  { f.add(a, a) } -> std::convertible_to<typename F::Scalar>;
  { f.sub(a, a) } -> std::convertible_to<typename F::Scalar>;
  { f.mul(a, a) } -> std::convertible_to<typename F::Scalar>;
  { f.inv(a) } -> std::convertible_to<typename F::Scalar>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
};

/// Row-major dense matrix. Value type; no expression templates.
template <class Scalar>
class Matrix {
 public:
  Matrix() = default;
  Matrix(Index rows, Index cols, const Scalar& fill = Scalar{})
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {}

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

  Scalar& operator()(Index r, Index c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const Scalar& operator()(Index r, Index c) const {
    return data_[static_cast<std::size_t>(r * cols_ + c)];
  }

  std::span<Scalar> row(Index r) {
    return {data_.data() + r * cols_, static_cast<std::size_t>(cols_)};
  }
  std::span<const Scalar> row(Index r) const {
    return {data_.data() + r * cols_, static_cast<std::size_t>(cols_)};
  }

  void swap_rows(Index a, Index b) {
    if (a == b) return;
    std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (Index r = 0; r < rows_; ++r)
      for (Index c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  const std::vector<Scalar>& data() const { return data_; }
  std::vector<Scalar>& data() { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Scalar> data_;
};

template <class Scalar>
struct Echelon {
  Matrix<Scalar> reduced;     // reduced row echelon form
  std::vector<Index> pivots;  // pivot column of each nonzero row
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Reduced row echelon form. The pivot in each column is the first nonzero
/// entry at or below the current row.
template <ExactField Field>
Echelon<typename Field::Scalar> row_reduce(const Field& f, Matrix<typename Field::Scalar> m) {
  std::vector<Index> pivots;
  Index lead = 0;
  for (Index c = 0; c < m.cols() && lead < m.rows(); ++c) {
    Index piv = lead;
    while (piv < m.rows() && f.is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(piv, lead);
    const auto scale = f.inv(m(lead, c));
    for (auto& x : m.row(lead)) x = f.mul(x, scale);
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == lead || f.is_zero(m(r, c))) continue;
      const auto factor = m(r, c);
      for (Index k = c; k < m.cols(); ++k) m(r, k) = f.sub(m(r, k), f.mul(factor, m(lead, k)));
    }
    pivots.push_back(c);
    ++lead;
  }
  return {std::move(m), std::move(pivots)};
}

/// Rank by forward elimination only; cheaper than row_reduce for census loops.
template <ExactField Field>
Index rank(const Field& f, Matrix<typename Field::Scalar> m) {
  Index lead = 0;
  for (Index c = 0; c < m.cols() && lead < m.rows(); ++c) {
    Index piv = lead;
    while (piv < m.rows() && f.is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(piv, lead);
    const auto scale = f.inv(m(lead, c));
    for (Index r = lead + 1; r < m.rows(); ++r) {
      if (f.is_zero(m(r, c))) continue;
      const auto factor = f.mul(m(r, c), scale);
      for (Index k = c; k < m.cols(); ++k) m(r, k) = f.sub(m(r, k), f.mul(factor, m(lead, k)));
    }
    ++lead;
  }
  return lead;
}

/// Basis of { x : m x = 0 }, one vector per free column, in column order.
template <ExactField Field>
std::vector<std::vector<typename Field::Scalar>> null_space(const Field& f,
                                                            Matrix<typename Field::Scalar> m) {
  const auto ech = row_reduce(f, std::move(m));
  const Index cols = ech.reduced.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index c : ech.pivots) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<std::vector<typename Field::Scalar>> basis;
  for (Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<typename Field::Scalar> v(static_cast<std::size_t>(cols), f.zero());
    v[static_cast<std::size_t>(free)] = f.one();
    for (Index r = 0; r < ech.rank(); ++r) {
      const Index pc = ech.pivots[static_cast<std::size_t>(r)];
      v[static_cast<std::size_t>(pc)] = f.sub(f.zero(), ech.reduced(r, free));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One solution of a x = rhs, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
template <ExactField Field>
std::optional<std::vector<typename Field::Scalar>> solve(
    const Field& f, const Matrix<typename Field::Scalar>& a,
    std::span<const typename Field::Scalar> rhs) {
  if (static_cast<Index>(rhs.size()) != a.rows())
    throw PreconditionError("solve: right-hand side length does not match row count");
  Matrix<typename Field::Scalar> aug(a.rows(), a.cols() + 1, f.zero());
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = rhs[static_cast<std::size_t>(r)];
  }
  const auto ech = row_reduce(f, std::move(aug));
  if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) return std::nullopt;
  std::vector<typename Field::Scalar> x(static_cast<std::size_t>(a.cols()), f.zero());
  for (Index r = 0; r < ech.rank(); ++r)
    x[static_cast<std::size_t>(ech.pivots[static_cast<std::size_t>(r)])] = ech.reduced(r, a.cols());
  return x;
}

/// Determinant by elimination. A column with no available pivot means the
/// matrix is singular.
template <ExactField Field>
typename Field::Scalar determinant(const Field& f, Matrix<typename Field::Scalar> m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant: matrix is not square");
  auto det = f.one();
  for (Index c = 0; c < m.cols(); ++c) {
    Index piv = c;
    while (piv < m.rows() && f.is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) return f.zero();
    if (piv != c) {
      m.swap_rows(piv, c);
      det = f.sub(f.zero(), det);
    }
    det = f.mul(det, m(c, c));
    const auto scale = f.inv(m(c, c));
    for (Index r = c + 1; r < m.rows(); ++r) {
      if (f.is_zero(m(r, c))) continue;
      const auto factor = f.mul(m(r, c), scale);
      for (Index k = c; k < m.cols(); ++k) m(r, k) = f.sub(m(r, k), f.mul(factor, m(c, k)));
    }
  }
  return det;
}

template <ExactField Field>
std::vector<typename Field::Scalar> multiply(const Field& f,
                                             const Matrix<typename Field::Scalar>& m,
                                             std::span<const typename Field::Scalar> x) {
  std::vector<typename Field::Scalar> y(static_cast<std::size_t>(m.rows()), f.zero());
  for (Index r = 0; r < m.rows(); ++r) {
    auto acc = f.zero();
    for (Index c = 0; c < m.cols(); ++c) acc = f.add(acc, f.mul(m(r, c), x[static_cast<std::size_t>(c)]));
    y[static_cast<std::size_t>(r)] = acc;
  }
  return y;
}

template <ExactField Field>
Matrix<typename Field::Scalar> multiply(const Field& f, const Matrix<typename Field::Scalar>& a,
                                        const Matrix<typename Field::Scalar>& b) {
  Matrix<typename Field::Scalar> out(a.rows(), b.cols(), f.zero());
  for (Index r = 0; r < a.rows(); ++r)
    for (Index k = 0; k < a.cols(); ++k) {
      const auto& ark = a(r, k);
      if (f.is_zero(ark)) continue;
      for (Index c = 0; c < b.cols(); ++c) out(r, c) = f.add(out(r, c), f.mul(ark, b(k, c)));
    }
  return out;
}

}  // namespace galforms
