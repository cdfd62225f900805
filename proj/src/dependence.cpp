#include "galforms/dependence.hpp"

#include <string>

namespace galforms {

namespace {

Matrix<KElem> coordinate_rows(const TowerField& f, std::span<const FieldElement> xs) {
  const Index n = f.degree();
  Matrix<KElem> m(static_cast<Index>(xs.size()), n, 0);
  for (Index r = 0; r < m.rows(); ++r) {
    const auto& x = xs[static_cast<std::size_t>(r)];
    f.check(x);
    std::copy(x.coords.begin(), x.coords.end(), m.row(r).begin());
  }
  return m;
}

}  // namespace

MooreMatrix moore_matrix(const TowerField& f, std::span<const FieldElement> xs) {
  const auto k = static_cast<Index>(xs.size());
  if (k == 0 || k > static_cast<Index>(f.degree()))
    throw PreconditionError("Moore matrix needs 1 <= k <= n elements, got " + std::to_string(k));
  MooreMatrix s(k, k, f.zero());
  for (Index j = 0; j < k; ++j) {
    f.check(xs[static_cast<std::size_t>(j)]);
    s(0, j) = xs[static_cast<std::size_t>(j)];
    for (Index i = 1; i < k; ++i) s(i, j) = frobenius(f, s(i - 1, j), {1});
  }
  return s;
}

bool dependent_via_moore(const TowerField& f, std::span<const FieldElement> xs) {
  return f.is_zero(determinant(f, moore_matrix(f, xs)));
}

bool dependent_via_elim(const TowerField& f, std::span<const FieldElement> xs) {
  return span_dimension(f, xs) < xs.size();
}

std::uint32_t span_dimension(const TowerField& f, std::span<const FieldElement> xs) {
  if (xs.empty()) return 0;
  return static_cast<std::uint32_t>(rank(f.base(), coordinate_rows(f, xs)));
}

SigmaPoly::SigmaPoly(const TowerField& f, std::vector<FieldElement> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) f.check(c);
  while (!coeffs_.empty() && f.is_zero(coeffs_.back())) coeffs_.pop_back();
}

SigmaPoly SigmaPoly::reduced(const TowerField& f) const {
  const std::uint32_t n = f.degree();
  std::vector<FieldElement> folded(std::min<std::size_t>(coeffs_.size(), n), f.zero());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) folded[i % n] = f.add(folded[i % n], coeffs_[i]);
  return SigmaPoly(f, std::move(folded));
}

FieldElement apply_sigma_poly(const TowerField& f, const SigmaPoly& w, const FieldElement& x) {
  f.check(x);
  FieldElement acc = f.zero();
  for (std::size_t i = 0; i < w.coeffs().size(); ++i) {
    if (f.is_zero(w.coeffs()[i])) continue;
    acc = f.add(acc, f.mul(w.coeffs()[i], frobenius(f, x, {static_cast<std::uint32_t>(i % f.degree())})));
  }
  return acc;
}

std::vector<FieldElement> kernel_of_sigma_poly(const TowerField& f, const SigmaPoly& w) {
  if (w.is_zero()) throw PreconditionError("kernel of the zero σ-polynomial is undefined");
  const SigmaPoly r = w.reduced(f);
  const std::uint32_t n = f.degree();
  // Column j: coordinates of w(σ)(v^j).
  Matrix<KElem> op(n, n, 0);
  for (std::uint32_t j = 0; j < n; ++j) {
    const FieldElement image = apply_sigma_poly(f, r, f.basis(j));
    for (std::uint32_t i = 0; i < n; ++i) op(i, j) = image.coords[i];
  }
  std::vector<FieldElement> out;
  for (auto& v : null_space(f.base(), std::move(op))) out.push_back(FieldElement{std::move(v)});
  return out;
}

SigmaPoly annihilator_poly(const TowerField& f, std::span<const FieldElement> u_basis) {
  const auto k = static_cast<Index>(u_basis.size());
  if (k == 0 || k > static_cast<Index>(f.degree())) throw PreconditionError("annihilator needs 1 <= k <= n");
  if (dependent_via_elim(f, u_basis)) throw PreconditionError("annihilator needs a K-independent basis");

  const MooreMatrix s_transpose = moore_matrix(f, u_basis).transpose();
  std::vector<FieldElement> rhs;
  for (const auto& x : u_basis) rhs.push_back(frobenius(f, x, {static_cast<std::uint32_t>(k)}));
  const auto b = solve(f, s_transpose, std::span<const FieldElement>(rhs));
  if (!b) throw Error("Moore system is singular for an independent basis");

  std::vector<FieldElement> coeffs;
  for (const auto& bj : *b) coeffs.push_back(f.neg(bj));
  coeffs.push_back(f.one());
  return SigmaPoly(f, std::move(coeffs));
}

}  // namespace galforms
