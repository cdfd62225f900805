#pragma once

// Univariate polynomials over an exact field, stored low-degree-first with no
// trailing zeros. Only what the irreducible search and the Frobenius tables
// need: reduction, modular products and powers, gcd, and Ben-Or's test.

#include <cstdint>
#include <vector>

#include "galforms/matrix.hpp"

namespace galforms::poly {

template <class Scalar>
using Poly = std::vector<Scalar>;

template <ExactField Field>
void trim(const Field& f, Poly<typename Field::Scalar>& a) {
  while (!a.empty() && f.is_zero(a.back())) a.pop_back();
}

template <ExactField Field>
Poly<typename Field::Scalar> sub(const Field& f, Poly<typename Field::Scalar> a,
                                 const Poly<typename Field::Scalar>& b) {
  if (a.size() < b.size()) a.resize(b.size(), f.zero());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
  trim(f, a);
  return a;
}

/// Remainder of a modulo a nonzero m.
template <ExactField Field>
Poly<typename Field::Scalar> mod(const Field& f, Poly<typename Field::Scalar> a,
                                 Poly<typename Field::Scalar> m) {
  trim(f, a);
  trim(f, m);
  if (m.empty()) throw DomainError("polynomial reduction by zero");
  const auto lead_inv = f.inv(m.back());
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const auto c = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t k = 0; k <= dm; ++k) a[shift + k] = f.sub(a[shift + k], f.mul(c, m[k]));
    trim(f, a);
  }
  return a;
}

template <ExactField Field>
Poly<typename Field::Scalar> mulmod(const Field& f, const Poly<typename Field::Scalar>& a,
                                    const Poly<typename Field::Scalar>& b,
                                    const Poly<typename Field::Scalar>& m) {
  if (a.empty() || b.empty()) return {};
  Poly<typename Field::Scalar> prod(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (f.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
  }
  return mod(f, std::move(prod), m);
}

template <ExactField Field>
Poly<typename Field::Scalar> powmod(const Field& f, Poly<typename Field::Scalar> base,
                                    std::uint64_t e, const Poly<typename Field::Scalar>& m) {
  Poly<typename Field::Scalar> result = mod(f, Poly<typename Field::Scalar>{f.one()}, m);
  base = mod(f, std::move(base), m);
  while (e > 0) {
    if (e & 1U) result = mulmod(f, result, base, m);
    e >>= 1U;
    if (e > 0) base = mulmod(f, base, base, m);
  }
  return result;
}

template <ExactField Field>
Poly<typename Field::Scalar> gcd(const Field& f, Poly<typename Field::Scalar> a,
                                 Poly<typename Field::Scalar> b) {
  trim(f, a);
  trim(f, b);
  while (!b.empty()) {
    auto r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Ben-Or: a monic g of degree d over GF(q) is irreducible iff
/// gcd(x^{q^i} - x, g) = 1 for every 1 <= i <= d/2.
template <ExactField Field>
bool is_irreducible(const Field& f, const Poly<typename Field::Scalar>& g, std::uint64_t q) {
  if (g.size() < 2) return false;
  const std::size_t d = g.size() - 1;
  if (d == 1) return true;
  const Poly<typename Field::Scalar> x{f.zero(), f.one()};
  Poly<typename Field::Scalar> frob = mod(f, x, g);
  for (std::size_t i = 1; i <= d / 2; ++i) {
    frob = powmod(f, frob, q, g);
    const auto common = gcd(f, sub(f, frob, x), g);
    if (common.size() != 1) return false;
  }
  return true;
}

}  // namespace galforms::poly
