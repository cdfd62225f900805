#pragma once

// The tower GF(p) ⊂ K = GF(p^s) ⊂ L = GF(p^{s n}).
//
// K is GF(p)[u]/(h) and L is K[v]/(g), with h and g the smallest monic
// irreducibles of their degrees. Elements of K are stored as integer codes
// sum_i d_i p^i over their GF(p) digits; elements of L as n K-coordinates
// against the basis 1, v, ..., v^{n-1}. The q-power Frobenius σ generates
// Gal(L/K) and σ^i is kept as an n×n matrix over K.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "galforms/matrix.hpp"

namespace galforms {

/// Element of K as its integer code in [0, q).
using KElem = std::uint32_t;

inline constexpr std::uint64_t kDefaultSizeGuard = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kRandomSizeGuard = std::uint64_t{1} << 40;

struct TowerParams {
  std::uint32_t p = 2;
  std::uint32_t s = 1;
  std::uint32_t n = 2;
  friend bool operator==(const TowerParams&, const TowerParams&) = default;
};

/// Names σ^value. Values are taken modulo n wherever they are used.
struct AutomorphismIndex {
  std::uint32_t value = 0;
};

/// GF(p^s) = GF(p)[u]/(h), multiplication through log/antilog tables.
class BaseField {
 public:
  using Scalar = KElem;

  BaseField(std::uint32_t p, std::vector<std::uint32_t> h);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return s_; }
  std::uint32_t order() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return h_; }

  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }
  bool is_zero(Scalar a) const { return a == 0; }
  Scalar add(Scalar a, Scalar b) const;
  Scalar sub(Scalar a, Scalar b) const;
  Scalar neg(Scalar a) const;
  Scalar mul(Scalar a, Scalar b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  Scalar inv(Scalar a) const;

  /// The image of an integer under Z -> GF(p) ⊂ K.
  Scalar from_integer(std::int64_t k) const;

  std::vector<std::uint32_t> digits(Scalar a) const;
  Scalar from_digits(std::span<const std::uint32_t> digits) const;

 private:
  std::uint32_t p_;
  std::uint32_t s_;
  std::uint32_t q_;
  std::vector<std::uint32_t> h_;
  std::vector<std::uint32_t> pow_p_;
  std::vector<Scalar> exp_;
  std::vector<std::uint32_t> log_;
};

/// Element of L: n K-coordinates against 1, v, ..., v^{n-1}.
struct FieldElement {
  std::vector<KElem> coords;
  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

class TowerField {
 public:
  using Scalar = FieldElement;

  TowerField(TowerParams params, std::vector<std::uint32_t> h, std::vector<KElem> g);

  const TowerParams& params() const { return params_; }
  const BaseField& base() const { return base_; }
  std::uint32_t degree() const { return params_.n; }
  /// |K| = q.
  std::uint32_t base_order() const { return base_.order(); }
  /// |L| = q^n.
  std::uint64_t order() const { return order_; }
  /// Monic defining polynomial of L over K, low-degree-first.
  const std::vector<KElem>& modulus() const { return g_; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement embed(KElem k) const;
  /// v^j for 0 <= j < n.
  const FieldElement& basis(std::uint32_t j) const { return powers_[j]; }
  bool is_zero(const FieldElement& a) const;
  bool is_valid(const FieldElement& a) const;
  /// Throws ContextMismatch unless `a` is a well-formed element of this tower.
  void check(const FieldElement& a) const;

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement scale(KElem k, const FieldElement& a) const;
  FieldElement inv(const FieldElement& a) const;
  FieldElement pow(FieldElement a, std::uint64_t e) const;

  /// Matrix of σ^i over K; column j holds the coordinates of σ^i(v^j).
  const Matrix<KElem>& frobenius_matrix(std::uint32_t i) const { return sigma_[i % params_.n]; }
  /// Tr_{L/K}(x) as an element of K.
  KElem trace_value(const FieldElement& x) const;
  /// Tr(v^a v^c); the Gram matrix of the trace pairing.
  const Matrix<KElem>& trace_pairing() const { return pairing_; }

  /// Bijection [0, q^n) <-> L, index = sum_j code_j q^j.
  FieldElement element_at(std::uint64_t index) const;
  std::uint64_t index_of(const FieldElement& x) const;

  /// Same parameters and defining polynomials.
  bool same_tower(const TowerField& other) const;

 private:
  TowerParams params_;
  BaseField base_;
  std::vector<KElem> g_;
  std::uint64_t order_;
  std::vector<FieldElement> powers_;
  std::vector<Matrix<KElem>> sigma_;
  std::vector<KElem> trace_of_power_;
  Matrix<KElem> pairing_;
};

using TowerPtr = std::shared_ptr<const TowerField>;

/// Builds the canonical tower: h and g are the first monic irreducibles of
/// their degrees when candidates are ordered by integer encoding (the highest
/// non-leading coefficient is most significant).
TowerPtr make_tower(const TowerParams& params, std::uint64_t size_guard = kDefaultSizeGuard);

std::uint32_t automorphism_order(const TowerField& f, AutomorphismIndex i);
AutomorphismIndex inverse(const TowerField& f, AutomorphismIndex i);

/// σ^i(x).
FieldElement frobenius(const TowerField& f, const FieldElement& x, AutomorphismIndex i);

/// Σ_{i<n} σ^i(x); always lies in K.
FieldElement trace(const TowerField& f, const FieldElement& x);

/// Norm from L down to the fixed field of σ^d: Π_j σ^{dj}(x) over the
/// ord(σ^d) conjugates.
FieldElement norm_to_fixed(const TowerField& f, const FieldElement& x, AutomorphismIndex d);

/// A generator of the cyclic group L*; the first one in index order.
FieldElement primitive_element(const TowerField& f);

/// K-basis of { x : σ^d(x) = x }, null space of σ^d - 1 in column order.
std::vector<FieldElement> fixed_field_basis(const TowerField& f, AutomorphismIndex d);

}  // namespace galforms
