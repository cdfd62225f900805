#pragma once

// K-linear dependence in L through Moore matrices, and σ-polynomial
// operators w(σ) = Σ b_i σ^i acting on L.

#include <span>
#include <vector>

#include "galforms/field_tower.hpp"

namespace galforms {

/// k×k matrix over L with entry (i, j) = σ^i(x_j), rows counted from 0.
using MooreMatrix = Matrix<FieldElement>;

MooreMatrix moore_matrix(const TowerField& f, std::span<const FieldElement> xs);

/// det(moore_matrix(xs)) = 0, computed by elimination over L.
bool dependent_via_moore(const TowerField& f, std::span<const FieldElement> xs);

/// Rank of the K-coordinate vectors is below |xs|.
bool dependent_via_elim(const TowerField& f, std::span<const FieldElement> xs);

/// Σ b_i t^i with coefficients in L, low-degree-first, no trailing zeros.
class SigmaPoly {
 public:
  SigmaPoly() = default;
  SigmaPoly(const TowerField& f, std::vector<FieldElement> coeffs);

  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  /// Residue modulo t^n - 1; acts on L exactly as this polynomial does.
  SigmaPoly reduced(const TowerField& f) const;

  friend bool operator==(const SigmaPoly&, const SigmaPoly&) = default;

 private:
  std::vector<FieldElement> coeffs_;
};

/// Σ b_i σ^i(x).
FieldElement apply_sigma_poly(const TowerField& f, const SigmaPoly& w, const FieldElement& x);

/// K-basis of { x : w(σ) x = 0 }. When w reduces to 0 modulo t^n - 1 the
/// operator vanishes and the basis 1, v, ..., v^{n-1} of L is returned.
std::vector<FieldElement> kernel_of_sigma_poly(const TowerField& f, const SigmaPoly& w);

/// The monic w = t^k - Σ_{j<k} b_j t^j whose kernel is span(U), from the
/// k×k system S' B = Σ with S'(i, j) = σ^j(x_i) and Σ_i = σ^k(x_i).
SigmaPoly annihilator_poly(const TowerField& f, std::span<const FieldElement> u_basis);

/// Dimension of the K-span of xs.
std::uint32_t span_dimension(const TowerField& f, std::span<const FieldElement> xs);

}  // namespace galforms
