#pragma once

// Bilinear forms L × L -> K as Gram matrices over K against 1, v, ..., v^{n-1}.
// Entry (j, k) is f(v^j, v^k): the row index is the first argument.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "galforms/field_tower.hpp"

namespace galforms {

/// (x, y) ↦ Tr(b (x σ^i(y) - σ^i(x) y)).
struct AltProvenance {
  FieldElement b;
  AutomorphismIndex i;
};

/// (x, y) ↦ Tr((Σ_t b_t σ^t(x)) y).
struct GeneralProvenance {
  std::vector<FieldElement> b;
};

using Provenance = std::variant<std::monostate, AltProvenance, GeneralProvenance>;

class GramForm {
 public:
  GramForm(TowerPtr tower, Matrix<KElem> entries, Provenance provenance = {});

  static GramForm zero(TowerPtr tower);

  const TowerField& tower() const { return *tower_; }
  const TowerPtr& tower_ptr() const { return tower_; }
  const Matrix<KElem>& entries() const { return entries_; }
  KElem operator()(Index j, Index k) const { return entries_(j, k); }
  const Provenance& provenance() const { return provenance_; }

  /// Zero diagonal and G(j,k) = -G(k,j). In characteristic 2 the second
  /// condition alone would only say symmetric.
  bool is_alternating() const;
  bool is_zero() const;

  /// Compares towers and entries; provenance is ignored.
  friend bool operator==(const GramForm& a, const GramForm& b);

 private:
  TowerPtr tower_;
  Matrix<KElem> entries_;
  Provenance provenance_;
};

GramForm operator+(const GramForm& a, const GramForm& b);
GramForm operator-(const GramForm& a, const GramForm& b);
GramForm scaled(KElem k, const GramForm& a);

enum class RankBranch {
  kZeroForm,         // b = 0, or an involution with σ^i(b) = b
  kOddConstant,      // ord(σ^i) odd: n - n/ord
  kInvolution,       // ord(σ^i) = 2 and σ^i(b) != b: n
  kEvenSolvable,     // ord(σ^i) = 2r > 2 and σ^i(b)/b = σ^{2i}(c)/c solvable: n - n/r
  kEvenNonsolvable,  // ord(σ^i) = 2r > 2, not solvable: n
  kInvertible,       // a single nonzero term b σ^t: n
};

std::string_view to_string(RankBranch branch);

struct PredictedRank {
  std::uint32_t rank = 0;
  RankBranch branch = RankBranch::kZeroForm;
  friend bool operator==(const PredictedRank&, const PredictedRank&) = default;
};

struct RankReport {
  std::uint32_t rank = 0;
  /// Spans { x : f(x, y) = 0 for all y }.
  std::vector<FieldElement> radical_basis;
  std::optional<PredictedRank> predicted;
};

/// f_{b,σ^i}. Requires i ≢ 0 (mod n).
GramForm build_alt_form(const TowerPtr& tower, const FieldElement& b, AutomorphismIndex i);

/// Form with Gram entries Tr((Σ_t b_t σ^t(v^j)) v^k), t = 0..n-1.
GramForm build_general_form(const TowerPtr& tower, std::span<const FieldElement> b_list);

/// f(x, y) = x^T G y.
KElem evaluate(const GramForm& form, const FieldElement& x, const FieldElement& y);

/// Exact rank and radical by elimination over K. When the form carries
/// provenance the closed-form prediction is attached as well.
RankReport rank(const GramForm& form);

/// x lies in the radical of f_{b,σ^i} iff σ^{-i}(bx) = b σ^i(x).
bool radical_contains(const TowerField& f, const FieldElement& b, AutomorphismIndex i, const FieldElement& x);

/// Closed-form rank of f_{b,σ^i} for b != 0. The even-order dichotomy is
/// decided by Hilbert 90: σ^i(b)/b has the form σ^{2i}(c)/c exactly when its
/// norm down to the fixed field of σ^{2i} is 1.
PredictedRank predicted_rank(const TowerField& f, const FieldElement& b, AutomorphismIndex i);

struct TwistCounts {
  std::uint64_t first = 0;   // |{ σ^i(b)/b : b ∈ L* }|
  std::uint64_t second = 0;  // |{ σ^{2i}(c)/c : c ∈ L* }|
  friend bool operator==(const TwistCounts&, const TwistCounts&) = default;
};

/// Exhaustive count over L*. Requires ord(σ^i) even and |L| within the guard.
TwistCounts count_twist_classes(const TowerField& f, AutomorphismIndex i,
                                std::uint64_t size_guard = kDefaultSizeGuard);

}  // namespace galforms
