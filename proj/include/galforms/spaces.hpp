#pragma once

// Subspaces of Alt(L) and Bil(L) spanned by trace forms, the decomposition
// maps φ, and rank censuses over sums of subspaces.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "galforms/forms.hpp"
#include "galforms/random.hpp"

namespace galforms {

enum class SpaceKind {
  kAltA,           // A^{σ^i}, ord(σ^i) > 2
  kAltInvolution,  // A^{σ^i}, ord(σ^i) = 2, dimension n/2
  kBilB,           // { Tr(b σ^t(x) y) : b ∈ L }
};

std::string_view to_string(SpaceKind kind);

/// A K-subspace of forms. basis[l] is the form generated by b = v^{powers[l]}
/// (with the space's automorphism); the powers skipped are exactly those
/// whose image was dependent on earlier ones.
struct FormSpace {
  TowerPtr tower;
  SpaceKind kind = SpaceKind::kAltA;
  std::vector<std::uint32_t> indices;
  std::vector<GramForm> basis;
  std::vector<std::uint32_t> powers;

  std::uint32_t dim() const { return static_cast<std::uint32_t>(basis.size()); }
};

/// A^{σ^i} = { f_{b,σ^i} : b ∈ L }.
FormSpace space_A(const TowerPtr& tower, AutomorphismIndex i);

/// B_t = { (x, y) ↦ Tr(b σ^t(x) y) : b ∈ L }; t is taken mod n.
FormSpace space_B_bil(const TowerPtr& tower, std::uint32_t t);

/// Σ_{i=1}^{m} f_{b_i,σ^i} for odd n = 2m + 1.
GramForm phi_odd(const TowerPtr& tower, std::span<const FieldElement> b_list);

/// Inverse of phi_odd.
std::vector<FieldElement> decompose_odd(const GramForm& form);

/// Null space of phi_odd as a K-linear map L^m -> Alt(L); empty means injective.
std::vector<std::vector<FieldElement>> phi_odd_kernel(const TowerPtr& tower);

/// Preimage coordinates for even n = 2m + 2: the involution τ = σ^{n/2}
/// carries `involution`, and others[j-1] goes with σ^j for j = 1..m.
struct EvenCoordinates {
  FieldElement involution;
  std::vector<FieldElement> others;
  friend bool operator==(const EvenCoordinates&, const EvenCoordinates&) = default;
};

/// f_{b,τ} + Σ_{j=1}^{m} f_{c_j,σ^j}. An absent involution coordinate means 0.
GramForm phi_even(const TowerPtr& tower, const std::optional<FieldElement>& b_involution,
                  std::span<const FieldElement> c_list);

/// The preimage whose involution coordinate lies in span{ v^j : j a pivot
/// column of σ^{n/2} - 1 }, a complement of Fix(τ).
EvenCoordinates decompose_even(const GramForm& form);

/// Null space of phi_even as a K-linear map L^{1+m} -> Alt(L).
std::vector<EvenCoordinates> phi_even_kernel(const TowerPtr& tower);

struct DirectSumReport {
  bool direct = false;
  std::vector<std::uint32_t> dims;
  std::uint32_t sum_of_dims = 0;
  std::uint32_t span_dim = 0;
  /// n(n-1)/2 when every space is alternating, n^2 otherwise.
  std::uint32_t ambient_dim = 0;
  bool fills_ambient = false;
};

DirectSumReport verify_direct_sum(std::span<const FormSpace> spaces);

// ---------------------------------------------------------------------------
// Censuses

enum class CensusMode { kExhaustive, kRandom };

std::string_view to_string(CensusMode mode);

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 22;

struct CensusConfig {
  CensusMode mode = CensusMode::kExhaustive;
  std::uint64_t samples = 10000;
  std::uint64_t seed = kDefaultSeed;
  /// Exhaustive mode requires |L|^{#indices} <= budget.
  std::uint64_t budget = kDefaultBudget;
  unsigned workers = 1;
};

struct CensusReport {
  TowerParams params;
  SpaceKind family = SpaceKind::kAltA;  // kAltA for alternating sums, kBilB for bilinear
  std::vector<std::uint32_t> indices;
  std::uint32_t dim = 0;
  CensusMode mode = CensusMode::kExhaustive;
  std::uint64_t seed = 0;
  std::uint64_t inspected = 0;
  std::map<std::uint32_t, std::uint64_t> ranks;
  /// For each observed rank, the generating tuple (one b per index) with the
  /// smallest enumeration index.
  std::map<std::uint32_t, std::vector<FieldElement>> witnesses;
  std::optional<std::uint32_t> bound;

  std::uint32_t min_rank() const { return ranks.empty() ? 0 : ranks.begin()->first; }
  bool bound_holds() const { return !bound || ranks.empty() || min_rank() >= *bound; }
};

/// Ranks of the nonzero elements of A^{i_1} + ... + A^{i_k}.
CensusReport rank_census(const TowerPtr& tower, std::span<const AutomorphismIndex> indices,
                         const CensusConfig& config);

/// Ranks of the nonzero elements of B_{t_1} + ... + B_{t_k}.
CensusReport bil_census(const TowerPtr& tower, std::span<const std::uint32_t> powers,
                        const CensusConfig& config);

/// Lower bound on the rank of nonzero elements that the construction
/// guarantees, or nullopt when none applies. Alternating: with i normalized
/// to min(i, n-i) and k the largest normalized index, n-2k+1 for odd n and
/// n-2k for even n when k < n/2. Bilinear: n-w+1 for the shortest cyclic
/// window of w consecutive powers containing every t.
std::optional<std::uint32_t> census_bound(const TowerField& f, SpaceKind family,
                                          std::span<const std::uint32_t> indices);

}  // namespace galforms
