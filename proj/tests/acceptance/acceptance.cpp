// Acceptance gate: twelve criteria, exact arithmetic, one PASS/FAIL line each.
// Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <thread>

#include "commands.hpp"

namespace {

using namespace galforms;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string tag(const TowerParams& p) {
  return "(" + std::to_string(p.p) + "," + std::to_string(p.s) + "," + std::to_string(p.n) + ")";
}

const std::vector<TowerParams>& rank_matrix() {
  static const std::vector<TowerParams> towers = {
      {2, 1, 3}, {2, 1, 4}, {2, 1, 5}, {2, 1, 6}, {2, 1, 7}, {2, 1, 8}, {2, 1, 9}, {3, 1, 3},
      {3, 1, 4}, {3, 1, 5}, {2, 2, 3}, {5, 1, 3}, {3, 2, 2}};
  return towers;
}

unsigned workers() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

CensusConfig exhaustive() { return {CensusMode::kExhaustive, 0, kDefaultSeed, kDefaultBudget, workers()}; }

CensusConfig sampled(std::uint64_t samples) { return {CensusMode::kRandom, samples, kDefaultSeed, kDefaultBudget, workers()}; }

CensusReport alt_prefix(const TowerPtr& t, std::uint32_t k, const CensusConfig& cfg) {
  std::vector<AutomorphismIndex> idx;
  for (std::uint32_t i = 1; i <= k; ++i) idx.push_back({i});
  return rank_census(t, idx, cfg);
}

Outcome rank_formula() {
  Outcome o;
  for (const auto& p : rank_matrix()) {
    const auto t = make_tower(p);
    for (std::uint32_t i = 1; i < p.n; ++i)
      for (std::uint64_t idx = 1; idx < t->order(); ++idx) {
        const auto b = t->element_at(idx);
        const auto predicted = predicted_rank(*t, b, {i}).rank;
        const auto actual = rank(build_alt_form(t, b, {i})).rank;
        o.require(predicted == actual, tag(p) + " i=" + std::to_string(i) + " b#" + std::to_string(idx) + ": predicted " +
                                           std::to_string(predicted) + ", computed " + std::to_string(actual));
      }
  }
  return o;
}

Outcome constant_rank() {
  Outcome o;
  const auto t = make_tower({2, 1, 9});
  std::uint64_t count = 0;
  for (std::uint64_t idx = 1; idx < t->order(); ++idx) {
    const auto r = rank(build_alt_form(t, t->element_at(idx), {3})).rank;
    o.require(r == 6, "b#" + std::to_string(idx) + " has rank " + std::to_string(r));
    ++count;
  }
  o.require(count == 511, "expected 511 nonzero b");
  return o;
}

Outcome bimodality() {
  Outcome o;
  const auto t = make_tower({2, 1, 4});
  std::set<std::uint32_t> seen;
  for (std::uint64_t idx = 1; idx < t->order(); ++idx) seen.insert(rank(build_alt_form(t, t->element_at(idx), {1})).rank);
  o.require(seen == std::set<std::uint32_t>{2, 4}, "rank set differs from {2, 4}");
  return o;
}

Outcome twist_counts() {
  Outcome o;
  const auto t = make_tower({2, 1, 4});
  const std::uint64_t q = 2, r = 2;
  std::uint64_t q2r = 1;
  for (std::uint64_t j = 0; j < 2 * r; ++j) q2r *= q;
  const auto c = count_twist_classes(*t, {1});
  o.require(c.first == 15 && c.second == 5, "counts (" + std::to_string(c.first) + ", " + std::to_string(c.second) + ")");
  o.require(c.first == (q2r - 1) / (q - 1) && c.second == (q2r - 1) / (q * q - 1), "counts disagree with the formula");
  return o;
}

Outcome odd_isomorphism() {
  Outcome o;
  for (std::uint32_t n : {5u, 7u}) {
    const auto t = make_tower({2, 1, n});
    o.require(phi_odd_kernel(t).empty(), "n=" + std::to_string(n) + ": nonzero kernel");
    std::vector<FormSpace> spaces;
    for (std::uint32_t i = 1; 2 * i < n; ++i) spaces.push_back(space_A(t, {i}));
    const auto r = verify_direct_sum(spaces);
    o.require(r.span_dim == n * (n - 1) / 2 && r.fills_ambient, "n=" + std::to_string(n) + ": image is not Alt(L)");
  }
  const auto t = make_tower({2, 1, 5});
  std::set<std::vector<KElem>> images;
  for (std::uint64_t a = 0; a < t->order(); ++a)
    for (std::uint64_t c = 0; c < t->order(); ++c) {
      const std::vector<FieldElement> b{t->element_at(a), t->element_at(c)};
      const auto& d = phi_odd(t, b).entries().data();
      images.emplace(d.begin(), d.end());
    }
  o.require(images.size() == 1024, "injectivity scan found " + std::to_string(images.size()) + " distinct images");
  return o;
}

Outcome even_kernel() {
  Outcome o;
  for (std::uint32_t n : {4u, 6u}) {
    const auto t = make_tower({2, 1, n});
    const TowerField& f = *t;
    const auto kernel = phi_even_kernel(t);
    o.require(kernel.size() == n / 2, "n=" + std::to_string(n) + ": kernel dimension " + std::to_string(kernel.size()));
    std::vector<FieldElement> inv;
    for (const auto& e : kernel) {
      bool others_zero = true;
      for (const auto& c : e.others) others_zero = others_zero && f.is_zero(c);
      o.require(others_zero, "kernel vector has a nonzero non-involution coordinate");
      o.require(frobenius(f, e.involution, {n / 2}) == e.involution, "involution coordinate is not fixed");
      inv.push_back(e.involution);
    }
    const auto fixed = fixed_field_basis(f, {n / 2});
    inv.insert(inv.end(), fixed.begin(), fixed.end());
    o.require(span_dimension(f, inv) == n / 2, "kernel does not span the fixed field");
  }
  return o;
}

Outcome partial_sums() {
  Outcome o;
  const auto t = make_tower({2, 1, 7});
  for (std::uint32_t k = 1; k <= 3; ++k) {
    const auto r = alt_prefix(t, k, k <= 2 ? exhaustive() : sampled(100000));
    const std::uint32_t bound = 7 - 2 * k + 1;
    const std::string at = "k=" + std::to_string(k);
    o.require(r.min_rank() >= bound, at + ": rank " + std::to_string(r.min_rank()) + " below " + std::to_string(bound));
    o.require(r.min_rank() == bound, at + ": bound not attained");
    for (std::uint32_t e = bound; e <= 6; e += 2) o.require(r.ranks.count(e) == 1, at + ": rank " + std::to_string(e) + " missing");
    if (k <= 2) {
      o.require(r.inspected == (std::uint64_t{1} << (7 * k)) - 1, at + ": not exhaustive");
    } else {
      o.require(r.inspected >= 100000, at + ": fewer than 10^5 samples");
    }
  }
  return o;
}

Outcome even_bound() {
  Outcome o;
  for (std::uint32_t n : {6u, 8u}) {
    const auto t = make_tower({2, 1, n});
    for (std::uint32_t k = 1; k <= 2; ++k) {
      const auto r = alt_prefix(t, k, n == 6 ? exhaustive() : sampled(10000));
      o.require(r.min_rank() >= n - 2 * k, "(2,1," + std::to_string(n) + ") k=" + std::to_string(k) + ": rank " +
                                               std::to_string(r.min_rank()));
    }
  }
  return o;
}

Outcome moore_equivalence() {
  Outcome o;
  {
    const auto t = make_tower({2, 1, 3});
    for (std::uint32_t k = 1; k <= 3; ++k) {
      std::uint64_t total = 1;
      for (std::uint32_t j = 0; j < k; ++j) total *= t->order();
      for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<FieldElement> xs;
        for (std::uint64_t c = code, j = 0; j < k; ++j, c /= t->order()) xs.push_back(t->element_at(c % t->order()));
        o.require(dependent_via_moore(*t, xs) == dependent_via_elim(*t, xs), "(2,1,3) tuple #" + std::to_string(code));
      }
    }
  }
  for (const TowerParams p : {TowerParams{2, 1, 5}, TowerParams{3, 1, 3}}) {
    const auto t = make_tower(p);
    for (std::uint32_t k = 1; k <= p.n; ++k) {
      for (std::uint64_t s = 0; s < 10000; ++s) {
        auto rng = SplitMix64::stream(kDefaultSeed, s * 16 + k);
        std::vector<FieldElement> xs;
        for (std::uint32_t j = 0; j < k; ++j) xs.push_back(random_element(*t, rng));
        o.require(dependent_via_moore(*t, xs) == dependent_via_elim(*t, xs), tag(p) + " k=" + std::to_string(k));
      }
    }
  }
  return o;
}

Outcome kernel_and_annihilator() {
  Outcome o;
  for (const auto& p : rank_matrix()) {
    const auto t = make_tower(p);
    const TowerField& f = *t;
    SplitMix64 rng(kDefaultSeed ^ (p.p * 1000 + p.s * 100 + p.n));
    for (int rep = 0; rep < 100; ++rep) {
      const auto d = rng.below(p.n);
      std::vector<FieldElement> coeffs;
      for (std::uint64_t j = 0; j < d; ++j) coeffs.push_back(random_element(f, rng));
      coeffs.push_back(random_nonzero_element(f, rng));
      const SigmaPoly w(f, coeffs);
      o.require(kernel_of_sigma_poly(f, w).size() <= d, tag(p) + ": kernel exceeds degree " + std::to_string(d));
    }
    for (std::uint32_t k = 1; k < p.n; ++k)
      for (int rep = 0; rep < 100; ++rep) {
        std::vector<FieldElement> u;
        while (u.size() < k) {
          u.push_back(random_nonzero_element(f, rng));
          if (span_dimension(f, u) < u.size()) u.pop_back();
        }
        const auto kernel = kernel_of_sigma_poly(f, annihilator_poly(f, u));
        auto joined = u;
        joined.insert(joined.end(), kernel.begin(), kernel.end());
        o.require(kernel.size() == k && span_dimension(f, joined) == k, tag(p) + " k=" + std::to_string(k) +
                                                                            ": kernel differs from span(U)");
      }
  }
  return o;
}

Outcome bilinear() {
  Outcome o;
  for (std::uint32_t p : {2u, 3u}) {
    const auto t = make_tower({p, 1, 3});
    const std::string at = "(" + std::to_string(p) + ",1,3)";
    std::vector<FormSpace> spaces;
    for (std::uint32_t s = 0; s < 3; ++s) {
      spaces.push_back(space_B_bil(t, s));
      o.require(spaces.back().dim() == 3, at + ": dim B_t != 3");
      const std::uint32_t one[] = {s};
      const auto r = bil_census(t, one, exhaustive());
      o.require(r.ranks.size() == 1 && r.min_rank() == 3 && r.inspected == t->order() - 1, at + ": B_t not invertible");
    }
    o.require(verify_direct_sum(spaces).span_dim == 9, at + ": sum of B_t is not Bil(L)");
    for (std::uint32_t k = 1; k <= 3; ++k) {
      std::vector<std::uint32_t> powers;
      for (std::uint32_t s = 1; s <= k; ++s) powers.push_back(s);
      const auto r = bil_census(t, powers, exhaustive());
      o.require(r.min_rank() == 3 - k + 1, at + " k=" + std::to_string(k) + ": min rank " + std::to_string(r.min_rank()));
    }
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  using namespace galforms::cli;
  RunConfig c;
  c.params = {2, 1, 8};
  c.mode = "random";
  c.samples = 20000;
  c.seed = 12345;
  const auto a = cmd_census(c, "alt", {1, 2, 3});
  const auto b = cmd_census(c, "alt", {1, 2, 3});
  c.workers = 4;
  const auto d = cmd_census(c, "alt", {1, 2, 3});
  o.require(a.output == b.output, "random census differs between identical runs");
  o.require(a.output == d.output, "random census differs between 1 and 4 workers");

  RunConfig e;
  e.params = {2, 1, 7};
  const auto x = cmd_census(e, "alt", {1, 2});
  e.workers = 4;
  const auto y = cmd_census(e, "alt", {1, 2});
  o.require(x.output == y.output, "exhaustive census differs between 1 and 4 workers");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"rank formula equals computed rank", rank_formula},
      {"constant rank 6 on (2,1,9), i=3", constant_rank},
      {"rank set {2,4} on (2,1,4), i=1", bimodality},
      {"twist-class counts (15, 5)", twist_counts},
      {"odd phi is an isomorphism", odd_isomorphism},
      {"even phi kernel has dimension n/2", even_kernel},
      {"partial sums on (2,1,7)", partial_sums},
      {"even-degree partial sums", even_bound},
      {"Moore determinant detects dependence", moore_equivalence},
      {"kernel bound and annihilator round-trip", kernel_and_annihilator},
      {"bilinear spaces and windows", bilinear},
      {"census output is deterministic", determinism},
  };
  int failures = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[c].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu  %s  [%.2fs]%s%s\n", o.pass ? "PASS" : "FAIL", c + 1, criteria[c].first.c_str(), secs,
                o.detail.empty() ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
