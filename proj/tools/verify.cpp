#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "commands.hpp"

namespace galforms::cli {

namespace {

constexpr std::uint64_t kPoolLimit = 1024;
constexpr std::uint64_t kPoolSamples = 256;

struct Check {
  std::string name;
  bool passed = true;
  bool sampled = false;
  bool downgraded = false;  // sampled only because the exhaustive work exceeds the budget
  std::string detail;
};

class Verifier {
 public:
  Verifier(TowerPtr tower, const RunConfig& config)
      : tower_(std::move(tower)), f_(*tower_), config_(config), n_(f_.degree()), rng_(config.seed) {}

  std::vector<Check> run() {
    frobenius();
    trace();
    form_identities();
    radical();
    rank_formula();
    spaces();
    decomposition();
    direct_sum();
    partial_sums();
    spectrum();
    twists();
    moore();
    kernel_bound();
    annihilator();
    bilinear();
    return {checks_.begin(), checks_.end()};
  }

 private:
  Check& begin(std::string name) {
    checks_.push_back({std::move(name), true, false, false, ""});
    return checks_.back();
  }

  static void require(Check& c, bool ok, const std::string& what) {
    if (!ok && c.passed) {
      c.passed = false;
      c.detail = what;
    }
  }

  bool fits(unsigned __int128 work) const { return work <= config_.budget; }

  unsigned __int128 power_of_order(std::uint32_t k) const {
    unsigned __int128 w = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      w *= f_.order();
      if (w > (unsigned __int128)config_.budget) break;
    }
    return w;
  }

  // All of L when small, otherwise a seeded sample.
  std::vector<FieldElement> pool(Check& c) {
    std::vector<FieldElement> out;
    if (f_.order() <= kPoolLimit && fits(f_.order())) {
      for (std::uint64_t x = 0; x < f_.order(); ++x) out.push_back(f_.element_at(x));
    } else {
      c.sampled = c.downgraded = true;
      for (std::uint64_t s = 0; s < kPoolSamples; ++s) out.push_back(random_element(f_, rng_));
    }
    return out;
  }

  FieldElement rand() { return random_element(f_, rng_); }
  FieldElement rand_nonzero() { return random_nonzero_element(f_, rng_); }

  std::uint32_t order_of(std::uint32_t i) const { return automorphism_order(f_, {i}); }

  CensusConfig census_for(std::uint32_t k, Check& c) {
    CensusConfig cc{CensusMode::kExhaustive, config_.samples, config_.seed, config_.budget, config_.workers};
    if (!fits(power_of_order(k))) {
      cc.mode = CensusMode::kRandom;
      c.sampled = c.downgraded = true;
    }
    return cc;
  }

  void frobenius() {
    Check& c = begin("frobenius-automorphism");
    const auto xs = pool(c);
    for (const auto& x : xs) {
      const auto y = rand();
      const auto sx = galforms::frobenius(f_, x, {1});
      const auto sy = galforms::frobenius(f_, y, {1});
      require(c, galforms::frobenius(f_, f_.add(x, y), {1}) == f_.add(sx, sy), "sigma is not additive");
      require(c, galforms::frobenius(f_, f_.mul(x, y), {1}) == f_.mul(sx, sy), "sigma is not multiplicative");
      auto z = x;
      for (std::uint32_t i = 0; i < n_; ++i) z = galforms::frobenius(f_, z, {1});
      require(c, z == x, "sigma^n is not the identity");
    }
    for (KElem k = 0; k < f_.base_order(); ++k)
      require(c, galforms::frobenius(f_, f_.embed(k), {1}) == f_.embed(k), "sigma moves an element of K");
    const auto gamma = primitive_element(f_);
    for (std::uint32_t i = 0; i < n_; ++i) {
      std::uint32_t e = 1;
      auto z = galforms::frobenius(f_, gamma, {i});
      while (z != gamma) {
        z = galforms::frobenius(f_, z, {i});
        ++e;
      }
      const std::uint32_t expected = n_ / std::gcd(n_, i == 0 ? n_ : i);
      require(c, e == expected && automorphism_order(f_, {i}) == expected,
              "ord(sigma^" + std::to_string(i) + ") is wrong");
    }
  }

  void trace() {
    Check& c = begin("trace-lies-in-K");
    for (const auto& x : pool(c)) {
      const auto t = galforms::trace(f_, x);
      bool in_k = true;
      for (std::uint32_t j = 1; j < n_; ++j) in_k = in_k && t.coords[j] == 0;
      require(c, in_k && t.coords[0] == f_.trace_value(x), "trace leaves K");
      for (std::uint32_t j = 1; j < n_; ++j)
        require(c, galforms::trace(f_, galforms::frobenius(f_, x, {j})) == t, "trace is not sigma-invariant");
    }
  }

  void form_identities() {
    Check& alt = begin("forms-alternating");
    Check& adj = begin("forms-adjoint-identity");
    const auto xs = pool(alt);
    adj.sampled = alt.sampled;
    adj.downgraded = alt.downgraded;
    for (std::uint32_t i = 1; i < n_; ++i) {
      for (int rep = 0; rep < 3; ++rep) {
        const auto b = rand();
        const auto form = build_alt_form(tower_, b, {i});
        require(alt, form.is_alternating(), "Gram matrix is not alternating");
        const std::size_t limit = std::min<std::size_t>(xs.size(), 64);
        for (std::size_t s = 0; s < limit; ++s) {
          const auto& x = xs[(s * 7919 + rep) % xs.size()];
          const auto y = rand();
          require(alt, evaluate(form, x, x) == 0, "f(x, x) != 0");
          const auto lhs = evaluate(form, x, y);
          const auto u = f_.sub(galforms::frobenius(f_, f_.mul(b, x), inverse(f_, {i})),
                                f_.mul(b, galforms::frobenius(f_, x, {i})));
          require(adj, lhs == f_.trace_value(f_.mul(u, y)), "adjoint identity fails");
        }
      }
    }
  }

  void radical() {
    Check& c = begin("radical-criterion");
    const auto xs = pool(c);
    const bool all = !c.sampled;
    for (std::uint32_t i = 1; i < n_; ++i) {
      for (int rep = 0; rep < 3; ++rep) {
        const auto b = rand_nonzero();
        const auto report = rank(build_alt_form(tower_, b, {i}));
        for (const auto& r : report.radical_basis)
          require(c, radical_contains(f_, b, {i}, r), "radical vector fails the criterion");
        std::uint64_t hits = 0;
        for (const auto& x : xs) {
          const bool in = radical_contains(f_, b, {i}, x);
          hits += in ? 1 : 0;
          if (!all) {
            auto joined = report.radical_basis;
            joined.push_back(x);
            require(c, in == (span_dimension(f_, joined) == report.radical_basis.size()),
                    "criterion disagrees with the radical");
          }
        }
        if (all) {
          std::uint64_t expected = 1;
          for (std::size_t d = 0; d < report.radical_basis.size(); ++d) expected *= f_.base_order();
          require(c, hits == expected, "criterion count differs from |radical|");
        }
      }
    }
  }

  void rank_formula() {
    Check& c = begin("rank-formula");
    const bool exhaustive = fits((unsigned __int128)(f_.order() - 1) * (n_ - 1));
    c.sampled = c.downgraded = !exhaustive;
    for (std::uint32_t i = 1; i < n_; ++i) {
      const std::uint64_t count = exhaustive ? f_.order() - 1 : 200;
      for (std::uint64_t s = 0; s < count; ++s) {
        const auto b = exhaustive ? f_.element_at(s + 1) : rand_nonzero();
        const auto report = rank(build_alt_form(tower_, b, {i}));
        require(c, report.predicted && report.predicted->rank == report.rank,
                "predicted rank differs for i = " + std::to_string(i));
      }
    }
  }

  void spaces() {
    Check& dims = begin("space-dimensions");
    Check& reidx = begin("reindexing");
    for (std::uint32_t i = 1; i < n_; ++i) {
      const auto a = space_A(tower_, {i});
      const bool involution = order_of(i) == 2;
      require(dims, a.dim() == (involution ? n_ / 2 : n_), "dim A^" + std::to_string(i) + " is wrong");
      require(dims, a.kind == (involution ? SpaceKind::kAltInvolution : SpaceKind::kAltA), "space kind is wrong");
      const FormSpace both[] = {a, space_A(tower_, {n_ - i})};
      require(reidx, verify_direct_sum(both).span_dim == a.dim(), "A^i and A^{n-i} differ");
      for (int rep = 0; rep < 4; ++rep) {
        const auto b = rand();
        const auto c = f_.neg(galforms::frobenius(f_, b, inverse(f_, {i})));
        require(reidx, build_alt_form(tower_, b, {i}) == build_alt_form(tower_, c, {n_ - i}),
                "reindexing identity fails");
      }
    }
  }

  GramForm random_alternating() {
    Matrix<KElem> m(n_, n_, 0);
    const auto& k = f_.base();
    for (std::uint32_t r = 0; r < n_; ++r)
      for (std::uint32_t s = r + 1; s < n_; ++s) {
        m(r, s) = static_cast<KElem>(rng_.below(f_.base_order()));
        m(s, r) = k.neg(m(r, s));
      }
    return GramForm(tower_, std::move(m));
  }

  void decomposition() {
    const std::uint32_t m = n_ % 2 == 1 ? (n_ - 1) / 2 : (n_ - 2) / 2;
    if (n_ % 2 == 1) {
      Check& c = begin("phi-isomorphism");
      c.sampled = true;
      require(c, phi_odd_kernel(tower_).empty(), "phi has a nonzero kernel");
      for (int rep = 0; rep < 50; ++rep) {
        const auto g = random_alternating();
        const auto bs = decompose_odd(g);
        require(c, bs.size() == m && phi_odd(tower_, bs) == g, "decomposition does not round-trip");
      }
    } else {
      Check& c = begin("phi-epimorphism");
      c.sampled = true;
      const auto kernel = phi_even_kernel(tower_);
      require(c, kernel.size() == n_ / 2, "kernel dimension is not n/2");
      for (const auto& e : kernel) {
        bool others_zero = true;
        for (const auto& o : e.others) others_zero = others_zero && f_.is_zero(o);
        require(c, others_zero && galforms::frobenius(f_, e.involution, {n_ / 2}) == e.involution,
                "kernel vector is not a fixed involution coordinate");
      }
      for (int rep = 0; rep < 50; ++rep) {
        const auto g = random_alternating();
        const auto e = decompose_even(g);
        require(c, e.others.size() == m && phi_even(tower_, e.involution, e.others) == g,
                "decomposition does not round-trip");
      }
    }
  }

  void direct_sum() {
    Check& c = begin("direct-sum");
    std::vector<FormSpace> list;
    if (n_ % 2 == 0) list.push_back(space_A(tower_, {n_ / 2}));
    for (std::uint32_t i = 1; 2 * i < n_; ++i) list.push_back(space_A(tower_, {i}));
    const auto report = verify_direct_sum(list);
    require(c, report.direct && report.fills_ambient, "spaces do not decompose Alt(L)");
  }

  void partial_sums() {
    Check& c = begin("partial-sum-bounds");
    const std::uint32_t m = n_ % 2 == 1 ? (n_ - 1) / 2 : (n_ - 2) / 2;
    for (std::uint32_t k = 1; k <= m; ++k) {
      std::vector<AutomorphismIndex> idx;
      for (std::uint32_t i = 1; i <= k; ++i) idx.push_back({i});
      const auto report = rank_census(tower_, idx, census_for(k, c));
      require(c, report.bound && report.bound_holds(),
              "rank " + std::to_string(report.min_rank()) + " below bound for k = " + std::to_string(k));
    }
  }

  void spectrum() {
    Check& c = begin("rank-spectrum");
    for (std::uint32_t i = 1; i < n_; ++i) {
      const std::uint32_t e = order_of(i);
      std::set<std::uint32_t> expected;
      if (e % 2 == 1) {
        expected = {n_ - n_ / e};
      } else if (e == 2) {
        expected = {n_};
      } else {
        expected = {n_ - n_ / (e / 2), n_};
      }
      const AutomorphismIndex idx[] = {{i}};
      const auto cc = census_for(1, c);
      const auto report = rank_census(tower_, idx, cc);
      std::set<std::uint32_t> seen;
      for (const auto& [r, count] : report.ranks) seen.insert(r);
      const bool ok = cc.mode == CensusMode::kExhaustive
                          ? seen == expected
                          : std::includes(expected.begin(), expected.end(), seen.begin(), seen.end());
      require(c, ok, "unexpected rank set on A^" + std::to_string(i));
    }
  }

  void twists() {
    bool any = false;
    for (std::uint32_t i = 1; i < n_; ++i) any = any || order_of(i) % 2 == 0;
    if (!any) return;
    Check& c = begin("twist-class-counts");
    const std::uint64_t q = f_.base_order();
    auto fixed_size = [&](std::uint32_t d) {
      std::uint64_t size = 1;
      for (std::uint32_t j = 0; j < std::gcd(n_, d % n_ == 0 ? n_ : d % n_); ++j) size *= q;
      return size;
    };
    const bool exhaustive = fits(f_.order());
    c.sampled = c.downgraded = !exhaustive;
    for (std::uint32_t i = 1; i < n_; ++i) {
      if (order_of(i) % 2 == 1) continue;
      const TwistCounts expected{(f_.order() - 1) / (fixed_size(i) - 1), (f_.order() - 1) / (fixed_size(2 * i) - 1)};
      if (exhaustive) {
        const auto counts = count_twist_classes(f_, {i});
        require(c, counts == expected && counts.first > counts.second,
                "twist counts differ for i = " + std::to_string(i));
      } else {
        for (int rep = 0; rep < 64; ++rep) {
          const auto b = rand_nonzero();
          const auto t = f_.mul(galforms::frobenius(f_, b, {i}), f_.inv(b));
          require(c, norm_to_fixed(f_, t, {i}) == f_.one(), "twist has norm != 1");
        }
      }
    }
  }

  void moore() {
    Check& c = begin("moore-dependence");
    c.sampled = true;
    for (std::uint32_t k = 1; k <= n_; ++k) {
      for (int rep = 0; rep < 40; ++rep) {
        std::vector<FieldElement> xs;
        for (std::uint32_t j = 0; j < k; ++j) xs.push_back(rand());
        if (rep % 2 == 1 && k > 1) {
          FieldElement comb = f_.zero();
          for (std::uint32_t j = 0; j + 1 < k; ++j)
            comb = f_.add(comb, f_.scale(static_cast<KElem>(rng_.below(f_.base_order())), xs[j]));
          xs.back() = comb;
        }
        require(c, dependent_via_moore(f_, xs) == dependent_via_elim(f_, xs),
                "Moore determinant disagrees with elimination");
      }
    }
  }

  void kernel_bound() {
    Check& c = begin("sigma-kernel-bound");
    c.sampled = true;
    for (int rep = 0; rep < 100; ++rep) {
      const std::uint32_t d = 1 + static_cast<std::uint32_t>(rng_.below(n_ - 1 == 0 ? 1 : n_ - 1));
      std::vector<FieldElement> coeffs;
      for (std::uint32_t j = 0; j < d; ++j) coeffs.push_back(rand());
      coeffs.push_back(rand_nonzero());
      const SigmaPoly w(f_, coeffs);
      require(c, kernel_of_sigma_poly(f_, w).size() <= d, "kernel exceeds the degree");
    }
  }

  void annihilator() {
    Check& c = begin("annihilator-round-trip");
    c.sampled = true;
    for (std::uint32_t k = 1; k < n_; ++k) {
      for (int rep = 0; rep < 10; ++rep) {
        std::vector<FieldElement> u;
        while (u.size() < k) {
          u.push_back(rand_nonzero());
          if (span_dimension(f_, u) < u.size()) u.pop_back();
        }
        const auto w = annihilator_poly(f_, u);
        const auto kernel = kernel_of_sigma_poly(f_, w);
        auto joined = u;
        joined.insert(joined.end(), kernel.begin(), kernel.end());
        require(c, w.degree() == static_cast<int>(k) && w.coeffs().back() == f_.one(), "w is not monic of degree k");
        require(c, kernel.size() == k && span_dimension(f_, joined) == k, "ker w(sigma) differs from span(U)");
      }
    }
  }

  void bilinear() {
    Check& spaces = begin("bilinear-spaces");
    Check& bounds = begin("bilinear-partial-sum-bounds");
    std::vector<FormSpace> list;
    for (std::uint32_t t = 0; t < n_; ++t) {
      list.push_back(space_B_bil(tower_, t));
      require(spaces, list.back().dim() == n_, "dim B_t != n");
      const std::uint32_t one[] = {t};
      const auto report = bil_census(tower_, one, census_for(1, spaces));
      require(spaces, report.min_rank() == n_ && report.ranks.size() == 1, "B_t has a degenerate form");
    }
    const auto sum = verify_direct_sum(list);
    require(spaces, sum.direct && sum.span_dim == n_ * n_, "B_0 + ... + B_{n-1} is not Bil(L)");
    for (std::uint32_t k = 1; k <= n_; ++k) {
      std::vector<std::uint32_t> powers;
      for (std::uint32_t t = 0; t < k; ++t) powers.push_back(t);
      const auto report = bil_census(tower_, powers, census_for(k, bounds));
      require(bounds, report.bound && *report.bound == n_ - k + 1 && report.bound_holds(),
              "bilinear bound fails for k = " + std::to_string(k));
    }
  }

  TowerPtr tower_;
  const TowerField& f_;
  RunConfig config_;
  std::uint32_t n_;
  SplitMix64 rng_;
  std::deque<Check> checks_;  // stable references across begin()
};

}  // namespace

CommandResult cmd_verify(const RunConfig& config) {
  const auto tower = make_tower(config.params, kDefaultSizeGuard);
  const auto checks = Verifier(tower, config).run();

  CommandResult result;
  bool all = true;
  Json list = Json::array();
  std::ostringstream plain;
  for (const auto& c : checks) {
    all = all && c.passed;
    const char* mode = c.sampled ? "sampled" : "exhaustive";
    list.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"mode", mode}, {"detail", c.detail}});
    plain << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << mode << ")";
    if (!c.detail.empty()) plain << ": " << c.detail;
    plain << "\n";
    if (c.downgraded) result.diagnostics += "notice: " + c.name + " exceeds the budget; used seeded sampling\n";
  }
  result.exit_code = all ? kExitOk : kExitClaimViolated;
  if (config.plain) {
    result.output = plain.str();
  } else {
    result.output = Json{{"params", params_to_json(config.params)},
                         {"seed", config.seed},
                         {"budget", config.budget},
                         {"checks", std::move(list)},
                         {"passed", all}}
                        .dump() +
                    "\n";
  }
  return result;
}

}  // namespace galforms::cli
