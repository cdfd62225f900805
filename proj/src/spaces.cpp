#include "galforms/spaces.hpp"

#include <algorithm>
#include <thread>

namespace galforms {

namespace {

std::vector<KElem> flatten(const GramForm& g) { return g.entries().data(); }

// Strictly upper-triangular entries; determines an alternating form.
std::vector<KElem> upper(const GramForm& g) {
  std::vector<KElem> out;
  const Index n = g.entries().rows();
  for (Index j = 0; j < n; ++j)
    for (Index c = j + 1; c < n; ++c) out.push_back(g(j, c));
  return out;
}

Matrix<KElem> rows_matrix(const std::vector<std::vector<KElem>>& rows, Index width) {
  Matrix<KElem> m(static_cast<Index>(rows.size()), width, 0);
  for (Index r = 0; r < m.rows(); ++r)
    std::copy(rows[static_cast<std::size_t>(r)].begin(), rows[static_cast<std::size_t>(r)].end(), m.row(r).begin());
  return m;
}

Matrix<KElem> columns_matrix(const std::vector<std::vector<KElem>>& cols, Index height) {
  return rows_matrix(cols, height).transpose();
}

// Greedy: keep each candidate that is independent of those already kept.
std::vector<std::size_t> independent_subset(const BaseField& k, const std::vector<std::vector<KElem>>& vectors) {
  std::vector<std::size_t> kept;
  std::vector<std::vector<KElem>> rows;
  if (vectors.empty()) return kept;
  const auto width = static_cast<Index>(vectors.front().size());
  for (std::size_t idx = 0; idx < vectors.size(); ++idx) {
    rows.push_back(vectors[idx]);
    if (rank(k, rows_matrix(rows, width)) == static_cast<Index>(rows.size())) {
      kept.push_back(idx);
    } else {
      rows.pop_back();
    }
  }
  return kept;
}

FieldElement combine_powers(const TowerField& f, std::span<const KElem> coefs,
                            std::span<const std::uint32_t> powers) {
  FieldElement out = f.zero();
  for (std::size_t l = 0; l < coefs.size(); ++l)
    out.coords[powers[l]] = f.base().add(out.coords[powers[l]], coefs[l]);
  return out;
}

void require_odd(const TowerField& f) {
  if (f.degree() % 2 == 0) throw PreconditionError("operation needs odd n");
}

void require_even(const TowerField& f) {
  if (f.degree() % 2 == 1) throw PreconditionError("operation needs even n");
}

void require_alternating(const GramForm& form) {
  if (!form.is_alternating()) throw PreconditionError("form is not alternating");
}

// Pivot columns of σ^{n/2} - 1; the v^j at these positions span a complement
// of the fixed field of the involution.
std::vector<std::uint32_t> involution_complement(const TowerField& f) {
  const auto& k = f.base();
  Matrix<KElem> m = f.frobenius_matrix(f.degree() / 2);
  for (Index j = 0; j < m.rows(); ++j) m(j, j) = k.sub(m(j, j), k.one());
  std::vector<std::uint32_t> out;
  for (Index c : row_reduce(k, std::move(m)).pivots) out.push_back(static_cast<std::uint32_t>(c));
  return out;
}

}  // namespace

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::kAltA: return "alt-A";
    case SpaceKind::kAltInvolution: return "alt-B-involution";
    case SpaceKind::kBilB: return "bil-B";
  }
  return "unknown";
}

std::string_view to_string(CensusMode mode) {
  return mode == CensusMode::kExhaustive ? "exhaustive" : "random";
}

FormSpace space_A(const TowerPtr& tower, AutomorphismIndex i) {
  const TowerField& f = *tower;
  const std::uint32_t n = f.degree();
  if (i.value % n == 0) throw PreconditionError("A^σ needs a non-identity automorphism");
  std::vector<GramForm> candidates;
  std::vector<std::vector<KElem>> flat;
  for (std::uint32_t j = 0; j < n; ++j) {
    candidates.push_back(build_alt_form(tower, f.basis(j), i));
    flat.push_back(flatten(candidates.back()));
  }
  FormSpace space{tower, automorphism_order(f, i) == 2 ? SpaceKind::kAltInvolution : SpaceKind::kAltA,
                  {i.value % n}, {}, {}};
  for (std::size_t idx : independent_subset(f.base(), flat)) {
    space.basis.push_back(candidates[idx]);
    space.powers.push_back(static_cast<std::uint32_t>(idx));
  }
  return space;
}

FormSpace space_B_bil(const TowerPtr& tower, std::uint32_t t) {
  const TowerField& f = *tower;
  const std::uint32_t n = f.degree();
  t %= n;
  std::vector<GramForm> candidates;
  std::vector<std::vector<KElem>> flat;
  for (std::uint32_t j = 0; j < n; ++j) {
    std::vector<FieldElement> b_list(n, f.zero());
    b_list[t] = f.basis(j);
    candidates.push_back(build_general_form(tower, b_list));
    flat.push_back(flatten(candidates.back()));
  }
  FormSpace space{tower, SpaceKind::kBilB, {t}, {}, {}};
  for (std::size_t idx : independent_subset(f.base(), flat)) {
    space.basis.push_back(candidates[idx]);
    space.powers.push_back(static_cast<std::uint32_t>(idx));
  }
  return space;
}

// ---------------------------------------------------------------------------
// Odd degree

GramForm phi_odd(const TowerPtr& tower, std::span<const FieldElement> b_list) {
  const TowerField& f = *tower;
  require_odd(f);
  const std::uint32_t m = (f.degree() - 1) / 2;
  if (b_list.size() != m) throw PreconditionError("phi_odd needs (n-1)/2 coordinates");
  GramForm sum = GramForm::zero(tower);
  for (std::uint32_t i = 1; i <= m; ++i) sum = sum + build_alt_form(tower, b_list[i - 1], {i});
  return sum;
}

namespace {

// Columns: upper(f_{v^j,σ^i}) for i = 1..m, j = 0..n-1.
std::vector<std::vector<KElem>> odd_columns(const TowerPtr& tower) {
  const TowerField& f = *tower;
  const std::uint32_t n = f.degree();
  std::vector<std::vector<KElem>> cols;
  for (std::uint32_t i = 1; i <= (n - 1) / 2; ++i)
    for (std::uint32_t j = 0; j < n; ++j) cols.push_back(upper(build_alt_form(tower, f.basis(j), {i})));
  return cols;
}

}  // namespace

std::vector<FieldElement> decompose_odd(const GramForm& form) {
  const TowerField& f = form.tower();
  require_odd(f);
  require_alternating(form);
  const std::uint32_t n = f.degree();
  const Index height = n * (n - 1) / 2;
  const auto target = upper(form);
  const auto x = solve(f.base(), columns_matrix(odd_columns(form.tower_ptr()), height),
                       std::span<const KElem>(target));
  if (!x) throw Error("alternating form outside the image of phi_odd");
  std::vector<FieldElement> out;
  for (std::uint32_t i = 0; i < (n - 1) / 2; ++i)
    out.push_back(FieldElement{std::vector<KElem>(x->begin() + i * n, x->begin() + (i + 1) * n)});
  return out;
}

std::vector<std::vector<FieldElement>> phi_odd_kernel(const TowerPtr& tower) {
  const TowerField& f = *tower;
  require_odd(f);
  const std::uint32_t n = f.degree();
  std::vector<std::vector<FieldElement>> out;
  for (auto& v : null_space(f.base(), columns_matrix(odd_columns(tower), n * (n - 1) / 2))) {
    std::vector<FieldElement> tuple;
    for (std::uint32_t i = 0; i < (n - 1) / 2; ++i)
      tuple.push_back(FieldElement{std::vector<KElem>(v.begin() + i * n, v.begin() + (i + 1) * n)});
    out.push_back(std::move(tuple));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Even degree

GramForm phi_even(const TowerPtr& tower, const std::optional<FieldElement>& b_involution,
                  std::span<const FieldElement> c_list) {
  const TowerField& f = *tower;
  require_even(f);
  const std::uint32_t n = f.degree();
  const std::uint32_t m = (n - 2) / 2;
  if (c_list.size() != m) throw PreconditionError("phi_even needs (n-2)/2 non-involution coordinates");
  GramForm sum = b_involution ? build_alt_form(tower, *b_involution, {n / 2}) : GramForm::zero(tower);
  for (std::uint32_t j = 1; j <= m; ++j) sum = sum + build_alt_form(tower, c_list[j - 1], {j});
  return GramForm(tower, sum.entries());
}

namespace {

std::vector<std::vector<KElem>> even_columns(const TowerPtr& tower, std::span<const std::uint32_t> involution_powers) {
  const TowerField& f = *tower;
  const std::uint32_t n = f.degree();
  std::vector<std::vector<KElem>> cols;
  for (std::uint32_t j : involution_powers) cols.push_back(upper(build_alt_form(tower, f.basis(j), {n / 2})));
  for (std::uint32_t i = 1; i <= (n - 2) / 2; ++i)
    for (std::uint32_t j = 0; j < n; ++j) cols.push_back(upper(build_alt_form(tower, f.basis(j), {i})));
  return cols;
}

EvenCoordinates split_even(const TowerField& f, const std::vector<KElem>& x,
                           std::span<const std::uint32_t> involution_powers) {
  const std::uint32_t n = f.degree();
  const std::size_t head = involution_powers.size();
  EvenCoordinates out;
  out.involution = combine_powers(f, std::span<const KElem>(x.data(), head), involution_powers);
  for (std::uint32_t i = 0; i < (n - 2) / 2; ++i)
    out.others.push_back(FieldElement{std::vector<KElem>(x.begin() + static_cast<Index>(head + i * n),
                                                         x.begin() + static_cast<Index>(head + (i + 1) * n))});
  return out;
}

}  // namespace

EvenCoordinates decompose_even(const GramForm& form) {
  const TowerField& f = form.tower();
  require_even(f);
  require_alternating(form);
  const std::uint32_t n = f.degree();
  const auto complement = involution_complement(f);
  const auto target = upper(form);
  const auto x = solve(f.base(), columns_matrix(even_columns(form.tower_ptr(), complement), n * (n - 1) / 2),
                       std::span<const KElem>(target));
  if (!x) throw Error("alternating form outside the image of phi_even");
  return split_even(f, *x, complement);
}

std::vector<EvenCoordinates> phi_even_kernel(const TowerPtr& tower) {
  const TowerField& f = *tower;
  require_even(f);
  const std::uint32_t n = f.degree();
  std::vector<std::uint32_t> all(n);
  for (std::uint32_t j = 0; j < n; ++j) all[j] = j;
  std::vector<EvenCoordinates> out;
  for (auto& v : null_space(f.base(), columns_matrix(even_columns(tower, all), n * (n - 1) / 2)))
    out.push_back(split_even(f, v, all));
  return out;
}

// ---------------------------------------------------------------------------

DirectSumReport verify_direct_sum(std::span<const FormSpace> spaces) {
  DirectSumReport report;
  if (spaces.empty()) return report;
  const TowerField& f = *spaces.front().tower;
  const std::uint32_t n = f.degree();
  bool all_alt = true;
  std::vector<std::vector<KElem>> rows;
  for (const auto& space : spaces) {
    if (!space.tower->same_tower(f)) throw ContextMismatch("spaces live over different towers");
    all_alt = all_alt && space.kind != SpaceKind::kBilB;
    report.dims.push_back(space.dim());
    report.sum_of_dims += space.dim();
    for (const auto& g : space.basis) rows.push_back(flatten(g));
  }
  report.span_dim = rows.empty() ? 0 : static_cast<std::uint32_t>(rank(f.base(), rows_matrix(rows, n * n)));
  report.direct = report.span_dim == report.sum_of_dims;
  report.ambient_dim = all_alt ? n * (n - 1) / 2 : n * n;
  report.fills_ambient = report.span_dim == report.ambient_dim;
  return report;
}

// ---------------------------------------------------------------------------
// Censuses

namespace {

struct Partial {
  std::map<std::uint32_t, std::uint64_t> counts;
  std::map<std::uint32_t, std::vector<KElem>> witnesses;
};

// Enumeration order: coefficient l has weight q^l, so compare from the end.
bool earlier(const std::vector<KElem>& a, const std::vector<KElem>& b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

void record(Partial& part, std::uint32_t r, const std::vector<KElem>& coefs) {
  ++part.counts[r];
  auto it = part.witnesses.find(r);
  if (it == part.witnesses.end()) {
    part.witnesses.emplace(r, coefs);
  } else if (earlier(coefs, it->second)) {
    it->second = coefs;
  }
}

void accumulate(const BaseField& k, Matrix<KElem>& acc, KElem c, const Matrix<KElem>& term) {
  if (c == 0) return;
  auto& a = acc.data();
  const auto& t = term.data();
  for (std::size_t idx = 0; idx < a.size(); ++idx) a[idx] = k.add(a[idx], k.mul(c, t[idx]));
}

template <class Job>
std::vector<Partial> run_partitioned(std::uint64_t total, unsigned workers, Job job) {
  workers = std::max(1U, workers);
  std::vector<Partial> parts(workers);
  auto bound = [&](unsigned w) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * w / workers);
  };
  if (workers == 1) {
    job(0, total, parts[0]);
    return parts;
  }
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w)
    threads.emplace_back([&, w] { job(bound(w), bound(w + 1), parts[w]); });
  for (auto& t : threads) t.join();
  return parts;
}

CensusReport run_census(const TowerPtr& tower, SpaceKind family, std::vector<std::uint32_t> indices,
                        const std::vector<FormSpace>& spaces, const CensusConfig& config) {
  const TowerField& f = *tower;
  const BaseField& k = f.base();
  const std::uint32_t n = f.degree();
  const std::uint32_t q = f.base_order();
  const std::uint32_t p = k.characteristic();
  const std::uint32_t s = k.degree();

  // Combined basis, reduced to an independent set.
  std::vector<const GramForm*> candidates;
  std::vector<std::size_t> slot_of;
  std::vector<std::uint32_t> power_of;
  std::vector<std::vector<KElem>> flat;
  for (std::size_t slot = 0; slot < spaces.size(); ++slot)
    for (std::size_t l = 0; l < spaces[slot].basis.size(); ++l) {
      candidates.push_back(&spaces[slot].basis[l]);
      slot_of.push_back(slot);
      power_of.push_back(spaces[slot].powers[l]);
      flat.push_back(flatten(spaces[slot].basis[l]));
    }
  const auto kept = independent_subset(k, flat);
  const std::size_t dim = kept.size();
  std::vector<Matrix<KElem>> basis;
  for (std::size_t idx : kept) basis.push_back(candidates[idx]->entries());

  CensusReport report;
  report.params = f.params();
  report.family = family;
  report.indices = indices;
  report.dim = static_cast<std::uint32_t>(dim);
  report.mode = config.mode;
  report.seed = config.seed;
  report.bound = census_bound(f, family, indices);

  std::vector<Partial> parts;
  if (config.mode == CensusMode::kExhaustive) {
    unsigned __int128 limit = 1;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      limit *= f.order();
      if (limit > config.budget)
        throw BudgetExceeded("exhaustive census needs |L|^" + std::to_string(spaces.size()) +
                             " elements, above the budget " + std::to_string(config.budget));
    }
    std::uint64_t total = 1;
    for (std::size_t l = 0; l < dim; ++l) total *= q;

    // Odometer over GF(p)-digits: digit (l, e) multiplies u^e times basis l,
    // so bumping any digit adds one fixed matrix.
    std::vector<Matrix<KElem>> digit_terms;
    std::vector<KElem> pow_p(s, 1);
    for (std::uint32_t e = 1; e < s; ++e) pow_p[e] = pow_p[e - 1] * p;
    for (std::size_t l = 0; l < dim; ++l)
      for (std::uint32_t e = 0; e < s; ++e) {
        Matrix<KElem> t(n, n, 0);
        accumulate(k, t, pow_p[e], basis[l]);
        digit_terms.push_back(std::move(t));
      }

    parts = run_partitioned(total, config.workers, [&](std::uint64_t begin, std::uint64_t end, Partial& part) {
      if (begin >= end) return;
      std::vector<std::uint32_t> digits(dim * s, 0);
      Matrix<KElem> gram(n, n, 0);
      std::uint64_t rest = begin;
      for (std::size_t l = 0; l < dim; ++l) {
        const auto code = static_cast<KElem>(rest % q);
        rest /= q;
        accumulate(k, gram, code, basis[l]);
        for (std::uint32_t e = 0; e < s; ++e) digits[l * s + e] = (code / pow_p[e]) % p;
      }
      std::vector<KElem> coefs(dim);
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        if (idx != 0) {
          const auto r = static_cast<std::uint32_t>(rank(k, gram));
          if (!part.witnesses.contains(r)) {
            for (std::size_t l = 0; l < dim; ++l) {
              KElem code = 0;
              for (std::uint32_t e = 0; e < s; ++e) code += digits[l * s + e] * pow_p[e];
              coefs[l] = code;
            }
            record(part, r, coefs);
          } else {
            ++part.counts[r];
          }
        }
        for (std::size_t pos = 0; pos < digits.size(); ++pos) {
          auto& a = gram.data();
          const auto& t = digit_terms[pos].data();
          for (std::size_t e = 0; e < a.size(); ++e) a[e] = k.add(a[e], t[e]);
          if (++digits[pos] < p) break;
          digits[pos] = 0;
        }
      }
    });
    report.inspected = total - 1;
  } else {
    if (dim == 0) throw PreconditionError("census over the zero space");
    parts = run_partitioned(config.samples, config.workers,
                            [&](std::uint64_t begin, std::uint64_t end, Partial& part) {
                              std::vector<KElem> coefs(dim);
                              for (std::uint64_t t = begin; t < end; ++t) {
                                auto rng = SplitMix64::stream(config.seed, t);
                                bool nonzero = false;
                                while (!nonzero) {
                                  for (auto& c : coefs) {
                                    c = static_cast<KElem>(rng.below(q));
                                    nonzero = nonzero || c != 0;
                                  }
                                }
                                Matrix<KElem> gram(n, n, 0);
                                for (std::size_t l = 0; l < dim; ++l) accumulate(k, gram, coefs[l], basis[l]);
                                record(part, static_cast<std::uint32_t>(rank(k, std::move(gram))), coefs);
                              }
                            });
    report.inspected = config.samples;
  }

  Partial merged;
  for (const auto& part : parts) {
    for (const auto& [r, c] : part.counts) merged.counts[r] += c;
    for (const auto& [r, w] : part.witnesses) {
      auto it = merged.witnesses.find(r);
      if (it == merged.witnesses.end() || earlier(w, it->second)) merged.witnesses[r] = w;
    }
  }
  report.ranks = merged.counts;
  for (const auto& [r, coefs] : merged.witnesses) {
    std::vector<FieldElement> tuple(spaces.size(), f.zero());
    for (std::size_t l = 0; l < dim; ++l) {
      const std::size_t src = kept[l];
      auto& b = tuple[slot_of[src]];
      b.coords[power_of[src]] = k.add(b.coords[power_of[src]], coefs[l]);
    }
    report.witnesses.emplace(r, std::move(tuple));
  }
  return report;
}

}  // namespace

CensusReport rank_census(const TowerPtr& tower, std::span<const AutomorphismIndex> indices,
                         const CensusConfig& config) {
  if (indices.empty()) throw PreconditionError("census needs at least one automorphism index");
  std::vector<FormSpace> spaces;
  std::vector<std::uint32_t> raw;
  for (auto i : indices) {
    spaces.push_back(space_A(tower, i));
    raw.push_back(i.value % tower->degree());
  }
  return run_census(tower, SpaceKind::kAltA, std::move(raw), spaces, config);
}

CensusReport bil_census(const TowerPtr& tower, std::span<const std::uint32_t> powers, const CensusConfig& config) {
  if (powers.empty()) throw PreconditionError("census needs at least one power");
  std::vector<FormSpace> spaces;
  std::vector<std::uint32_t> raw;
  for (auto t : powers) {
    spaces.push_back(space_B_bil(tower, t));
    raw.push_back(t % tower->degree());
  }
  return run_census(tower, SpaceKind::kBilB, std::move(raw), spaces, config);
}

std::optional<std::uint32_t> census_bound(const TowerField& f, SpaceKind family,
                                          std::span<const std::uint32_t> indices) {
  const std::uint32_t n = f.degree();
  if (indices.empty()) return std::nullopt;
  if (family == SpaceKind::kBilB) {
    std::uint32_t best = n;
    for (std::uint32_t start : indices) {
      std::uint32_t width = 0;
      for (std::uint32_t t : indices) width = std::max(width, (t % n + n - start % n) % n + 1);
      best = std::min(best, width);
    }
    return n - best + 1;
  }
  std::uint32_t k = 0;
  for (std::uint32_t i : indices) {
    const std::uint32_t r = i % n;
    if (r == 0) return std::nullopt;
    k = std::max(k, std::min(r, n - r));
  }
  if (n % 2 == 1) return n - 2 * k + 1;
  if (k <= (n - 2) / 2) return n - 2 * k;
  return std::nullopt;
}

}  // namespace galforms
