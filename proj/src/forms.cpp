#include "galforms/forms.hpp"

#include <unordered_set>

namespace galforms {

namespace {

void require_same_tower(const TowerField& a, const TowerField& b) {
  if (&a != &b && !a.same_tower(b)) throw ContextMismatch("forms live over different towers");
}

// Rows are the K-coordinates of the given elements.
Matrix<KElem> rows_of(const TowerField& f, const std::vector<FieldElement>& xs) {
  const Index n = f.degree();
  Matrix<KElem> m(static_cast<Index>(xs.size()), n, 0);
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < n; ++c) m(r, c) = xs[static_cast<std::size_t>(r)].coords[static_cast<std::size_t>(c)];
  return m;
}

}  // namespace

GramForm::GramForm(TowerPtr tower, Matrix<KElem> entries, Provenance provenance)
    : tower_(std::move(tower)), entries_(std::move(entries)), provenance_(std::move(provenance)) {
  const Index n = tower_->degree();
  if (entries_.rows() != n || entries_.cols() != n) throw ContextMismatch("Gram matrix is not n×n");
  for (KElem e : entries_.data())
    if (e >= tower_->base_order()) throw ContextMismatch("Gram entry is not an element of K");
}

GramForm GramForm::zero(TowerPtr tower) {
  const Index n = tower->degree();
  return GramForm(std::move(tower), Matrix<KElem>(n, n, 0));
}

bool GramForm::is_alternating() const {
  const auto& k = tower_->base();
  for (Index j = 0; j < entries_.rows(); ++j) {
    if (entries_(j, j) != 0) return false;
    for (Index c = j + 1; c < entries_.cols(); ++c)
      if (entries_(j, c) != k.neg(entries_(c, j))) return false;
  }
  return true;
}

bool GramForm::is_zero() const {
  for (KElem e : entries_.data())
    if (e != 0) return false;
  return true;
}

bool operator==(const GramForm& a, const GramForm& b) {
  return a.tower().same_tower(b.tower()) && a.entries() == b.entries();
}

GramForm operator+(const GramForm& a, const GramForm& b) {
  require_same_tower(a.tower(), b.tower());
  const auto& k = a.tower().base();
  Matrix<KElem> m = a.entries();
  for (std::size_t i = 0; i < m.data().size(); ++i) m.data()[i] = k.add(m.data()[i], b.entries().data()[i]);
  return GramForm(a.tower_ptr(), std::move(m));
}

GramForm operator-(const GramForm& a, const GramForm& b) {
  require_same_tower(a.tower(), b.tower());
  const auto& k = a.tower().base();
  Matrix<KElem> m = a.entries();
  for (std::size_t i = 0; i < m.data().size(); ++i) m.data()[i] = k.sub(m.data()[i], b.entries().data()[i]);
  return GramForm(a.tower_ptr(), std::move(m));
}

GramForm scaled(KElem c, const GramForm& a) {
  const auto& k = a.tower().base();
  Matrix<KElem> m = a.entries();
  for (auto& e : m.data()) e = k.mul(c, e);
  return GramForm(a.tower_ptr(), std::move(m));
}

std::string_view to_string(RankBranch branch) {
  switch (branch) {
    case RankBranch::kZeroForm: return "zero-form";
    case RankBranch::kOddConstant: return "odd-constant";
    case RankBranch::kInvolution: return "involution";
    case RankBranch::kEvenSolvable: return "even-solvable";
    case RankBranch::kEvenNonsolvable: return "even-nonsolvable";
    case RankBranch::kInvertible: return "invertible";
  }
  return "unknown";
}

GramForm build_alt_form(const TowerPtr& tower, const FieldElement& b, AutomorphismIndex i) {
  const TowerField& f = *tower;
  f.check(b);
  const std::uint32_t n = f.degree();
  if (i.value % n == 0) throw PreconditionError("f_{b,σ^i} needs a non-identity automorphism (i ≢ 0 mod n)");
  const auto& k = f.base();

  // P(j, c) = Tr(b v^j σ^i(v^c)) and f(v^j, v^c) = P(j, c) - P(c, j).
  std::vector<FieldElement> bv;
  bv.reserve(n);
  for (std::uint32_t j = 0; j < n; ++j) bv.push_back(f.mul(b, f.basis(j)));
  const Matrix<KElem> wt = multiply(k, rows_of(f, bv), f.trace_pairing());
  const Matrix<KElem> p = multiply(k, wt, f.frobenius_matrix(i.value));

  Matrix<KElem> g(n, n, 0);
  for (Index j = 0; j < n; ++j)
    for (Index c = j + 1; c < n; ++c) {
      g(j, c) = k.sub(p(j, c), p(c, j));
      g(c, j) = k.neg(g(j, c));
    }
  return GramForm(tower, std::move(g), AltProvenance{b, {i.value % n}});
}

GramForm build_general_form(const TowerPtr& tower, std::span<const FieldElement> b_list) {
  const TowerField& f = *tower;
  const std::uint32_t n = f.degree();
  if (b_list.size() != n) throw PreconditionError("general form needs exactly n coefficients");
  for (const auto& b : b_list) f.check(b);
  const auto& k = f.base();

  // Row j: u_j = Σ_t b_t σ^t(v^j); entry (j, c) = Tr(u_j v^c).
  std::vector<FieldElement> u(n, f.zero());
  for (std::uint32_t t = 0; t < n; ++t) {
    if (f.is_zero(b_list[t])) continue;
    const auto& sigma = f.frobenius_matrix(t);
    for (std::uint32_t j = 0; j < n; ++j) {
      FieldElement col = f.zero();
      for (std::uint32_t r = 0; r < n; ++r) col.coords[r] = sigma(r, j);
      u[j] = f.add(u[j], f.mul(b_list[t], col));
    }
  }
  Matrix<KElem> g = multiply(k, rows_of(f, u), f.trace_pairing());
  return GramForm(tower, std::move(g),
                  GeneralProvenance{std::vector<FieldElement>(b_list.begin(), b_list.end())});
}

KElem evaluate(const GramForm& form, const FieldElement& x, const FieldElement& y) {
  const TowerField& f = form.tower();
  f.check(x);
  f.check(y);
  const auto& k = f.base();
  const auto gy = multiply(k, form.entries(), std::span<const KElem>(y.coords));
  KElem acc = 0;
  for (std::size_t j = 0; j < gy.size(); ++j) acc = k.add(acc, k.mul(x.coords[j], gy[j]));
  return acc;
}

RankReport rank(const GramForm& form) {
  const TowerField& f = form.tower();
  RankReport report;
  // x is in the radical iff x^T G = 0, i.e. G^T x = 0.
  for (auto& v : null_space(f.base(), form.entries().transpose()))
    report.radical_basis.push_back(FieldElement{std::move(v)});
  report.rank = f.degree() - static_cast<std::uint32_t>(report.radical_basis.size());

  if (const auto* alt = std::get_if<AltProvenance>(&form.provenance())) {
    report.predicted = f.is_zero(alt->b) ? PredictedRank{0, RankBranch::kZeroForm}
                                         : predicted_rank(f, alt->b, alt->i);
  } else if (const auto* gen = std::get_if<GeneralProvenance>(&form.provenance())) {
    std::size_t nonzero = 0;
    for (const auto& b : gen->b) nonzero += f.is_zero(b) ? 0 : 1;
    if (nonzero == 0) report.predicted = PredictedRank{0, RankBranch::kZeroForm};
    if (nonzero == 1) report.predicted = PredictedRank{f.degree(), RankBranch::kInvertible};
  }
  return report;
}

bool radical_contains(const TowerField& f, const FieldElement& b, AutomorphismIndex i, const FieldElement& x) {
  f.check(b);
  f.check(x);
  if (i.value % f.degree() == 0) throw PreconditionError("radical criterion needs i ≢ 0 mod n");
  const FieldElement lhs = frobenius(f, f.mul(b, x), inverse(f, i));
  const FieldElement rhs = f.mul(b, frobenius(f, x, i));
  return lhs == rhs;
}

PredictedRank predicted_rank(const TowerField& f, const FieldElement& b, AutomorphismIndex i) {
  f.check(b);
  const std::uint32_t n = f.degree();
  if (i.value % n == 0) throw PreconditionError("predicted_rank needs i ≢ 0 mod n");
  if (f.is_zero(b)) throw PreconditionError("predicted_rank needs b != 0");

  const std::uint32_t e = automorphism_order(f, i);
  if (e % 2 == 1) return {n - n / e, RankBranch::kOddConstant};
  const FieldElement tau_b = frobenius(f, b, i);
  if (e == 2) {
    if (tau_b == b) return {0, RankBranch::kZeroForm};
    return {n, RankBranch::kInvolution};
  }
  const std::uint32_t r = e / 2;
  const FieldElement twist = f.mul(tau_b, f.inv(b));
  const AutomorphismIndex square{(2 * i.value) % n};
  if (norm_to_fixed(f, twist, square) == f.one()) return {n - n / r, RankBranch::kEvenSolvable};
  return {n, RankBranch::kEvenNonsolvable};
}

TwistCounts count_twist_classes(const TowerField& f, AutomorphismIndex i, std::uint64_t size_guard) {
  if (automorphism_order(f, i) % 2 != 0)
    throw PreconditionError("twist-class count needs σ^i of even order");
  if (f.order() > size_guard) throw BudgetExceeded("|L| exceeds the size guard for an exhaustive count");

  // Walk L* as powers of a generator so inverses come for free.
  const FieldElement gen = primitive_element(f);
  const FieldElement gen_inv = f.inv(gen);
  const AutomorphismIndex square{(2 * i.value) % f.degree()};
  std::unordered_set<std::uint64_t> first;
  std::unordered_set<std::uint64_t> second;
  FieldElement x = f.one();
  FieldElement x_inv = f.one();
  for (std::uint64_t step = 0; step + 1 < f.order(); ++step) {
    first.insert(f.index_of(f.mul(frobenius(f, x, i), x_inv)));
    second.insert(f.index_of(f.mul(frobenius(f, x, square), x_inv)));
    x = f.mul(x, gen);
    x_inv = f.mul(x_inv, gen_inv);
  }
  return {first.size(), second.size()};
}

}  // namespace galforms
