#include "galforms/field_tower.hpp"

#include <numeric>
#include <string>

#include "galforms/poly.hpp"
#include "galforms/prime_field.hpp"

namespace galforms {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw PreconditionError("characteristic " + std::to_string(p) + " is not prime");
}

PrimeField::Scalar PrimeField::inv(Scalar a) const {
  if (a % p_ == 0) throw DomainError("inverse of zero in GF(p)");
  // a^{p-2}
  std::uint64_t result = 1;
  std::uint64_t base = a % p_;
  std::uint64_t e = p_ - 2;
  while (e > 0) {
    if (e & 1U) result = result * base % p_;
    base = base * base % p_;
    e >>= 1U;
  }
  return static_cast<Scalar>(result);
}

namespace {

// Overflow-checked base^exp; returns false when the result exceeds limit.
bool checked_power(std::uint64_t base, std::uint64_t exp, std::uint64_t limit, std::uint64_t& out) {
  std::uint64_t acc = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (acc > limit / base) return false;
    acc *= base;
  }
  out = acc;
  return acc <= limit;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d != 0) continue;
    out.push_back(d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) out.push_back(m);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// BaseField

BaseField::BaseField(std::uint32_t p, std::vector<std::uint32_t> h)
    : p_(p), s_(static_cast<std::uint32_t>(h.size()) - 1), q_(1), h_(std::move(h)) {
  if (!is_prime(p_)) throw PreconditionError("characteristic " + std::to_string(p_) + " is not prime");
  if (h_.size() < 2 || h_.back() != 1) throw PreconditionError("base modulus must be monic of degree >= 1");
  for (std::uint32_t i = 0; i < s_; ++i) {
    pow_p_.push_back(q_);
    q_ *= p_;
  }

  const PrimeField fp(p_);
  const poly::Poly<std::uint32_t> hp(h_.begin(), h_.end());
  auto slow_mul = [&](Scalar a, Scalar b) {
    const auto da = digits(a);
    const auto db = digits(b);
    auto prod = poly::mulmod(fp, poly::Poly<std::uint32_t>(da.begin(), da.end()),
                             poly::Poly<std::uint32_t>(db.begin(), db.end()), hp);
    prod.resize(s_, 0);
    return from_digits(prod);
  };
  auto slow_pow = [&](Scalar a, std::uint64_t e) {
    Scalar r = 1;
    while (e > 0) {
      if (e & 1U) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1U;
    }
    return r;
  };

  const std::uint64_t group = q_ - 1;
  const auto factors = prime_factors(group);
  Scalar generator = 0;
  for (Scalar cand = 1; cand < q_ && generator == 0; ++cand) {
    bool primitive = true;
    for (auto l : factors) {
      if (slow_pow(cand, group / l) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) generator = cand;
  }
  if (generator == 0) throw Error("base field modulus is not irreducible");

  exp_.resize(group);
  log_.assign(q_, 0);
  Scalar x = 1;
  for (std::uint64_t e = 0; e < group; ++e) {
    exp_[e] = x;
    log_[x] = static_cast<std::uint32_t>(e);
    x = slow_mul(x, generator);
  }
}

BaseField::Scalar BaseField::add(Scalar a, Scalar b) const {
  if (p_ == 2) return a ^ b;
  if (s_ == 1) return (a + b) % p_;
  Scalar out = 0;
  for (std::uint32_t i = 0; i < s_; ++i) {
    out += ((a % p_ + b % p_) % p_) * pow_p_[i];
    a /= p_;
    b /= p_;
  }
  return out;
}

BaseField::Scalar BaseField::neg(Scalar a) const {
  if (p_ == 2) return a;
  if (s_ == 1) return a == 0 ? 0 : p_ - a;
  Scalar out = 0;
  for (std::uint32_t i = 0; i < s_; ++i) {
    out += ((p_ - a % p_) % p_) * pow_p_[i];
    a /= p_;
  }
  return out;
}

BaseField::Scalar BaseField::sub(Scalar a, Scalar b) const { return add(a, neg(b)); }

BaseField::Scalar BaseField::inv(Scalar a) const {
  if (a == 0) throw DomainError("inverse of zero in K");
  const std::uint32_t group = q_ - 1;
  return exp_[(group - log_[a]) % group];
}

BaseField::Scalar BaseField::from_integer(std::int64_t k) const {
  const auto p = static_cast<std::int64_t>(p_);
  return static_cast<Scalar>(((k % p) + p) % p);
}

std::vector<std::uint32_t> BaseField::digits(Scalar a) const {
  std::vector<std::uint32_t> d(s_);
  for (auto& x : d) {
    x = a % p_;
    a /= p_;
  }
  return d;
}

BaseField::Scalar BaseField::from_digits(std::span<const std::uint32_t> d) const {
  if (d.size() != s_) throw ContextMismatch("K-element has " + std::to_string(d.size()) +
                                            " digits, expected " + std::to_string(s_));
  Scalar out = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] >= p_) throw ContextMismatch("K-element digit out of range");
    out += d[i] * pow_p_[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// TowerField

TowerField::TowerField(TowerParams params, std::vector<std::uint32_t> h, std::vector<KElem> g)
    : params_(params), base_(params.p, std::move(h)), g_(std::move(g)), order_(1) {
  const std::uint32_t n = params_.n;
  if (g_.size() != n + 1 || g_.back() != 1) throw PreconditionError("modulus of L must be monic of degree n");
  for (std::uint32_t j = 0; j < n; ++j) order_ *= base_.order();

  powers_.reserve(n);
  for (std::uint32_t j = 0; j < n; ++j) {
    FieldElement e = zero();
    e.coords[j] = 1;
    powers_.push_back(std::move(e));
  }

  // σ(v) = v^q and σ(v^j) = σ(v)^j since σ fixes K.
  Matrix<KElem> sigma1(n, n, 0);
  const FieldElement sigma_v = pow(basis(1 % n), base_.order());
  FieldElement col = one();
  for (std::uint32_t j = 0; j < n; ++j) {
    for (std::uint32_t r = 0; r < n; ++r) sigma1(r, j) = col.coords[r];
    col = mul(col, sigma_v);
  }
  Matrix<KElem> identity(n, n, 0);
  for (std::uint32_t j = 0; j < n; ++j) identity(j, j) = 1;
  sigma_.push_back(identity);
  for (std::uint32_t i = 1; i <= n; ++i) {
    auto next = multiply(base_, sigma1, sigma_.back());
    if (i < n && next == identity) throw Error("Frobenius has order below n; modulus is reducible");
    if (i == n && next != identity) throw Error("Frobenius does not have order n");
    if (i < n) sigma_.push_back(std::move(next));
  }

  trace_of_power_.resize(n);
  for (std::uint32_t j = 0; j < n; ++j) {
    KElem t = 0;
    for (std::uint32_t i = 0; i < n; ++i) t = base_.add(t, sigma_[i](0, j));
    trace_of_power_[j] = t;
  }

  pairing_ = Matrix<KElem>(n, n, 0);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t c = a; c < n; ++c) {
      const KElem t = trace_value(mul(basis(a), basis(c)));
      pairing_(a, c) = t;
      pairing_(c, a) = t;
    }
}

FieldElement TowerField::zero() const { return FieldElement{std::vector<KElem>(params_.n, 0)}; }

FieldElement TowerField::one() const { return embed(1); }

FieldElement TowerField::embed(KElem k) const {
  FieldElement e = zero();
  e.coords[0] = k;
  return e;
}

bool TowerField::is_zero(const FieldElement& a) const {
  for (KElem c : a.coords)
    if (c != 0) return false;
  return true;
}

bool TowerField::is_valid(const FieldElement& a) const {
  if (a.coords.size() != params_.n) return false;
  for (KElem c : a.coords)
    if (c >= base_.order()) return false;
  return true;
}

void TowerField::check(const FieldElement& a) const {
  if (!is_valid(a)) throw ContextMismatch("element does not belong to this tower");
}

FieldElement TowerField::add(const FieldElement& a, const FieldElement& b) const {
  FieldElement out = a;
  for (std::size_t j = 0; j < out.coords.size(); ++j) out.coords[j] = base_.add(out.coords[j], b.coords[j]);
  return out;
}

FieldElement TowerField::sub(const FieldElement& a, const FieldElement& b) const {
  FieldElement out = a;
  for (std::size_t j = 0; j < out.coords.size(); ++j) out.coords[j] = base_.sub(out.coords[j], b.coords[j]);
  return out;
}

FieldElement TowerField::neg(const FieldElement& a) const {
  FieldElement out = a;
  for (auto& c : out.coords) c = base_.neg(c);
  return out;
}

FieldElement TowerField::scale(KElem k, const FieldElement& a) const {
  FieldElement out = a;
  for (auto& c : out.coords) c = base_.mul(k, c);
  return out;
}

FieldElement TowerField::mul(const FieldElement& a, const FieldElement& b) const {
  const std::size_t n = params_.n;
  std::vector<KElem> prod(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coords[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      prod[i + j] = base_.add(prod[i + j], base_.mul(a.coords[i], b.coords[j]));
  }
  // v^n = -(g_0 + g_1 v + ... + g_{n-1} v^{n-1})
  for (std::size_t d = 2 * n - 2; d >= n; --d) {
    const KElem c = prod[d];
    if (c == 0) continue;
    for (std::size_t k = 0; k < n; ++k) prod[d - n + k] = base_.sub(prod[d - n + k], base_.mul(c, g_[k]));
  }
  prod.resize(n);
  return FieldElement{std::move(prod)};
}

FieldElement TowerField::pow(FieldElement a, std::uint64_t e) const {
  FieldElement result = one();
  while (e > 0) {
    if (e & 1U) result = mul(result, a);
    e >>= 1U;
    if (e > 0) a = mul(a, a);
  }
  return result;
}

FieldElement TowerField::inv(const FieldElement& a) const {
  if (is_zero(a)) throw DomainError("inverse of zero in L");
  return pow(a, order_ - 2);
}

KElem TowerField::trace_value(const FieldElement& x) const {
  KElem t = 0;
  for (std::uint32_t j = 0; j < params_.n; ++j) t = base_.add(t, base_.mul(x.coords[j], trace_of_power_[j]));
  return t;
}

FieldElement TowerField::element_at(std::uint64_t index) const {
  FieldElement e = zero();
  for (auto& c : e.coords) {
    c = static_cast<KElem>(index % base_.order());
    index /= base_.order();
  }
  return e;
}

std::uint64_t TowerField::index_of(const FieldElement& x) const {
  std::uint64_t index = 0;
  for (std::size_t j = x.coords.size(); j-- > 0;) index = index * base_.order() + x.coords[j];
  return index;
}

bool TowerField::same_tower(const TowerField& other) const {
  return params_ == other.params_ && base_.modulus() == other.base_.modulus() && g_ == other.g_;
}

// ---------------------------------------------------------------------------

TowerPtr make_tower(const TowerParams& params, std::uint64_t size_guard) {
  if (!is_prime(params.p)) throw PreconditionError("p = " + std::to_string(params.p) + " is not prime");
  if (params.s < 1) throw PreconditionError("s must be at least 1");
  if (params.n < 2) throw PreconditionError("n must be at least 2");
  std::uint64_t size = 0;
  if (!checked_power(params.p, std::uint64_t{params.s} * params.n, size_guard, size))
    throw BudgetExceeded("|L| = " + std::to_string(params.p) + "^" +
                         std::to_string(std::uint64_t{params.s} * params.n) + " exceeds the size guard " +
                         std::to_string(size_guard));

  const PrimeField fp(params.p);
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < params.s; ++i) q *= params.p;

  std::vector<std::uint32_t> h;
  for (std::uint64_t code = 0; code < q; ++code) {
    poly::Poly<std::uint32_t> cand(params.s + 1, 0);
    std::uint64_t rest = code;
    for (std::uint32_t i = 0; i < params.s; ++i) {
      cand[i] = static_cast<std::uint32_t>(rest % params.p);
      rest /= params.p;
    }
    cand[params.s] = 1;
    if (poly::is_irreducible(fp, cand, params.p)) {
      h.assign(cand.begin(), cand.end());
      break;
    }
  }

  const BaseField k(params.p, h);
  std::vector<KElem> g;
  std::uint64_t candidates = 1;
  for (std::uint32_t i = 0; i < params.n; ++i) candidates *= q;
  for (std::uint64_t code = 0; code < candidates; ++code) {
    poly::Poly<KElem> cand(params.n + 1, 0);
    std::uint64_t rest = code;
    for (std::uint32_t i = 0; i < params.n; ++i) {
      cand[i] = static_cast<KElem>(rest % q);
      rest /= q;
    }
    cand[params.n] = 1;
    if (poly::is_irreducible(k, cand, q)) {
      g.assign(cand.begin(), cand.end());
      break;
    }
  }
  return std::make_shared<const TowerField>(params, std::move(h), std::move(g));
}

std::uint32_t automorphism_order(const TowerField& f, AutomorphismIndex i) {
  const std::uint32_t n = f.degree();
  return n / std::gcd(n, i.value % n);
}

AutomorphismIndex inverse(const TowerField& f, AutomorphismIndex i) {
  const std::uint32_t n = f.degree();
  return {(n - i.value % n) % n};
}

FieldElement frobenius(const TowerField& f, const FieldElement& x, AutomorphismIndex i) {
  return FieldElement{multiply(f.base(), f.frobenius_matrix(i.value), std::span<const KElem>(x.coords))};
}

FieldElement trace(const TowerField& f, const FieldElement& x) { return f.embed(f.trace_value(x)); }

FieldElement norm_to_fixed(const TowerField& f, const FieldElement& x, AutomorphismIndex d) {
  const std::uint32_t ord = automorphism_order(f, d);
  FieldElement result = x;
  FieldElement conj = x;
  for (std::uint32_t j = 1; j < ord; ++j) {
    conj = frobenius(f, conj, d);
    result = f.mul(result, conj);
  }
  return result;
}

std::vector<FieldElement> fixed_field_basis(const TowerField& f, AutomorphismIndex d) {
  const auto& k = f.base();
  Matrix<KElem> m = f.frobenius_matrix(d.value);
  for (Index j = 0; j < m.rows(); ++j) m(j, j) = k.sub(m(j, j), k.one());
  std::vector<FieldElement> out;
  for (auto& v : null_space(k, std::move(m))) out.push_back(FieldElement{std::move(v)});
  return out;
}

}  // namespace galforms

namespace galforms {

FieldElement primitive_element(const TowerField& f) {
  const std::uint64_t group = f.order() - 1;
  const auto factors = prime_factors(group);
  for (std::uint64_t idx = 1; idx < f.order(); ++idx) {
    const FieldElement cand = f.element_at(idx);
    bool primitive = true;
    for (auto l : factors)
      if (f.pow(cand, group / l) == f.one()) {
        primitive = false;
        break;
      }
    if (primitive) return cand;
  }
  throw Error("L* has no generator; the tower is malformed");
}

}  // namespace galforms
