#include <gtest/gtest.h>

#include <numeric>

#include "test_util.hpp"

namespace galforms {
namespace {

using testing::el;
using testing::tower;

std::vector<KElem> g_of(std::uint32_t p, std::uint32_t n) { return tower(p, 1, n)->modulus(); }

TEST(TowerConstruction, CanonicalModuli) {
  // Frozen from the brute-force oracle in tests/oracles.
  EXPECT_EQ(g_of(2, 3), (std::vector<KElem>{1, 1, 0, 1}));
  EXPECT_EQ(g_of(2, 4), (std::vector<KElem>{1, 1, 0, 0, 1}));
  EXPECT_EQ(g_of(2, 5), (std::vector<KElem>{1, 0, 1, 0, 0, 1}));
  EXPECT_EQ(g_of(2, 6), (std::vector<KElem>{1, 1, 0, 0, 0, 0, 1}));
  EXPECT_EQ(g_of(2, 7), (std::vector<KElem>{1, 1, 0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(g_of(2, 8), (std::vector<KElem>{1, 1, 0, 1, 1, 0, 0, 0, 1}));
  EXPECT_EQ(g_of(2, 9), (std::vector<KElem>{1, 1, 0, 0, 0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(g_of(3, 2), (std::vector<KElem>{1, 0, 1}));
  EXPECT_EQ(g_of(3, 3), (std::vector<KElem>{1, 2, 0, 1}));
  EXPECT_EQ(g_of(3, 4), (std::vector<KElem>{2, 1, 0, 0, 1}));
  EXPECT_EQ(g_of(3, 5), (std::vector<KElem>{1, 2, 0, 0, 0, 1}));
  EXPECT_EQ(g_of(5, 3), (std::vector<KElem>{1, 1, 0, 1}));
}

TEST(TowerConstruction, Deterministic) {
  for (auto [p, s, n] : {std::tuple{2u, 2u, 3u}, {3u, 2u, 2u}, {2u, 1u, 6u}}) {
    const auto a = make_tower({p, s, n});
    const auto b = make_tower({p, s, n});
    EXPECT_TRUE(a->same_tower(*b));
    EXPECT_EQ(tower_to_json(*a).dump(), tower_to_json(*b).dump());
  }
}

TEST(TowerConstruction, Rejects) {
  EXPECT_THROW(make_tower({4, 1, 3}), PreconditionError);
  EXPECT_THROW(make_tower({2, 0, 3}), PreconditionError);
  EXPECT_THROW(make_tower({2, 1, 1}), PreconditionError);
  EXPECT_THROW(make_tower({2, 1, 40}), BudgetExceeded);
}

TEST(TowerConstruction, BaseModulusIsIrreducible) {
  const auto f = tower(2, 2, 3);
  EXPECT_EQ(f->base().modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_EQ(f->base_order(), 4u);
  EXPECT_EQ(f->order(), 64u);
}

TEST(ElementArithmetic, Identities) {
  const auto f = tower(2, 1, 3);
  for (std::uint64_t i = 0; i < f->order(); ++i) {
    const auto a = f->element_at(i);
    EXPECT_EQ(f->mul(a, f->zero()), f->zero());
    EXPECT_EQ(f->mul(a, f->one()), a);
    EXPECT_EQ(f->index_of(a), i);
    if (!f->is_zero(a)) EXPECT_EQ(f->mul(a, f->inv(a)), f->one());
  }
}

TEST(ElementArithmetic, Gf8Examples) {
  const auto f = tower(2, 1, 3);
  const auto v = f->basis(1);
  const auto v2 = f->mul(v, v);
  EXPECT_EQ(f->mul(v2, v2), el(*f, {0, 1, 1}));
  EXPECT_EQ(f->inv(v), el(*f, {1, 0, 1}));
  EXPECT_EQ(f->inv(f->one()), f->one());
  EXPECT_THROW(f->inv(f->zero()), DomainError);
}

TEST(ElementArithmetic, FieldAxiomsOverGf4Base) {
  const auto f = tower(2, 2, 3);
  for (std::uint64_t i = 0; i < f->order(); i += 3)
    for (std::uint64_t j = 0; j < f->order(); j += 5) {
      const auto a = f->element_at(i);
      const auto b = f->element_at(j);
      const auto c = f->element_at((i * 7 + j) % f->order());
      EXPECT_EQ(f->mul(a, b), f->mul(b, a));
      EXPECT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
      EXPECT_EQ(f->sub(f->add(a, b), b), a);
    }
}

TEST(ElementArithmetic, ContextMismatch) {
  const auto f = tower(2, 1, 3);
  const auto g = tower(2, 1, 4);
  EXPECT_THROW(f->check(g->basis(3)), ContextMismatch);
  EXPECT_THROW(f->check(FieldElement{{2, 0, 0}}), ContextMismatch);
}

TEST(Frobenius, Examples) {
  const auto f = tower(3, 1, 2);
  EXPECT_EQ(frobenius(*f, f->basis(1), {1}), el(*f, {0, 2}));
  const auto g = tower(2, 1, 5);
  for (std::uint64_t i = 0; i < g->order(); ++i) {
    const auto x = g->element_at(i);
    EXPECT_EQ(frobenius(*g, x, {0}), x);
    EXPECT_EQ(frobenius(*g, x, {5}), x);
  }
}

TEST(Frobenius, MatchesPowering) {
  for (auto [p, s, n] : {std::tuple{2u, 1u, 4u}, {2u, 2u, 3u}, {3u, 2u, 2u}, {5u, 1u, 3u}}) {
    const auto f = tower(p, s, n);
    for (std::uint64_t idx = 0; idx < f->order(); idx += 1 + f->order() / 97)
      for (std::uint32_t i = 0; i < n; ++i) {
        const auto x = f->element_at(idx);
        EXPECT_EQ(frobenius(*f, x, {i}), testing::sigma_by_power(*f, x, i));
      }
  }
}

TEST(Frobenius, AutomorphismProperties) {
  const auto f = tower(3, 1, 4);
  SplitMix64 rng(7);
  for (int t = 0; t < 300; ++t) {
    const auto x = random_element(*f, rng);
    const auto y = random_element(*f, rng);
    for (std::uint32_t i = 1; i < 4; ++i) {
      EXPECT_EQ(frobenius(*f, f->add(x, y), {i}), f->add(frobenius(*f, x, {i}), frobenius(*f, y, {i})));
      EXPECT_EQ(frobenius(*f, f->mul(x, y), {i}), f->mul(frobenius(*f, x, {i}), frobenius(*f, y, {i})));
      EXPECT_EQ(frobenius(*f, frobenius(*f, x, {i}), inverse(*f, {i})), x);
    }
  }
}

TEST(Frobenius, OrderViaPrimitiveElement) {
  for (auto [p, s, n] : {std::tuple{2u, 1u, 6u}, {2u, 1u, 8u}, {3u, 1u, 4u}, {2u, 2u, 4u}}) {
    const auto f = tower(p, s, n);
    const auto gamma = primitive_element(*f);
    for (std::uint32_t i = 0; i < n; ++i) {
      std::uint32_t e = 1;
      for (auto z = frobenius(*f, gamma, {i}); z != gamma; z = frobenius(*f, z, {i})) ++e;
      EXPECT_EQ(automorphism_order(*f, {i}), e);
      EXPECT_EQ(e, n / std::gcd(n, i == 0 ? n : i));
    }
  }
}

TEST(Frobenius, PrimitiveElementGeneratesUnits) {
  const auto f = tower(2, 1, 6);
  const auto gamma = primitive_element(*f);
  auto z = gamma;
  std::uint64_t order = 1;
  while (z != f->one()) {
    z = f->mul(z, gamma);
    ++order;
  }
  EXPECT_EQ(order, f->order() - 1);
}

TEST(Trace, Examples) {
  const auto f = tower(2, 1, 3);
  EXPECT_EQ(f->trace_value(f->zero()), 0u);
  EXPECT_EQ(f->trace_value(f->one()), 1u);
  EXPECT_EQ(f->trace_value(f->basis(1)), 0u);
  EXPECT_EQ(trace(*f, f->basis(1)), f->zero());
}

TEST(Trace, LiesInKAndMatchesSum) {
  for (auto [p, s, n] : {std::tuple{2u, 2u, 3u}, {3u, 1u, 3u}, {3u, 2u, 2u}}) {
    const auto f = tower(p, s, n);
    for (std::uint64_t idx = 0; idx < f->order(); ++idx) {
      const auto x = f->element_at(idx);
      const auto t = trace(*f, x);
      EXPECT_EQ(t, f->embed(t.coords[0]));
      EXPECT_EQ(t.coords[0], testing::trace_by_sum(*f, x));
      EXPECT_EQ(f->trace_value(x), t.coords[0]);
    }
  }
}

TEST(Trace, PairingIsNondegenerate) {
  for (auto [p, s, n] : {std::tuple{2u, 1u, 7u}, {2u, 2u, 3u}, {5u, 1u, 3u}}) {
    const auto f = tower(p, s, n);
    EXPECT_EQ(rank(f->base(), f->trace_pairing()), static_cast<Index>(n));
  }
}

TEST(Norm, Examples) {
  const auto f = tower(2, 1, 4);
  const auto v = f->basis(1);
  EXPECT_EQ(norm_to_fixed(*f, f->one(), {2}), f->one());
  EXPECT_EQ(norm_to_fixed(*f, v, {2}), f->mul(v, f->pow(v, 4)));
  EXPECT_EQ(norm_to_fixed(*f, v, {0}), v);
  // Full norm lands in K.
  const auto full = norm_to_fixed(*f, v, {1});
  EXPECT_EQ(full, f->embed(full.coords[0]));
}

TEST(Norm, IsFixedAndMultiplicative) {
  const auto f = tower(3, 1, 4);
  SplitMix64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_element(*f, rng);
    const auto y = random_element(*f, rng);
    for (std::uint32_t d : {1u, 2u}) {
      const auto nx = norm_to_fixed(*f, x, {d});
      EXPECT_EQ(frobenius(*f, nx, {d}), nx);
      EXPECT_EQ(norm_to_fixed(*f, f->mul(x, y), {d}), f->mul(nx, norm_to_fixed(*f, y, {d})));
    }
  }
}

TEST(FixedField, Examples) {
  const auto f = tower(2, 1, 4);
  EXPECT_EQ(fixed_field_basis(*f, {0}).size(), 4u);
  EXPECT_EQ(fixed_field_basis(*f, {1}).size(), 1u);
  EXPECT_EQ(fixed_field_basis(*f, {3}).size(), 1u);
  const auto gf4 = fixed_field_basis(*f, {2});
  ASSERT_EQ(gf4.size(), 2u);
  for (const auto& x : gf4) EXPECT_EQ(f->pow(x, 4), x);
}

TEST(FixedField, DegreeIsGcd) {
  for (auto [p, s, n] : {std::tuple{2u, 1u, 6u}, {2u, 1u, 8u}, {3u, 1u, 4u}, {2u, 2u, 4u}}) {
    const auto f = tower(p, s, n);
    for (std::uint32_t d = 1; d < n; ++d) {
      const auto basis = fixed_field_basis(*f, {d});
      EXPECT_EQ(basis.size(), std::gcd(n, d));
      for (const auto& x : basis) EXPECT_EQ(frobenius(*f, x, {d}), x);
      EXPECT_EQ(span_dimension(*f, basis), basis.size());
    }
  }
}

}  // namespace
}  // namespace galforms
