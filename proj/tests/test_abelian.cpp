#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "invlim/abelian.hpp"
#include "invlim/error.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace invlim;

namespace {

GroupInvariants inv(std::size_t rank, std::vector<BigInt> torsion) { return {rank, std::move(torsion)}; }

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  for (int step = 0; step < 6; ++step) {
    const auto a = testgen::uniform(rng, 0, n - 1);
    auto b = testgen::uniform(rng, 0, n - 2);
    if (b >= a) ++b;
    u.add_row_multiple(a, b, testgen::uniform_ll(rng, -2, 2));
    if (testgen::chance(rng, 0.3)) u.swap_rows(a, b);
  }
  return u;
}

// A valid matrix between two diagonal finite groups: entry (r, k) is a
// multiple of e_r / gcd(e_r, d_k), so d_k times column k vanishes mod e.
IntMatrix random_diagonal_hom(std::mt19937_64& rng, const oracle::FiniteDiagonal& source,
                              const oracle::FiniteDiagonal& target) {
  IntMatrix m(target.orders.size(), source.orders.size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t k = 0; k < m.cols(); ++k) {
      const long long step = target.orders[r] / std::gcd(target.orders[r], source.orders[k]);
      m(r, k) = step * testgen::uniform_ll(rng, 0, target.orders[r]);
    }
  }
  return m;
}

oracle::FiniteDiagonal random_finite(std::mt19937_64& rng) {
  oracle::FiniteDiagonal g;
  const auto k = testgen::uniform(rng, 1, 2);
  std::size_t size = 1;
  for (std::size_t i = 0; i < k; ++i) {
    long long d = testgen::uniform_ll(rng, 1, 8);
    if (size * static_cast<std::size_t>(d) > 64) d = 1;
    size *= static_cast<std::size_t>(d);
    g.orders.push_back(d);
  }
  return g;
}

}  // namespace

TEST(Group, Invariants) {
  EXPECT_EQ(group_invariants(FgAbGroup::free(1)), inv(1, {}));
  EXPECT_EQ(group_invariants(FgAbGroup(1, IntMatrix{{8}})), inv(0, {8}));
  EXPECT_EQ(group_invariants(FgAbGroup(2, IntMatrix{{2, 0}, {0, 4}})), inv(0, {2, 4}));
  EXPECT_EQ(group_invariants(FgAbGroup(2, IntMatrix{{2, 0}, {0, 3}})), inv(0, {6}));
  EXPECT_EQ(group_invariants(FgAbGroup::trivial()), inv(0, {}));
  EXPECT_EQ(group_invariants(FgAbGroup(2, IntMatrix{{1, 1}})).to_string(), "free rank 1, torsion []");
  EXPECT_EQ(group_invariants(FgAbGroup::diagonal({2, 4, 0})).to_string(), "free rank 1, torsion [2,4]");
}

TEST(Group, WidthMismatch) {
  try {
    FgAbGroup(2, IntMatrix{{1, 2, 3}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(Hom, RelatorsMustMapToZero) {
  try {
    AbHom(FgAbGroup::cyclic(2), FgAbGroup::cyclic(0), IntMatrix{{1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidHom);
  }
  EXPECT_NO_THROW(AbHom(FgAbGroup::cyclic(0), FgAbGroup::cyclic(2), IntMatrix{{1}}));
}

TEST(Hom, TimesTwo) {
  AbHom f(FgAbGroup::free(1), FgAbGroup::free(1), IntMatrix{{2}});
  EXPECT_TRUE(group_invariants(hom_kernel(f)).trivial());
  EXPECT_EQ(group_invariants(hom_cokernel(f)), inv(0, {2}));
  EXPECT_EQ(group_invariants(hom_image(f)), inv(1, {}));
  EXPECT_TRUE(is_injective(f));
  EXPECT_FALSE(is_surjective(f));
}

TEST(Hom, ZeroMap) {
  auto f = AbHom::zero(FgAbGroup::free(1), FgAbGroup::free(1));
  EXPECT_EQ(group_invariants(hom_kernel(f)), inv(1, {}));
  EXPECT_EQ(group_invariants(hom_cokernel(f)), inv(1, {}));
  EXPECT_TRUE(is_zero_map(f));
}

TEST(Hom, Projection) {
  AbHom f(FgAbGroup::free(2), FgAbGroup::free(1), IntMatrix{{1, 0}});
  EXPECT_EQ(group_invariants(hom_kernel(f)), inv(1, {}));
  EXPECT_TRUE(group_invariants(hom_cokernel(f)).trivial());
  EXPECT_TRUE(is_surjective(f));
}

TEST(Hom, ComposeChecksEndpoints) {
  AbHom f(FgAbGroup::free(2), FgAbGroup::free(1), IntMatrix{{1, 0}});
  EXPECT_THROW(compose(f, f), Error);
  AbHom g(FgAbGroup::free(1), FgAbGroup::cyclic(3), IntMatrix{{1}});
  EXPECT_EQ(compose(g, f).matrix(), (IntMatrix{{1, 0}}));
}

TEST(Exactness, Examples) {
  const auto z = FgAbGroup::free(1);
  const auto z2 = FgAbGroup::cyclic(2);
  EXPECT_TRUE(is_exact_at(AbHom::identity(z), AbHom::zero(z, FgAbGroup::trivial())).exact());
  EXPECT_TRUE(is_exact_at(AbHom(z, z, IntMatrix{{2}}), AbHom(z, z2, IntMatrix{{1}})).exact());
  auto r = is_exact_at(AbHom(z, z, IntMatrix{{4}}), AbHom(z, z2, IntMatrix{{1}}));
  EXPECT_TRUE(r.composition_zero);
  EXPECT_FALSE(r.kernel_in_image);
  EXPECT_FALSE(r.exact());
  auto nonzero = is_exact_at(AbHom::identity(z), AbHom::identity(z));
  EXPECT_FALSE(nonzero.composition_zero);
}

TEST(GroupProperty, InvariantsSurviveUnimodularChanges) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto gens = testgen::uniform(rng, 1, 4);
    const auto rels = testgen::uniform(rng, 0, 4);
    auto r = testgen::random_matrix(rng, rels, gens, -6, 6);
    auto changed = random_unimodular(rng, rels) * r * random_unimodular(rng, gens);
    EXPECT_EQ(group_invariants(FgAbGroup(gens, r)), group_invariants(FgAbGroup(gens, changed)));
  }
}

TEST(GroupProperty, RankNullity) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = testgen::uniform(rng, 1, 4);
    const auto m = testgen::uniform(rng, 1, 4);
    AbHom f(FgAbGroup::free(n), FgAbGroup::free(m), testgen::random_matrix(rng, m, n, -3, 3));
    EXPECT_EQ(group_invariants(hom_kernel(f)).free_rank + group_invariants(hom_image(f)).free_rank, n);
  }
}

TEST(GroupProperty, ExactnessMatchesEnumeration) {
  std::mt19937_64 rng(43);
  int exact_cases = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto a = random_finite(rng);
    auto b = random_finite(rng);
    auto c = random_finite(rng);
    auto f = random_diagonal_hom(rng, a, b);
    auto g = random_diagonal_hom(rng, b, c);
    auto as_group = [](const oracle::FiniteDiagonal& d) {
      std::vector<long long> o = d.orders;
      return FgAbGroup::diagonal(o);
    };
    AbHom hf(as_group(a), as_group(b), f);
    AbHom hg(as_group(b), as_group(c), g);
    const bool expected = oracle::exact_by_enumeration(a, b, c, f, g);
    exact_cases += expected;
    EXPECT_EQ(is_exact_at(hf, hg).exact(), expected) << "trial " << trial;
  }
  EXPECT_GT(exact_cases, 0);
}

TEST(GroupProperty, OrderMatchesEnumeratedImage) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_finite(rng);
    auto b = random_finite(rng);
    auto f = random_diagonal_hom(rng, a, b);
    AbHom h(FgAbGroup::diagonal(a.orders), FgAbGroup::diagonal(b.orders), f);
    std::vector<std::vector<long long>> image;
    for (const auto& x : a.elements()) image.push_back(oracle::apply(f, b, x));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    auto im = group_invariants(hom_image(h));
    ASSERT_EQ(im.free_rank, 0u);
    EXPECT_EQ(oracle::order_of(im), BigInt(image.size()));
    auto ker = group_invariants(hom_kernel(h));
    EXPECT_EQ(oracle::order_of(ker) * BigInt(image.size()), BigInt(a.size()));
  }
}
