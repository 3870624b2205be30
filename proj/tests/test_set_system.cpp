#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "invlim/error.hpp"
#include "invlim/henkin.hpp"
#include "invlim/set_system.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace invlim;

namespace {

Poset wedge() { return Poset::build({"a", "b", "c"}, {{"c", "a"}, {"c", "b"}}); }

SetSystem constant01(std::size_t length) {
  auto p = chain_poset(length);
  std::vector<CoverBond> bonds;
  for (const auto& [lo, hi] : p.covers()) bonds.push_back({lo, hi, {0, 1}});
  return SetSystem::build(p, std::vector<std::vector<std::string>>(length, {"0", "1"}), bonds);
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::ParseError;
}

std::vector<std::string> range_labels(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t x = 0; x < n; ++x) v.push_back(std::to_string(x));
  return v;
}

}  // namespace

TEST(SetSystem, ConstantSystemIsValid) {
  auto s = constant01(3);
  EXPECT_EQ(s.bond(0, 2), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(s.bond(1, 1), (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(is_surjective(s).surjective);
  EXPECT_EQ(limit_threads(s).size(), 2u);
}

TEST(SetSystem, MissingBondOnWedge) {
  EXPECT_EQ(kind_of([] {
              SetSystem::from_labels(wedge(), {{"a", {"*"}}, {"b", {"*"}}, {"c", {"0", "1"}}},
                                     {{"b", "c", {{"*", "0"}}}});
            }),
            ErrorKind::MissingBond);
}

TEST(SetSystem, FunctorialityViolationIsDetected) {
  // 1 <= 2 <= 3 with the composite bond declared inconsistently.
  auto p = Poset::build({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}, {"1", "3"}});
  std::vector<std::vector<std::string>> carriers(3, {"0", "1"});
  std::vector<CoverBond> bonds = {{0, 1, {0, 1}}, {1, 2, {0, 1}}, {0, 2, {1, 0}}};
  EXPECT_EQ(kind_of([&] { SetSystem::build(p, carriers, bonds); }), ErrorKind::FunctorialityViolation);
}

TEST(SetSystem, NotFunctionAndNotComparable) {
  auto p = chain_poset(2);
  EXPECT_EQ(kind_of([&] { SetSystem::build(p, {{"0"}, {"0", "1"}}, {{0, 1, {0}}}); }), ErrorKind::NotFunction);
  EXPECT_EQ(kind_of([&] { SetSystem::build(p, {{"0"}, {"0"}}, {{0, 1, {3}}}); }), ErrorKind::NotFunction);
  EXPECT_EQ(kind_of([&] { SetSystem::build(p, {{"0"}, {"0"}}, {{1, 0, {0}}}); }), ErrorKind::NotComparable);
}

TEST(SetSystem, SurjectivityFailure) {
  auto s = SetSystem::build(chain_poset(2), {{"0", "1"}, {"0"}}, {{0, 1, {0}}});
  auto r = is_surjective(s);
  EXPECT_FALSE(r.surjective);
  ASSERT_TRUE(r.first_failure);
  EXPECT_EQ(*r.first_failure, (std::pair<ElementId, ElementId>{0, 1}));
}

TEST(SetSystem, WedgeLimitHasOneThread) {
  auto s = SetSystem::from_labels(wedge(), {{"a", {"*"}}, {"b", {"*"}}, {"c", {"0", "1"}}},
                                  {{"a", "c", {{"*", "0"}}}, {"b", "c", {{"*", "0"}}}});
  auto threads = limit_threads(s);
  ASSERT_EQ(threads.size(), 1u);
  EXPECT_EQ(s.carrier(s.base().id("c"))[threads[0].values[s.base().id("c")]], "0");
  EXPECT_EQ(threads, oracle::brute_force_threads(s));
}

TEST(SetSystem, BudgetExceeded) {
  auto s = constant01(1);
  // 12 disjoint copies of {0,1}: 4096 threads.
  std::vector<std::string> labels;
  for (int i = 0; i < 12; ++i) labels.push_back("p" + std::to_string(i));
  auto antichain = Poset::build(labels, {});
  auto big = SetSystem::build(antichain, std::vector<std::vector<std::string>>(12, {"0", "1"}), {});
  EXPECT_EQ(limit_threads(big).size(), 4096u);
  EXPECT_EQ(kind_of([&] { limit_threads(big, 100); }), ErrorKind::BudgetExceeded);
}

TEST(SetSystem, ThreadFromTopNeedsNoSurjectivity) {
  auto s = SetSystem::build(chain_poset(2), {{"0", "1"}, {"0"}}, {{0, 1, {0}}});
  auto t = thread_from_top(s);
  EXPECT_EQ(t.values, (std::vector<std::size_t>{0, 0}));
  EXPECT_TRUE(is_thread(s, t));
  auto w = SetSystem::from_labels(wedge(), {{"a", {"*"}}, {"b", {"*"}}, {"c", {"0"}}},
                                  {{"a", "c", {{"*", "0"}}}, {"b", "c", {{"*", "0"}}}});
  EXPECT_EQ(kind_of([&] { thread_from_top(w); }), ErrorKind::NoMaximum);
}

TEST(Tower, ClippedDecrementThread) {
  auto t = clipped_decrement_tower(4, 3);
  auto thread = thread_from_top(t, 0);
  EXPECT_EQ(thread.values, (std::vector<std::size_t>{0, 0, 0, 0}));
  EXPECT_TRUE(is_thread(t.system(), thread));
}

TEST(Tower, NonSurjectiveTowerRefusesToWalk) {
  auto t = Tower::build({{"0", "1"}, {"0"}}, {{0}});
  EXPECT_EQ(thread_from_top(t, 0).values, (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(kind_of([&] { thread_from_top(t, 1); }), ErrorKind::NotSurjective);
}

TEST(Tower, MlClippedDecrement) {
  auto r = ml_report(clipped_decrement_tower(5, 10));
  ASSERT_EQ(r.levels.size(), 11u);
  const auto& l0 = r.levels[0];
  EXPECT_EQ(l0.stabilizes_at, 4u);
  EXPECT_EQ(l0.verdict, MlVerdict::Stable);
  EXPECT_EQ(l0.images[0], (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(l0.images[1], (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(l0.images[4], (std::vector<std::size_t>{0}));
  for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(r.levels[n].stabilizes_at, n + 4);
  EXPECT_EQ(r.levels[6].verdict, MlVerdict::UnstableAtHorizon);
  EXPECT_FALSE(r.all_stable());
}

TEST(Tower, MlIdentityIsImmediate) {
  std::vector<std::vector<std::size_t>> maps(6, {0, 1, 2});
  auto t = Tower::build(std::vector<std::vector<std::string>>(7, range_labels(3)), maps);
  auto r = ml_report(t);
  for (const auto& l : r.levels) {
    EXPECT_EQ(l.stabilizes_at, l.level);
    EXPECT_EQ(l.verdict, MlVerdict::Stable);
  }
  EXPECT_TRUE(r.all_stable());
}

TEST(Tower, MlShrinkingCarriersAreHorizonSensitive) {
  const std::size_t h = 6;
  std::vector<std::vector<std::string>> carriers;
  std::vector<std::vector<std::size_t>> maps;
  for (std::size_t n = 0; n <= h; ++n) carriers.push_back(range_labels(h - n + 1));
  for (std::size_t n = 0; n < h; ++n) {
    std::vector<std::size_t> inclusion(h - n);
    for (std::size_t x = 0; x < inclusion.size(); ++x) inclusion[x] = x;
    maps.push_back(inclusion);
  }
  auto r = ml_report(Tower::build(carriers, maps));
  for (std::size_t n = 0; n < h; ++n) {
    EXPECT_EQ(r.levels[n].stabilizes_at, h);
    EXPECT_EQ(r.levels[n].verdict, MlVerdict::UnstableAtHorizon);
  }
  EXPECT_EQ(r.levels[h].verdict, MlVerdict::Stable);
}

TEST(UniversalImages, SurjectiveSystemUnchanged) {
  auto s = constant01(3);
  auto u = universal_images(s);
  EXPECT_TRUE(u.all_surjective());
  for (ElementId i = 0; i < 3; ++i) EXPECT_EQ(u.system.carrier(i), s.carrier(i));
}

TEST(UniversalImages, ClippedDecrementCollapsesToZero) {
  auto u = universal_images(clipped_decrement_tower(5, 10));
  EXPECT_TRUE(u.all_surjective());
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(u.kept[n], (std::vector<std::size_t>{0}));
}

TEST(FiberSubsystem, IdentityGivesSingletons) {
  auto e = constant01(3);
  SystemMap g{&e, &e, {{0, 1}, {0, 1}, {0, 1}}};
  auto f = fiber_subsystem(g, Thread{{1, 1, 1}});
  for (ElementId i = 0; i < 3; ++i) EXPECT_EQ(f.carrier(i), std::vector<std::string>{"1"});
}

TEST(FiberSubsystem, CollapsingMapGivesEverything) {
  auto e = constant01(3);
  auto p = chain_poset(3);
  std::vector<CoverBond> bonds;
  for (const auto& [lo, hi] : p.covers()) bonds.push_back({lo, hi, {0}});
  auto s = SetSystem::build(p, std::vector<std::vector<std::string>>(3, {"*"}), bonds);
  SystemMap g{&e, &s, {{0, 0}, {0, 0}, {0, 0}}};
  auto f = fiber_subsystem(g, Thread{{0, 0, 0}});
  for (ElementId i = 0; i < 3; ++i) EXPECT_EQ(f.carrier(i), e.carrier(i));
  EXPECT_TRUE(is_surjective(f).surjective);
}

TEST(FiberSubsystem, HenkinLevelMap) {
  auto p = chain_poset(3);
  auto e = henkin_system(p, 6);
  std::vector<CoverBond> bonds;
  for (const auto& [lo, hi] : p.covers()) bonds.push_back({lo, hi, {0}});
  std::vector<std::vector<std::string>> singletons;
  for (ElementId a = 0; a < p.size(); ++a) singletons.push_back({p.label(a)});
  auto s = SetSystem::build(p, singletons, bonds);
  SystemMap g{&e, &s, {}};
  for (ElementId a = 0; a < p.size(); ++a) g.components.emplace_back(e.carrier_size(a), 0);
  auto f = fiber_subsystem(g, Thread{{0, 0, 0}});
  for (ElementId a = 0; a < p.size(); ++a) EXPECT_EQ(f.carrier(a), e.carrier(a));
}

TEST(FiberSubsystem, Errors) {
  auto e = constant01(2);
  auto p = chain_poset(2);
  auto s2 = SetSystem::build(p, {{"0"}, {"0", "1"}}, {{0, 1, {0, 0}}});
  SystemMap g{&e, &s2, {{0, 0}, {0, 1}}};
  EXPECT_EQ(kind_of([&] { fiber_subsystem(g, Thread{{0, 0}}); }), ErrorKind::SigmaNotInjective);

  SystemMap h{&e, &e, {{0, 0}, {0, 0}}};
  EXPECT_EQ(kind_of([&] { fiber_subsystem(h, Thread{{1, 1}}); }), ErrorKind::EmptyFiber);

  SystemMap bad{&e, &e, {{0, 1}, {1, 0}}};
  EXPECT_EQ(kind_of([&] { fiber_subsystem(bad, Thread{{0, 0}}); }), ErrorKind::NotCommuting);

  SystemMap id{&e, &e, {{0, 1}, {0, 1}}};
  EXPECT_EQ(kind_of([&] { fiber_subsystem(id, Thread{{0, 1}}); }), ErrorKind::NotAThread);
}

TEST(SetSystemProperty, CompositesArePathIndependent) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = testgen::random_poset(rng, 5);
    auto s = testgen::random_set_system(p, rng, 4);
    for (ElementId i = 0; i < p.size(); ++i) {
      for (ElementId j = 0; j < p.size(); ++j) {
        for (ElementId k = 0; k < p.size(); ++k) {
          if (!p.leq(i, j) || !p.leq(j, k)) continue;
          for (std::size_t x = 0; x < s.carrier_size(k); ++x) {
            ASSERT_EQ(s.apply(i, j, s.apply(j, k, x)), s.apply(i, k, x)) << "trial " << trial;
          }
        }
      }
    }
  }
}

TEST(SetSystemProperty, LimitMatchesBruteForce) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    auto p = testgen::random_poset(rng, 5);
    auto s = testgen::random_set_system(p, rng, 4);
    ASSERT_EQ(limit_threads(s), oracle::brute_force_threads(s)) << "trial " << trial;
  }
}

TEST(SetSystemProperty, SurjectiveWithMaximumHasThreads) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = testgen::random_poset_with_max(rng, 5);
    auto s = testgen::random_surjective_set_system(p, rng, 4);
    ASSERT_TRUE(is_surjective(s).surjective);
    auto threads = limit_threads(s);
    ASSERT_FALSE(threads.empty());
    auto t = thread_from_top(s);
    EXPECT_TRUE(std::binary_search(threads.begin(), threads.end(), t));
  }
}

TEST(SetSystemProperty, StableTowersHaveSurjectiveImages) {
  std::mt19937_64 rng(24);
  int stable = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto t = testgen::random_tower(rng, 12, 4);
    if (!ml_report(t).all_stable()) continue;
    ++stable;
    EXPECT_TRUE(universal_images(t).all_surjective()) << "trial " << trial;
  }
  EXPECT_GT(stable, 50);
}

TEST(SetSystemProperty, UniversalImagesKeepTheLimit) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    auto t = testgen::random_tower(rng, 6, 3);
    auto u = universal_images(t);
    EXPECT_EQ(limit_threads(t.system()).size(), limit_threads(u.tower.system()).size());
  }
}

TEST(SetSystemProperty, RelabellingDoesNotChangeTheLimitSize) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = testgen::random_poset(rng, 5);
    auto s = testgen::random_set_system(p, rng, 3);
    // Reverse the declaration order of the elements.
    const std::size_t n = p.size();
    std::vector<std::string> labels(p.labels().rbegin(), p.labels().rend());
    std::vector<std::pair<ElementId, ElementId>> covers;
    for (const auto& [lo, hi] : p.covers()) covers.emplace_back(n - 1 - lo, n - 1 - hi);
    auto q = Poset::from_indices(labels, covers);
    std::vector<std::vector<std::string>> carriers(n);
    for (ElementId i = 0; i < n; ++i) carriers[n - 1 - i] = s.carrier(i);
    std::vector<CoverBond> bonds;
    for (const auto& b : s.declared_bonds()) bonds.push_back({n - 1 - b.lower, n - 1 - b.upper, b.image});
    auto r = SetSystem::build(q, carriers, bonds);
    EXPECT_EQ(limit_threads(s).size(), limit_threads(r).size());
  }
}
