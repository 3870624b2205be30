#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "invlim/poset.hpp"

namespace invlim {

/// Default cap on partial assignments explored while enumerating a limit.
inline constexpr std::size_t kDefaultBudget = 1'000'000;

/// A bond declared on one comparable pair: image[k] is the index, in the
/// lower carrier, of the value of the k-th upper carrier element.
struct CoverBond {
  ElementId lower = 0;
  ElementId upper = 0;
  std::vector<std::size_t> image;
};

/// Bond given by element labels, as it appears in a system file.
struct LabelledBond {
  std::string upper;
  std::string lower;
  std::vector<std::pair<std::string, std::string>> pairs;  // upper value -> lower value
};

/// An inverse system of finite sets over a finite poset. Bonds are declared
/// on covers; every composite bond(i, j) for i <= j is derived and checked
/// for path independence when the system is built. Immutable afterwards.
class SetSystem {
 public:
  /// Throws Error{MissingBond | NotFunction | NotComparable | FunctorialityViolation}.
  static SetSystem build(Poset base, std::vector<std::vector<std::string>> carriers,
                         std::vector<CoverBond> bonds);
  static SetSystem from_labels(Poset base, const std::map<std::string, std::vector<std::string>>& carriers,
                               const std::vector<LabelledBond>& bonds);

  const Poset& base() const noexcept { return base_; }
  std::size_t carrier_size(ElementId i) const { return carriers_.at(i).size(); }
  const std::vector<std::string>& carrier(ElementId i) const { return carriers_.at(i); }
  const std::vector<CoverBond>& declared_bonds() const noexcept { return bonds_; }

  /// The composite bond X_j -> X_i; requires i <= j.
  const std::vector<std::size_t>& bond(ElementId i, ElementId j) const;
  std::size_t apply(ElementId i, ElementId j, std::size_t x) const { return bond(i, j)[x]; }

  /// The subsystem on the given carrier subsets (keep[i][x] marks x in X_i).
  /// Throws Error{NotFunction} if some bond leaves the subsets.
  SetSystem restrict_to(const std::vector<std::vector<bool>>& keep) const;

 private:
  SetSystem() = default;
  void derive_composites();

  Poset base_ = Poset::from_indices({}, {});
  std::vector<std::vector<std::string>> carriers_;
  std::vector<CoverBond> bonds_;
  std::vector<std::vector<std::size_t>> composite_;  // indexed i * n + j
};

/// An element of the limit: one carrier index per poset element.
struct Thread {
  std::vector<std::size_t> values;
  auto operator<=>(const Thread&) const = default;
};

bool is_thread(const SetSystem& system, const Thread& thread);

/// A horizon-truncated tower X_0 <- X_1 <- ... <- X_H over the chain 0 <= 1 <= ... <= H.
class Tower {
 public:
  /// maps[n] is the bond X_{n+1} -> X_n as carrier indices; maps.size() == horizon.
  static Tower build(std::vector<std::vector<std::string>> carriers,
                     std::vector<std::vector<std::size_t>> maps);
  static Tower from_system(SetSystem system);

  std::size_t horizon() const noexcept { return system_.base().size() - 1; }
  const SetSystem& system() const noexcept { return system_; }

 private:
  explicit Tower(SetSystem system) : system_(std::move(system)) {}
  SetSystem system_;
};

/// Levels carry {0..width-1}; bond(n, n+1)(x) = max(x - 1, 0).
Tower clipped_decrement_tower(std::size_t width, std::size_t horizon);

struct SurjectivityReport {
  bool surjective = true;
  std::optional<std::pair<ElementId, ElementId>> first_failure;  // (i, j) with bond(i, j) not onto
};

SurjectivityReport is_surjective(const SetSystem& system);
inline SurjectivityReport is_surjective(const Tower& tower) { return is_surjective(tower.system()); }

/// Every thread of the system, in lexicographic order. Depth-first over the
/// reversed linear extension: once an element above i is assigned, x_i is
/// forced, so the search only branches at elements with nothing assigned
/// above them. Throws Error{BudgetExceeded} past `budget` partial assignments.
std::vector<Thread> limit_threads(const SetSystem& system, std::size_t budget = kDefaultBudget);

/// The thread of images of one element at the maximum. Surjectivity is not
/// needed. Throws Error{NoMaximum}, or Error{NotMember} when the top carrier
/// is empty.
Thread thread_from_top(const SetSystem& system, std::size_t top_value = 0);

/// Walks a tower upwards from `start` at level 0, taking the least preimage
/// at each step. Surjectivity guarantees the walk succeeds; without it the
/// walk throws Error{NotSurjective} at the first value with no preimage.
Thread thread_from_top(const Tower& tower, std::size_t start = 0);

enum class MlVerdict { Stable, UnstableAtHorizon };

struct MlLevel {
  std::size_t level = 0;
  /// images[m - level] = bond(level, m)(X_m), sorted, for m = level..H.
  std::vector<std::vector<std::size_t>> images;
  /// Least m from which the images no longer change through H.
  std::size_t stabilizes_at = 0;
  MlVerdict verdict = MlVerdict::Stable;
};

struct MlReport {
  std::size_t horizon = 0;
  std::vector<MlLevel> levels;
  bool all_stable() const;
};

/// Image chains of a tower. A level whose chain is still shrinking at the
/// last step before H is reported UnstableAtHorizon: the truncation cannot
/// tell whether it would settle later.
MlReport ml_report(const Tower& tower);

struct UniversalImages {
  SetSystem system;
  /// kept[i] lists the indices of X_i (in the original carrier) that lie in X'_i.
  std::vector<std::vector<std::size_t>> kept;
  /// Comparable pairs i < j whose restricted bond is not onto X'_i.
  std::vector<std::pair<ElementId, ElementId>> non_surjective;
  bool all_surjective() const { return non_surjective.empty(); }
};

/// X'_i = intersection over j >= i of bond(i, j)(X_j), with restricted bonds.
UniversalImages universal_images(const SetSystem& system);

struct TowerImages {
  Tower tower;
  std::vector<std::vector<std::size_t>> kept;
  std::vector<std::pair<ElementId, ElementId>> non_surjective;
  bool all_surjective() const { return non_surjective.empty(); }
};
TowerImages universal_images(const Tower& tower);

/// A level-wise map g: E -> S between systems over the same poset;
/// components[i][x] is g_i of the x-th element of E_i.
struct SystemMap {
  const SetSystem* source = nullptr;
  const SetSystem* target = nullptr;
  std::vector<std::vector<std::size_t>> components;
};

/// The fibre system E'_i = g_i^{-1}(s_i) with restricted bonds.
/// Throws Error{NotCommuting | EmptyFiber | SigmaNotInjective | NotAThread}.
SetSystem fiber_subsystem(const SystemMap& map, const Thread& s);

}  // namespace invlim
