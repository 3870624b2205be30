#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "invlim/abelian.hpp"
#include "invlim/poset.hpp"
#include "invlim/set_system.hpp"

namespace invlim {

/// Bond A_upper -> A_lower on one comparable pair, as a matrix on generators.
struct AbBond {
  ElementId lower = 0;
  ElementId upper = 0;
  IntMatrix matrix;
};

/// An inverse system of finitely generated abelian groups over a finite
/// poset. As with SetSystem, bonds are declared on covers and composites
/// are derived; functoriality is checked modulo the target relations.
class AbSystem {
 public:
  /// Throws Error{MissingBond | NotComparable | DimensionMismatch | InvalidHom | FunctorialityViolation}.
  static AbSystem build(Poset base, std::vector<FgAbGroup> groups, std::vector<AbBond> bonds);

  const Poset& base() const noexcept { return base_; }
  const FgAbGroup& group(ElementId i) const { return groups_.at(i); }
  const std::vector<FgAbGroup>& groups() const noexcept { return groups_; }
  const std::vector<AbBond>& declared_bonds() const noexcept { return bonds_; }

  /// Composite bond A_j -> A_i; requires i <= j.
  const AbHom& bond(ElementId i, ElementId j) const;

 private:
  AbSystem() = default;

  Poset base_ = Poset::from_indices({}, {});
  std::vector<FgAbGroup> groups_;
  std::vector<AbBond> bonds_;
  std::vector<AbHom> composite_;  // i * n + j
};

/// The same groups with identity bonds; surjective by construction.
AbSystem constant_system(const Poset& base, const FgAbGroup& group);

/// Strictly increasing chain i0 < i1 < ... < in in the base poset.
using Flag = std::vector<ElementId>;

/// Normalized cochain complex of a system over the nerve of its base:
/// C(n) is the sum of A_{i0} over flags i0 < ... < in, and
///   (du)(i0 < ... < i_{n+1}) = bond(i0, i1) u(i1 < ...) + sum_{k>=1} (-1)^k u(flag without i_k).
struct CochainComplex {
  std::vector<std::vector<Flag>> flags;               // per degree
  std::vector<std::vector<std::size_t>> offsets;      // first generator of each flag's block
  std::vector<FgAbGroup> terms;                       // C(0) .. C(N)
  std::vector<IntMatrix> differentials;               // d(n): C(n) -> C(n+1), n < N

  std::size_t top_degree() const { return terms.empty() ? 0 : terms.size() - 1; }
  std::optional<std::size_t> flag_index(std::size_t degree, const Flag& flag) const;
  /// Block of the vector x in C(degree) belonging to the given flag index.
  IntVector block_of(std::size_t degree, std::size_t flag, const IntVector& x) const;
};

/// Throws Error{BudgetExceeded} when the flag count passes `flag_budget`.
CochainComplex nerve_complex(const AbSystem& system, std::size_t flag_budget = kDefaultBudget);

/// d(n+1) o d(n) = 0 modulo the relations of C(n+2), for every n.
bool differentials_square_to_zero(const CochainComplex& complex);

/// H^n of a complex, together with the cocycle lattice it is a quotient of.
struct Cohomology {
  std::size_t degree = 0;
  FgAbGroup group;
  IntMatrix cocycle_basis;  // rows, in C(n) coordinates
  GroupInvariants invariants;
  /// Coordinates, on the generators of `group`, of the class of a cocycle.
  IntVector classify(const IntVector& cocycle) const;
};

Cohomology cohomology(const CochainComplex& complex, std::size_t degree);

/// lim^(n) of the system; degree 0 is the inverse limit itself.
FgAbGroup derived_limit(const AbSystem& system, std::size_t degree, std::size_t flag_budget = kDefaultBudget);

/// All of lim^(0) .. lim^(N), N the longest chain in the base.
std::vector<Cohomology> derived_limits(const AbSystem& system, std::size_t flag_budget = kDefaultBudget);

/// Sampling knobs for random surjective systems.
struct RandomSystemOptions {
  std::size_t max_generators = 3;        // rank of the common free cover
  long long max_invariant_factor = 8;    // torsion factors above this are resampled
  bool finite_only = false;              // no free summands
};

/// A random surjective system over `base`. Every A_i is a quotient
/// Z^g / K_i with K_j inside K_i whenever i <= j, so the natural projections
/// are surjective and functorial; each A_i is then rewritten in Smith
/// coordinates (summands Z and Z/p^k, p in {2,3,5}).
AbSystem random_surjective_system(const Poset& base, std::mt19937_64& rng, const RandomSystemOptions& options = {});

struct ScdReport {
  std::size_t lower_bound = 0;           // max degree with nonzero lim^(n) seen
  std::size_t trials = 0;
  std::vector<std::size_t> trial_degree; // per trial: max nonzero degree (0 if none)
  std::optional<std::size_t> witness;    // first trial reaching lower_bound
};

/// Sampled lower bound for the surjective cohomological dimension of a
/// finite poset. Trial 0 is the constant system Z (detects the homology of
/// the nerve); the remaining trials are random surjective systems drawn
/// from an RNG seeded with (seed, trial index).
ScdReport scd_finite(const Poset& base, std::size_t trials, std::uint64_t seed,
                     const RandomSystemOptions& options = {});

/// 0 -> A --u--> B --v--> C -> 0, level-wise over a common base;
/// u[i] is the matrix of A_i -> B_i and v[i] of B_i -> C_i.
struct SequenceOfSystems {
  const AbSystem* a = nullptr;
  const AbSystem* b = nullptr;
  const AbSystem* c = nullptr;
  std::vector<IntMatrix> u;
  std::vector<IntMatrix> v;
};

struct LimitExactnessReport {
  GroupInvariants lim_a;
  GroupInvariants lim_b;
  GroupInvariants lim_c;
  GroupInvariants lim1_a;
  bool lim_u_injective = false;
  bool exact_at_lim_b = false;
  bool lim_v_surjective = false;
  /// ker(delta) = im(lim v) for the connecting map delta: lim C -> lim^1 A.
  bool connecting_exact = false;
  GroupInvariants coker_lim_v;
  GroupInvariants image_delta;
  /// A is surjective and the base has a maximum, so lim v must be onto.
  bool surjectivity_expected = false;
  bool passes() const {
    return lim_u_injective && exact_at_lim_b && connecting_exact && (!surjectivity_expected || lim_v_surjective);
  }
};

/// Throws Error{NotLevelwiseExact | SquaresDoNotCommute | DimensionMismatch}.
LimitExactnessReport limit_exactness_check(const SequenceOfSystems& sequence);

}  // namespace invlim
