#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "invlim/int_matrix.hpp"

namespace invlim {

/// A finitely generated abelian group Z^ngens / (row lattice of relations).
/// Groups are presentations; two groups are "the same" when their
/// invariants agree.
class FgAbGroup {
 public:
  FgAbGroup() = default;
  /// Throws Error{DimensionMismatch} unless relations.cols() == ngens.
  FgAbGroup(std::size_t ngens, IntMatrix relations);

  static FgAbGroup free(std::size_t rank);
  static FgAbGroup cyclic(long long order);  // order 0 gives Z
  static FgAbGroup trivial() { return FgAbGroup(0, IntMatrix(0, 0)); }
  /// Z/d1 + Z/d2 + ...; a zero entry contributes a copy of Z.
  static FgAbGroup diagonal(const std::vector<long long>& orders);

  std::size_t ngens() const noexcept { return ngens_; }
  const IntMatrix& relations() const noexcept { return relations_; }
  /// Hermite basis of the relation lattice.
  const IntMatrix& relation_basis() const noexcept { return basis_; }

  /// x (coordinates on the generators) represents zero.
  bool is_zero(const IntVector& x) const;
  bool equal(const IntVector& x, const IntVector& y) const;

  friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) {
    return a.ngens_ == b.ngens_ && a.relations_ == b.relations_;
  }

 private:
  std::size_t ngens_ = 0;
  IntMatrix relations_;
  IntMatrix basis_;
};

FgAbGroup direct_sum(const std::vector<FgAbGroup>& parts);

struct GroupInvariants {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1, each dividing the next
  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  friend bool operator==(const GroupInvariants&, const GroupInvariants&) = default;
  std::string to_string() const;  // "free rank 1, torsion [2,4]"
};

GroupInvariants group_invariants(const FgAbGroup& g);
bool isomorphic(const FgAbGroup& a, const FgAbGroup& b);

/// A homomorphism given on generators: column k of the matrix is the image
/// of source generator k, so the matrix is target.ngens() x source.ngens().
class AbHom {
 public:
  AbHom() = default;
  /// Throws Error{DimensionMismatch | InvalidHom}; the latter when some
  /// source relator is not sent into the target's relation lattice.
  AbHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix);

  static AbHom zero(const FgAbGroup& source, const FgAbGroup& target);
  static AbHom identity(const FgAbGroup& g);

  const FgAbGroup& source() const noexcept { return source_; }
  const FgAbGroup& target() const noexcept { return target_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  IntVector apply(const IntVector& x) const { return matrix_ * x; }

 private:
  FgAbGroup source_;
  FgAbGroup target_;
  IntMatrix matrix_;
};

/// g o f. Throws Error{DimensionMismatch} when f's target is not g's source.
AbHom compose(const AbHom& g, const AbHom& f);

/// f and g agree as maps (difference lands in the target's relations).
bool same_map(const AbHom& f, const AbHom& g);
bool is_zero_map(const AbHom& f);

/// {x in Z^source.ngens : f(x) = 0 in the target}, as a Hermite row basis.
IntMatrix kernel_lattice(const AbHom& f);

/// Presentation of a subquotient: the lattice spanned by `sub_basis` (rows,
/// linearly independent) modulo the rows of `quotient`, which must lie in it.
FgAbGroup subquotient(const IntMatrix& sub_basis, const IntMatrix& quotient);

FgAbGroup hom_kernel(const AbHom& f);
FgAbGroup hom_image(const AbHom& f);
FgAbGroup hom_cokernel(const AbHom& f);

bool is_injective(const AbHom& f);
bool is_surjective(const AbHom& f);

struct ExactnessReport {
  bool composition_zero = false;  // im f inside ker g
  bool kernel_in_image = false;   // ker g inside im f
  bool exact() const { return composition_zero && kernel_in_image; }
};

/// Exactness of A --f--> B --g--> C at B, by double lattice inclusion.
ExactnessReport is_exact_at(const AbHom& f, const AbHom& g);

/// The lattice spanned by the rows of `generators` contains v.
bool in_row_lattice(const IntMatrix& generators, const IntVector& v);

}  // namespace invlim
