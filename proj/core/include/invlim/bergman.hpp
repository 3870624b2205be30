#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "invlim/int_matrix.hpp"

namespace invlim {

/// Generator of the free abelian groups used below: g_ij (i <= j) or f_i.
/// Indices live in the chain truncation {1..N}.
struct Generator {
  enum class Kind { G, F };
  Kind kind = Kind::G;
  int i = 0;
  int j = 0;  // unused for f

  static Generator g(int i, int j) { return {Kind::G, i, j}; }
  static Generator f(int i) { return {Kind::F, i, 0}; }
  std::string to_string() const;
  auto operator<=>(const Generator&) const = default;
};

/// Sparse integer combination of generators; zero coefficients are never stored.
class FreeAbElement {
 public:
  FreeAbElement() = default;
  static FreeAbElement of(Generator gen, BigInt coefficient = 1);
  static FreeAbElement g(int i, int j) { return of(Generator::g(i, j)); }
  static FreeAbElement f(int i) { return of(Generator::f(i)); }

  const std::map<Generator, BigInt>& terms() const noexcept { return terms_; }
  BigInt coefficient(const Generator& gen) const;
  BigInt coefficient_sum() const;
  bool is_zero() const noexcept { return terms_.empty(); }
  bool only_g() const;
  /// Largest index mentioned, 0 for the zero element.
  int max_index() const;
  std::string to_string() const;

  FreeAbElement& add(const Generator& gen, const BigInt& coefficient);
  FreeAbElement& operator+=(const FreeAbElement& other);
  FreeAbElement& operator-=(const FreeAbElement& other);
  friend FreeAbElement operator+(FreeAbElement a, const FreeAbElement& b) { return a += b; }
  friend FreeAbElement operator-(FreeAbElement a, const FreeAbElement& b) { return a -= b; }
  friend FreeAbElement operator*(const BigInt& k, const FreeAbElement& a);
  bool operator==(const FreeAbElement&) const = default;

 private:
  std::map<Generator, BigInt> terms_;
};

/// g_ij + g_jk - g_ik.
FreeAbElement relator(int i, int j, int k);

/// The relators with alpha <= i < j < k <= n; they generate H_alpha inside the truncation.
std::vector<FreeAbElement> h_relators(int alpha, int n);

/// Membership of e in H_alpha, decided inside the truncation {1..n}.
/// Throws Error{SupportExceedsBound} if e mentions an index outside {1..n},
/// an f generator, or g_ij with i > j.
bool h_subgroup_member(const FreeAbElement& e, int alpha, int n);

/// The coset rep + H_level, written rep * x_level.
struct CosetElement {
  int level = 1;
  FreeAbElement rep;
};

/// Throws Error{LevelMismatch | SupportExceedsBound}.
bool coset_equal(const CosetElement& a, const CosetElement& b, int n);

/// X_beta -> X_alpha, c x_beta |-> (c + g_alpha_beta) x_alpha; the identity when alpha == beta.
/// Throws Error{NotComparable | LevelMismatch}.
CosetElement gset_bond(int alpha, int beta, const CosetElement& c);

/// D(g_ij) = f_i - f_j, extended linearly; f generators are not in the domain
/// and raise Error{SupportExceedsBound}.
FreeAbElement d_map(const FreeAbElement& e);

/// One machine-checked identity of the demonstration.
struct DemoStep {
  std::string tag;
  std::string claim;
  bool holds = false;
  std::string detail;
};

struct BergmanDemo {
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<CosetElement> thread;      // as sampled
  std::vector<CosetElement> translated;  // after subtracting the eventual coefficients
  std::vector<DemoStep> steps;
  bool all_hold() const;
};

/// Samples a thread of the G-set system over the chain {1..n} and checks the
/// algebraic identities behind the non-surjectivity argument on it. n >= 2.
BergmanDemo bergman_demo(int n, std::uint64_t seed);

}  // namespace invlim
