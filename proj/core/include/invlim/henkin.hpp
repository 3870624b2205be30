#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "invlim/poset.hpp"
#include "invlim/set_system.hpp"

namespace invlim {

/// An even-length tuple (a1, b1, a2, b2, ..., an, bn) of poset elements.
/// It belongs to E_level when
///   (1) an = level,
///   (2) ai <= bi for every i,
///   (3) ai is not <= aj whenever j < i.
struct HenkinTuple {
  std::vector<ElementId> entries;

  std::size_t pairs() const { return entries.size() / 2; }
  ElementId level() const { return entries[entries.size() - 2]; }
  ElementId ending() const { return entries.back(); }
  auto operator<=>(const HenkinTuple&) const = default;
};

/// Throws Error{OddLength}. The empty tuple belongs to no E_level.
bool henkin_member(const Poset& poset, const HenkinTuple& t, ElementId level);

/// eps_{alpha beta}: E_beta -> E_alpha. With j the least index such that
/// alpha <= a_j, the result is (a1, b1, ..., a_{j-1}, b_{j-1}, alpha, b_j).
/// Throws Error{NotComparable | NotMember | OddLength}.
HenkinTuple henkin_eps(const Poset& poset, ElementId alpha, ElementId beta, const HenkinTuple& t);

/// A preimage of x in E_beta under eps_{alpha beta}: x extended by (beta, gamma)
/// for some gamma strictly above beta, or x itself when beta == alpha. If
/// gamma is not given, the label-least strict upper bound of beta is used.
/// Throws Error{NoStrictUpper | NotComparable | NotMember}.
HenkinTuple henkin_lift(const Poset& poset, const HenkinTuple& x, ElementId alpha, ElementId beta,
                        std::optional<ElementId> gamma = std::nullopt);

/// All members of E_level with at most max_len entries, in lexicographic order.
std::vector<HenkinTuple> henkin_enumerate(const Poset& poset, ElementId level, std::size_t max_len);

/// The system {E_alpha, eps} truncated to tuples of length <= max_len.
/// eps never lengthens a tuple, so the truncation is a subsystem. Carrier
/// values are the tuples written as "(a,b,...)".
SetSystem henkin_system(const Poset& poset, std::size_t max_len);

/// Parses "a,b,c,d" (labels separated by commas) into a tuple; surrounding
/// parentheses are optional. Throws Error{UnknownElement | OddLength}.
HenkinTuple parse_henkin_tuple(const Poset& poset, const std::string& text);
std::string format_henkin_tuple(const Poset& poset, const HenkinTuple& t);

/// The compatible family (eps_{alpha top}(e_top))_alpha over a poset with a maximum.
/// Throws Error{NoMaximum | NotMember}.
std::vector<HenkinTuple> family_from_top(const Poset& poset, const HenkinTuple& top_tuple);

/// Lifts `start` (a member of E_c for the first element c of the cofinal
/// chain) up the chain with henkin_lift; the maximum, which has no strict
/// upper bound, is reached by appending (top, top). The rest of the family
/// is pushed down from the top. Throws Error{NoMaximum | NotMember}.
std::vector<HenkinTuple> lifted_family(const Poset& poset, const HenkinTuple& start);

struct CofinalExtraction {
  /// Ending coordinate of e_alpha, per element.
  std::vector<ElementId> ending;
  /// Distinct ending coordinates, in label order.
  std::vector<ElementId> endings;
  /// Every element lies below some ending coordinate.
  bool cofinal = false;
  /// Members of equal length share their ending coordinate.
  bool same_length_same_ending = false;
  /// Members of equal length share their level (the stronger reading).
  bool same_length_same_level = false;
};

/// family[alpha] must lie in E_alpha and eps_{alpha beta}(family[beta]) = family[alpha].
/// Throws Error{NotMember | NotCompatible}.
CofinalExtraction cofinal_extract(const Poset& poset, const std::vector<HenkinTuple>& family);

}  // namespace invlim
