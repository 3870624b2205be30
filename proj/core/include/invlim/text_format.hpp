#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "invlim/abelian.hpp"
#include "invlim/derived.hpp"
#include "invlim/poset.hpp"
#include "invlim/set_system.hpp"

namespace invlim {

/// Line-oriented text format. A file is a sequence of blocks; a header line
/// opens a block and the following lines, up to the next header, form its
/// body. '#' starts a comment. Labels match [A-Za-z0-9_()]+.
///
///   poset NAME
///     elements: a b c
///     covers: c < a, c < b          (chains "a < b < c" are allowed)
///   system NAME over POSET
///     set a: { x0 x1 }
///     map b -> a: y0 -> x0, y1 -> x0
///   tower NAME horizon H
///     set all: { 0 1 2 }            or  set N: { ... }
///     map all: clipdec              (clipdec | identity)
///     map N+1 -> N: y -> x, ...     or  map N+1 -> N: clipdec
///   group NAME gens K relations [[...]]
///   hom NAME A -> B matrix [[...]]  (target gens x source gens)
///   absystem NAME over POSET
///     at a: gens K relations [[...]]   or  at a: GROUPNAME
///     bond b -> a matrix [[...]]
///   sequence NAME: A -> B -> C      (three absystems over one poset)
///     u a matrix [[...]]            (A_a -> B_a; omitted means zero)
///     v a matrix [[...]]

/// Uniform rules are kept so that the horizon can be moved after parsing.
struct TowerSpec {
  enum class Rule { Explicit, ClipDec, Identity };
  struct MapRule {
    Rule rule = Rule::Explicit;
    std::vector<std::pair<std::string, std::string>> pairs;  // upper -> lower
  };

  std::string name;
  std::size_t horizon = 0;
  std::optional<std::vector<std::string>> set_all;
  std::map<std::size_t, std::vector<std::string>> sets;
  std::optional<Rule> map_all;
  std::map<std::size_t, MapRule> maps;  // keyed by the lower level n of n+1 -> n

  /// Builds the tower truncated or extended to `horizon` (default: declared).
  /// Levels beyond the declared ones need `set all` and a uniform map rule.
  /// Throws Error{ParseError | NotFunction}.
  Tower build(std::optional<std::size_t> horizon = std::nullopt) const;
  const MapRule* maps_find(std::size_t n) const;
};

struct NamedPoset {
  std::string name;
  Poset poset;
};

struct NamedSystem {
  std::string name;
  std::string over;
  SetSystem system;
};

struct NamedGroup {
  std::string name;
  FgAbGroup group;
};

struct NamedHom {
  std::string name;
  std::string source;
  std::string target;
  AbHom hom;
};

struct NamedAbSystem {
  std::string name;
  std::string over;
  AbSystem system;
};

struct NamedSequence {
  std::string name;
  std::string a, b, c;
  std::vector<IntMatrix> u;
  std::vector<IntMatrix> v;
};

struct Document {
  std::vector<NamedPoset> posets;
  std::vector<NamedSystem> systems;
  std::vector<TowerSpec> towers;
  std::vector<NamedGroup> groups;
  std::vector<NamedHom> homs;
  std::vector<NamedAbSystem> absystems;
  std::vector<NamedSequence> sequences;

  const Poset* find_poset(const std::string& name) const;
  const AbSystem* find_absystem(const std::string& name) const;
  const FgAbGroup* find_group(const std::string& name) const;
  /// Pointers refer into this document. Throws Error{ParseError} for unknown names.
  SequenceOfSystems sequence(const NamedSequence& s) const;
};

/// Throws Error{ParseError} for syntax errors, and the builders' own error
/// kinds (prefixed with the block's line) for invalid content.
Document parse_document(const std::string& text);
Document read_document_file(const std::string& path);

/// Canonical rendering; parse(print(d)) prints identically.
std::string print_document(const Document& doc);

std::string print_poset(const std::string& name, const Poset& poset);
std::string print_system(const std::string& name, const std::string& over, const SetSystem& system);
std::string print_tower(const TowerSpec& tower);

/// "[[1,0],[2,3]]", "[]" for no rows. Throws Error{ParseError}.
IntMatrix parse_matrix(const std::string& text, std::size_t cols_if_empty = 0);

}  // namespace invlim
