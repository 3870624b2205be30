#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace invlim {

/// Index of an element inside a Poset (position in declaration order).
using ElementId = std::size_t;

/// A finite partially ordered set given by labelled elements and cover
/// pairs. The order relation is the reflexive-transitive closure of the
/// covers and is computed once, at construction.
///
/// Up to 64 elements the relation is a dense bit matrix; larger posets
/// keep a sorted list of strict pairs.
class Poset {
 public:
  /// Validates labels and covers and computes the closure.
  /// Throws Error{DuplicateLabel | UnknownElement | CycleDetected}.
  static Poset build(std::vector<std::string> labels,
                     const std::vector<std::pair<std::string, std::string>>& covers);

  /// Same, with covers already given as element indices.
  static Poset from_indices(std::vector<std::string> labels,
                            std::vector<std::pair<ElementId, ElementId>> covers);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(ElementId i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<ElementId> find(const std::string& label) const;
  /// Throws Error{UnknownElement}.
  ElementId id(const std::string& label) const;

  /// Declared cover pairs (lower, upper), deduplicated, in declaration order.
  const std::vector<std::pair<ElementId, ElementId>>& covers() const noexcept { return covers_; }

  bool leq(ElementId a, ElementId b) const;
  bool less(ElementId a, ElementId b) const { return a != b && leq(a, b); }
  bool comparable(ElementId a, ElementId b) const { return leq(a, b) || leq(b, a); }

  /// Elements j with i <= j, ascending by index.
  std::vector<ElementId> up_set(ElementId i) const;
  /// Elements j with j <= i, ascending by index.
  std::vector<ElementId> down_set(ElementId i) const;

  /// A linear extension: every element appears after all elements below it.
  /// Ties are broken by label order, so the result is deterministic.
  const std::vector<ElementId>& linear_extension() const noexcept { return linear_extension_; }

  /// Number of edges in the longest strictly increasing chain.
  std::size_t longest_chain() const noexcept { return longest_chain_; }

  /// Element indices sorted by label.
  std::vector<ElementId> by_label() const;

 private:
  Poset() = default;
  void compute_closure();

  std::vector<std::string> labels_;
  std::vector<std::pair<ElementId, ElementId>> covers_;
  std::vector<std::uint64_t> dense_;                        // used when size() <= 64
  std::vector<std::pair<ElementId, ElementId>> sparse_;     // strict pairs, sorted
  std::vector<ElementId> linear_extension_;
  std::size_t longest_chain_ = 0;
};

/// True iff every two elements have a common upper bound.
bool is_directed(const Poset& poset);

/// Elements with nothing strictly above them, in label order.
std::vector<ElementId> maximal_elements(const Poset& poset);

/// The greatest element, if there is one.
std::optional<ElementId> maximum(const Poset& poset);

/// An ascending chain whose last member dominates every element. For a
/// finite poset this exists exactly when there is a maximum; the chain
/// starts at the label-least minimal element and climbs covers.
std::optional<std::vector<ElementId>> cofinal_chain(const Poset& poset);

/// Builders for the small shapes used throughout the tests and the CLI.
Poset chain_poset(std::size_t length, std::size_t first_label = 1);
/// Componentwise order on {1..rows} x {1..cols}, labels "(i_j)".
Poset grid_poset(std::size_t rows, std::size_t cols);

}  // namespace invlim
