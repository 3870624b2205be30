#include "invlim/poset.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <unordered_map>

#include "invlim/error.hpp"

namespace invlim {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::MissingBond: return "MissingBond";
    case ErrorKind::NotFunction: return "NotFunction";
    case ErrorKind::FunctorialityViolation: return "FunctorialityViolation";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NoMaximum: return "NoMaximum";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::EmptyFiber: return "EmptyFiber";
    case ErrorKind::SigmaNotInjective: return "SigmaNotInjective";
    case ErrorKind::NotAThread: return "NotAThread";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidHom: return "InvalidHom";
    case ErrorKind::NotLevelwiseExact: return "NotLevelwiseExact";
    case ErrorKind::SquaresDoNotCommute: return "SquaresDoNotCommute";
    case ErrorKind::OddLength: return "OddLength";
    case ErrorKind::NotMember: return "NotMember";
    case ErrorKind::NotComparable: return "NotComparable";
    case ErrorKind::NoStrictUpper: return "NoStrictUpper";
    case ErrorKind::NotCompatible: return "NotCompatible";
    case ErrorKind::SupportExceedsBound: return "SupportExceedsBound";
    case ErrorKind::LevelMismatch: return "LevelMismatch";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {
constexpr std::size_t kDenseLimit = 64;
}

Poset Poset::build(std::vector<std::string> labels,
                   const std::vector<std::pair<std::string, std::string>>& covers) {
  std::unordered_map<std::string, ElementId> index;
  for (ElementId i = 0; i < labels.size(); ++i) {
    if (!index.emplace(labels[i], i).second) {
      throw Error(ErrorKind::DuplicateLabel, "label '" + labels[i] + "' declared twice");
    }
  }
  std::vector<std::pair<ElementId, ElementId>> ids;
  ids.reserve(covers.size());
  for (const auto& [lo, hi] : covers) {
    auto a = index.find(lo);
    if (a == index.end()) throw Error(ErrorKind::UnknownElement, "cover mentions '" + lo + "'");
    auto b = index.find(hi);
    if (b == index.end()) throw Error(ErrorKind::UnknownElement, "cover mentions '" + hi + "'");
    ids.emplace_back(a->second, b->second);
  }
  return from_indices(std::move(labels), std::move(ids));
}

Poset Poset::from_indices(std::vector<std::string> labels,
                          std::vector<std::pair<ElementId, ElementId>> covers) {
  Poset p;
  {
    std::set<std::string> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l).second) {
        throw Error(ErrorKind::DuplicateLabel, "label '" + l + "' declared twice");
      }
    }
  }
  p.labels_ = std::move(labels);
  std::set<std::pair<ElementId, ElementId>> seen;
  for (const auto& c : covers) {
    if (c.first >= p.labels_.size() || c.second >= p.labels_.size()) {
      throw Error(ErrorKind::UnknownElement, "cover index out of range");
    }
    if (c.first == c.second) {
      throw Error(ErrorKind::CycleDetected, "cover " + p.labels_[c.first] + " < " + p.labels_[c.first]);
    }
    if (seen.insert(c).second) p.covers_.push_back(c);
  }
  p.compute_closure();
  return p;
}

void Poset::compute_closure() {
  const std::size_t n = labels_.size();
  std::vector<std::vector<ElementId>> above(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& [lo, hi] : covers_) {
    above[lo].push_back(hi);
    ++indegree[hi];
  }

  // Kahn's algorithm, smallest label first.
  auto label_greater = [this](ElementId a, ElementId b) { return labels_[a] > labels_[b]; };
  std::priority_queue<ElementId, std::vector<ElementId>, decltype(label_greater)> ready(label_greater);
  for (ElementId i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  linear_extension_.clear();
  while (!ready.empty()) {
    ElementId i = ready.top();
    ready.pop();
    linear_extension_.push_back(i);
    for (ElementId j : above[i]) {
      if (--indegree[j] == 0) ready.push(j);
    }
  }
  if (linear_extension_.size() != n) {
    std::string culprit;
    for (ElementId i = 0; i < n; ++i) {
      if (indegree[i] != 0) {
        culprit = labels_[i];
        break;
      }
    }
    throw Error(ErrorKind::CycleDetected, "covers induce a cycle through '" + culprit + "'");
  }

  // Up-sets in reverse linear-extension order.
  std::vector<std::vector<bool>> up(n, std::vector<bool>(n, false));
  std::vector<std::size_t> height(n, 0);
  for (auto it = linear_extension_.rbegin(); it != linear_extension_.rend(); ++it) {
    ElementId i = *it;
    up[i][i] = true;
    for (ElementId j : above[i]) {
      for (ElementId k = 0; k < n; ++k) {
        if (up[j][k]) up[i][k] = true;
      }
      height[i] = std::max(height[i], height[j] + 1);
    }
  }
  longest_chain_ = n == 0 ? 0 : *std::max_element(height.begin(), height.end());

  dense_.clear();
  sparse_.clear();
  if (n <= kDenseLimit) {
    dense_.assign(n, 0);
    for (ElementId i = 0; i < n; ++i) {
      for (ElementId j = 0; j < n; ++j) {
        if (up[i][j]) dense_[i] |= std::uint64_t{1} << j;
      }
    }
  } else {
    for (ElementId i = 0; i < n; ++i) {
      for (ElementId j = 0; j < n; ++j) {
        if (i != j && up[i][j]) sparse_.emplace_back(i, j);
      }
    }
  }
}

std::optional<ElementId> Poset::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<ElementId>(it - labels_.begin());
}

ElementId Poset::id(const std::string& label) const {
  if (auto i = find(label)) return *i;
  throw Error(ErrorKind::UnknownElement, "no element '" + label + "'");
}

bool Poset::leq(ElementId a, ElementId b) const {
  if (a == b) return true;
  if (size() <= kDenseLimit) return (dense_[a] >> b) & 1U;
  return std::binary_search(sparse_.begin(), sparse_.end(), std::make_pair(a, b));
}

std::vector<ElementId> Poset::up_set(ElementId i) const {
  std::vector<ElementId> out;
  for (ElementId j = 0; j < size(); ++j) {
    if (leq(i, j)) out.push_back(j);
  }
  return out;
}

std::vector<ElementId> Poset::down_set(ElementId i) const {
  std::vector<ElementId> out;
  for (ElementId j = 0; j < size(); ++j) {
    if (leq(j, i)) out.push_back(j);
  }
  return out;
}

std::vector<ElementId> Poset::by_label() const {
  std::vector<ElementId> order(size());
  for (ElementId i = 0; i < size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [this](ElementId a, ElementId b) { return labels_[a] < labels_[b]; });
  return order;
}

bool is_directed(const Poset& poset) {
  const std::size_t n = poset.size();
  for (ElementId a = 0; a < n; ++a) {
    for (ElementId b = a + 1; b < n; ++b) {
      bool bounded = false;
      for (ElementId c = 0; c < n && !bounded; ++c) {
        bounded = poset.leq(a, c) && poset.leq(b, c);
      }
      if (!bounded) return false;
    }
  }
  return true;
}

std::vector<ElementId> maximal_elements(const Poset& poset) {
  std::vector<ElementId> out;
  for (ElementId i : poset.by_label()) {
    bool top = true;
    for (ElementId j = 0; j < poset.size() && top; ++j) {
      top = !poset.less(i, j);
    }
    if (top) out.push_back(i);
  }
  return out;
}

std::optional<ElementId> maximum(const Poset& poset) {
  auto tops = maximal_elements(poset);
  if (tops.size() != 1) return std::nullopt;
  // In a finite poset a unique maximal element is the maximum.
  return tops.front();
}

std::optional<std::vector<ElementId>> cofinal_chain(const Poset& poset) {
  auto top = maximum(poset);
  if (!top) return std::nullopt;
  ElementId current = *top;
  for (ElementId i : poset.by_label()) {
    bool minimal = true;
    for (ElementId j = 0; j < poset.size() && minimal; ++j) {
      minimal = !poset.less(j, i);
    }
    if (minimal) {
      current = i;
      break;
    }
  }
  std::vector<ElementId> chain{current};
  while (current != *top) {
    // Step to the label-least element directly above `current`.
    std::optional<ElementId> next;
    for (ElementId j : poset.by_label()) {
      if (!poset.less(current, j)) continue;
      bool direct = true;
      for (ElementId k = 0; k < poset.size() && direct; ++k) {
        direct = !(poset.less(current, k) && poset.less(k, j));
      }
      if (direct) {
        next = j;
        break;
      }
    }
    current = *next;
    chain.push_back(current);
  }
  return chain;
}

Poset chain_poset(std::size_t length, std::size_t first_label) {
  std::vector<std::string> labels;
  std::vector<std::pair<ElementId, ElementId>> covers;
  for (std::size_t i = 0; i < length; ++i) {
    labels.push_back(std::to_string(first_label + i));
    if (i > 0) covers.emplace_back(i - 1, i);
  }
  return Poset::from_indices(std::move(labels), std::move(covers));
}

Poset grid_poset(std::size_t rows, std::size_t cols) {
  std::vector<std::string> labels;
  std::vector<std::pair<ElementId, ElementId>> covers;
  auto at = [cols](std::size_t r, std::size_t c) { return r * cols + c; };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      labels.push_back("(" + std::to_string(r + 1) + "_" + std::to_string(c + 1) + ")");
      if (r + 1 < rows) covers.emplace_back(at(r, c), at(r + 1, c));
      if (c + 1 < cols) covers.emplace_back(at(r, c), at(r, c + 1));
    }
  }
  return Poset::from_indices(std::move(labels), std::move(covers));
}

}  // namespace invlim
