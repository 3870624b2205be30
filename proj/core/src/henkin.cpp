#include "invlim/henkin.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "invlim/error.hpp"

namespace invlim {

bool henkin_member(const Poset& poset, const HenkinTuple& t, ElementId level) {
  const auto& e = t.entries;
  if (e.size() % 2 != 0) throw Error(ErrorKind::OddLength, "tuple has " + std::to_string(e.size()) + " entries");
  if (e.empty()) return false;
  for (ElementId x : e) {
    if (x >= poset.size()) throw Error(ErrorKind::UnknownElement, "tuple entry out of range");
  }
  if (t.level() != level) return false;
  for (std::size_t i = 0; i < t.pairs(); ++i) {
    if (!poset.leq(e[2 * i], e[2 * i + 1])) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (poset.leq(e[2 * i], e[2 * j])) return false;
    }
  }
  return true;
}

HenkinTuple henkin_eps(const Poset& poset, ElementId alpha, ElementId beta, const HenkinTuple& t) {
  if (!poset.leq(alpha, beta)) {
    throw Error(ErrorKind::NotComparable, poset.label(alpha) + " is not below " + poset.label(beta));
  }
  if (!henkin_member(poset, t, beta)) {
    throw Error(ErrorKind::NotMember, format_henkin_tuple(poset, t) + " is not in E_" + poset.label(beta));
  }
  std::size_t j = 0;
  while (!poset.leq(alpha, t.entries[2 * j])) ++j;  // terminates: the last odd entry is beta
  HenkinTuple out;
  out.entries.assign(t.entries.begin(), t.entries.begin() + static_cast<std::ptrdiff_t>(2 * j));
  out.entries.push_back(alpha);
  out.entries.push_back(t.entries[2 * j + 1]);
  return out;
}

HenkinTuple henkin_lift(const Poset& poset, const HenkinTuple& x, ElementId alpha, ElementId beta,
                        std::optional<ElementId> gamma) {
  if (!poset.leq(alpha, beta)) {
    throw Error(ErrorKind::NotComparable, poset.label(alpha) + " is not below " + poset.label(beta));
  }
  if (!henkin_member(poset, x, alpha)) {
    throw Error(ErrorKind::NotMember, format_henkin_tuple(poset, x) + " is not in E_" + poset.label(alpha));
  }
  // (x, alpha, gamma) would repeat alpha as an odd entry and break (3).
  if (alpha == beta) return x;
  if (!gamma) {
    for (ElementId g : poset.by_label()) {
      if (poset.less(beta, g)) {
        gamma = g;
        break;
      }
    }
  }
  if (!gamma || !poset.less(beta, *gamma)) {
    throw Error(ErrorKind::NoStrictUpper, "nothing strictly above " + poset.label(beta));
  }
  HenkinTuple y = x;
  y.entries.push_back(beta);
  y.entries.push_back(*gamma);
  // beta <= a_l for some earlier odd entry would give alpha < a_l, against (3) for x.
  if (!henkin_member(poset, y, beta) || henkin_eps(poset, alpha, beta, y) != x) {
    throw std::logic_error("henkin_lift postcondition failed for " + format_henkin_tuple(poset, x));
  }
  return y;
}

std::vector<HenkinTuple> henkin_enumerate(const Poset& poset, ElementId level, std::size_t max_len) {
  std::vector<HenkinTuple> out;
  HenkinTuple prefix;
  // Every earlier odd entry must stay incomparable-from-below with `level`.
  auto grow = [&](auto&& self) -> void {
    if (prefix.entries.size() + 2 > max_len) return;
    for (ElementId a = 0; a < poset.size(); ++a) {
      bool fresh = true;
      for (std::size_t j = 0; j < prefix.pairs() && fresh; ++j) fresh = !poset.leq(a, prefix.entries[2 * j]);
      if (!fresh) continue;
      if (a != level && poset.leq(level, a)) continue;
      for (ElementId b : poset.up_set(a)) {
        prefix.entries.push_back(a);
        prefix.entries.push_back(b);
        if (a == level) out.push_back(prefix);
        else self(self);
        prefix.entries.resize(prefix.entries.size() - 2);
      }
    }
  };
  grow(grow);
  std::sort(out.begin(), out.end());
  return out;
}

SetSystem henkin_system(const Poset& poset, std::size_t max_len) {
  std::vector<std::vector<HenkinTuple>> members;
  std::vector<std::vector<std::string>> carriers;
  for (ElementId a = 0; a < poset.size(); ++a) {
    members.push_back(henkin_enumerate(poset, a, max_len));
    std::vector<std::string> names;
    for (const auto& t : members.back()) names.push_back(format_henkin_tuple(poset, t));
    carriers.push_back(std::move(names));
  }
  std::vector<CoverBond> bonds;
  for (const auto& [lo, hi] : poset.covers()) {
    CoverBond b{lo, hi, {}};
    for (const auto& t : members[hi]) {
      auto image = henkin_eps(poset, lo, hi, t);
      auto at = std::lower_bound(members[lo].begin(), members[lo].end(), image);
      b.image.push_back(static_cast<std::size_t>(at - members[lo].begin()));
    }
    bonds.push_back(std::move(b));
  }
  return SetSystem::build(poset, std::move(carriers), std::move(bonds));
}

HenkinTuple parse_henkin_tuple(const Poset& poset, const std::string& text) {
  std::string body = text;
  if (!body.empty() && body.front() == '(' && body.back() == ')' && !poset.find(body)) {
    body = body.substr(1, body.size() - 2);
  }
  HenkinTuple t;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto first = item.find_first_not_of(" \t");
    auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw Error(ErrorKind::UnknownElement, "empty tuple entry");
    t.entries.push_back(poset.id(item.substr(first, last - first + 1)));
  }
  if (t.entries.size() % 2 != 0) throw Error(ErrorKind::OddLength, "'" + text + "' has odd length");
  return t;
}

std::string format_henkin_tuple(const Poset& poset, const HenkinTuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    if (i) s += ',';
    s += poset.label(t.entries[i]);
  }
  return s + ")";
}

std::vector<HenkinTuple> family_from_top(const Poset& poset, const HenkinTuple& top_tuple) {
  auto top = maximum(poset);
  if (!top) throw Error(ErrorKind::NoMaximum, "the poset has no maximum");
  std::vector<HenkinTuple> family;
  for (ElementId a = 0; a < poset.size(); ++a) family.push_back(henkin_eps(poset, a, *top, top_tuple));
  return family;
}

std::vector<HenkinTuple> lifted_family(const Poset& poset, const HenkinTuple& start) {
  auto chain = cofinal_chain(poset);
  if (!chain) throw Error(ErrorKind::NoMaximum, "the poset has no maximum");
  const ElementId top = chain->back();
  HenkinTuple current = start;
  if (!henkin_member(poset, current, chain->front())) {
    throw Error(ErrorKind::NotMember, "start tuple is not in E_" + poset.label(chain->front()));
  }
  for (std::size_t k = 1; k < chain->size(); ++k) {
    const ElementId from = (*chain)[k - 1];
    const ElementId to = (*chain)[k];
    if (to == top) {
      current.entries.push_back(top);
      current.entries.push_back(top);
    } else {
      current = henkin_lift(poset, current, from, to);
    }
  }
  return family_from_top(poset, current);
}

CofinalExtraction cofinal_extract(const Poset& poset, const std::vector<HenkinTuple>& family) {
  if (family.size() != poset.size()) throw Error(ErrorKind::NotCompatible, "family must have one tuple per element");
  for (ElementId a = 0; a < poset.size(); ++a) {
    if (!henkin_member(poset, family[a], a)) {
      throw Error(ErrorKind::NotMember, format_henkin_tuple(poset, family[a]) + " is not in E_" + poset.label(a));
    }
  }
  for (ElementId a = 0; a < poset.size(); ++a) {
    for (ElementId b = 0; b < poset.size(); ++b) {
      if (poset.less(a, b) && henkin_eps(poset, a, b, family[b]) != family[a]) {
        throw Error(ErrorKind::NotCompatible,
                    "eps(" + poset.label(a) + "," + poset.label(b) + ") does not send e_" + poset.label(b) +
                        " to e_" + poset.label(a));
      }
    }
  }
  CofinalExtraction r;
  for (const auto& t : family) r.ending.push_back(t.ending());
  for (ElementId a : poset.by_label()) {
    if (std::find(r.ending.begin(), r.ending.end(), a) != r.ending.end()) r.endings.push_back(a);
  }
  r.cofinal = true;
  for (ElementId x = 0; x < poset.size() && r.cofinal; ++x) {
    r.cofinal = std::any_of(r.endings.begin(), r.endings.end(), [&](ElementId e) { return poset.leq(x, e); });
  }
  r.same_length_same_ending = true;
  r.same_length_same_level = true;
  for (ElementId a = 0; a < family.size(); ++a) {
    for (ElementId b = a + 1; b < family.size(); ++b) {
      if (family[a].entries.size() != family[b].entries.size()) continue;
      r.same_length_same_level = false;  // distinct elements a != b
      if (family[a].ending() != family[b].ending()) r.same_length_same_ending = false;
    }
  }
  return r;
}

}  // namespace invlim
