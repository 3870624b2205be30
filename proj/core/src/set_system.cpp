#include "invlim/set_system.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "invlim/error.hpp"

namespace invlim {

namespace {

std::string pair_name(const Poset& p, ElementId i, ElementId j) {
  return "(" + p.label(i) + ", " + p.label(j) + ")";
}

}  // namespace

SetSystem SetSystem::build(Poset base, std::vector<std::vector<std::string>> carriers,
                           std::vector<CoverBond> bonds) {
  if (carriers.size() != base.size()) {
    throw Error(ErrorKind::MissingBond, "carrier count does not match the poset");
  }
  SetSystem s;
  s.base_ = std::move(base);
  s.carriers_ = std::move(carriers);
  for (ElementId i = 0; i < s.carriers_.size(); ++i) {
    std::set<std::string> seen(s.carriers_[i].begin(), s.carriers_[i].end());
    if (seen.size() != s.carriers_[i].size()) {
      throw Error(ErrorKind::DuplicateLabel, "repeated value in carrier of " + s.base_.label(i));
    }
  }
  for (const auto& b : bonds) {
    if (b.lower >= s.base_.size() || b.upper >= s.base_.size()) {
      throw Error(ErrorKind::UnknownElement, "bond index out of range");
    }
    if (!s.base_.less(b.lower, b.upper)) {
      throw Error(ErrorKind::NotComparable,
                  "bond declared on " + pair_name(s.base_, b.lower, b.upper) + " but lower < upper fails");
    }
    if (b.image.size() != s.carriers_[b.upper].size()) {
      throw Error(ErrorKind::NotFunction,
                  "bond " + pair_name(s.base_, b.lower, b.upper) + " is not defined on every element");
    }
    for (std::size_t v : b.image) {
      if (v >= s.carriers_[b.lower].size()) {
        throw Error(ErrorKind::NotFunction,
                    "bond " + pair_name(s.base_, b.lower, b.upper) + " leaves the target carrier");
      }
    }
  }
  s.bonds_ = std::move(bonds);
  for (const auto& [lo, hi] : s.base_.covers()) {
    bool found = std::any_of(s.bonds_.begin(), s.bonds_.end(),
                             [&](const CoverBond& b) { return b.lower == lo && b.upper == hi; });
    if (!found) {
      throw Error(ErrorKind::MissingBond, "no bond for cover " + pair_name(s.base_, lo, hi));
    }
  }
  s.derive_composites();
  return s;
}

SetSystem SetSystem::from_labels(Poset base, const std::map<std::string, std::vector<std::string>>& carriers,
                                 const std::vector<LabelledBond>& bonds) {
  std::vector<std::vector<std::string>> sets(base.size());
  for (const auto& [label, values] : carriers) {
    sets[base.id(label)] = values;
  }
  for (ElementId i = 0; i < base.size(); ++i) {
    if (!carriers.count(base.label(i))) {
      throw Error(ErrorKind::UnknownElement, "no carrier declared for '" + base.label(i) + "'");
    }
  }
  std::vector<CoverBond> cover_bonds;
  for (const auto& lb : bonds) {
    CoverBond b;
    b.upper = base.id(lb.upper);
    b.lower = base.id(lb.lower);
    const auto& src = sets[b.upper];
    const auto& dst = sets[b.lower];
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    b.image.assign(src.size(), kUnset);
    for (const auto& [from, to] : lb.pairs) {
      auto x = std::find(src.begin(), src.end(), from);
      auto y = std::find(dst.begin(), dst.end(), to);
      if (x == src.end() || y == dst.end()) {
        throw Error(ErrorKind::NotFunction, "map " + lb.upper + " -> " + lb.lower + ": unknown value in '" +
                                                from + " -> " + to + "'");
      }
      auto& slot = b.image[static_cast<std::size_t>(x - src.begin())];
      if (slot != kUnset) {
        throw Error(ErrorKind::NotFunction, "map " + lb.upper + " -> " + lb.lower + ": '" + from +
                                                "' mapped twice");
      }
      slot = static_cast<std::size_t>(y - dst.begin());
    }
    for (std::size_t k = 0; k < b.image.size(); ++k) {
      if (b.image[k] == kUnset) {
        throw Error(ErrorKind::NotFunction, "map " + lb.upper + " -> " + lb.lower + ": '" + src[k] +
                                                "' has no image");
      }
    }
    cover_bonds.push_back(std::move(b));
  }
  return build(std::move(base), std::move(sets), std::move(cover_bonds));
}

void SetSystem::derive_composites() {
  const std::size_t n = base_.size();
  composite_.assign(n * n, {});
  for (ElementId i = 0; i < n; ++i) {
    auto& id = composite_[i * n + i];
    id.resize(carriers_[i].size());
    for (std::size_t x = 0; x < id.size(); ++x) id[x] = x;
  }
  // Elements above i come later in the linear extension, so walking it
  // backwards sees every composite bond(c, j) before it is needed for i.
  const auto& order = base_.linear_extension();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const ElementId i = *it;
    for (ElementId j = 0; j < n; ++j) {
      if (!base_.less(i, j)) continue;
      const CoverBond* direct = nullptr;
      const CoverBond* via = nullptr;
      for (const auto& b : bonds_) {
        if (b.lower != i) continue;
        if (b.upper == j) {
          direct = &b;
          break;
        }
        if (!via && base_.leq(b.upper, j)) via = &b;
      }
      auto& out = composite_[i * n + j];
      if (direct) {
        out = direct->image;
      } else {
        const auto& rest = composite_[via->upper * n + j];
        out.resize(rest.size());
        for (std::size_t x = 0; x < rest.size(); ++x) out[x] = via->image[rest[x]];
      }
    }
  }
  // Declared bonds that were not picked as the canonical one must agree.
  for (const auto& b : bonds_) {
    if (composite_[b.lower * n + b.upper] != b.image) {
      throw Error(ErrorKind::FunctorialityViolation,
                  "two bonds declared on " + pair_name(base_, b.lower, b.upper) + " disagree");
    }
  }
  for (ElementId i = 0; i < n; ++i) {
    for (ElementId j = 0; j < n; ++j) {
      if (!base_.less(i, j)) continue;
      for (ElementId k = 0; k < n; ++k) {
        if (!base_.less(j, k)) continue;
        const auto& ij = composite_[i * n + j];
        const auto& jk = composite_[j * n + k];
        const auto& ik = composite_[i * n + k];
        for (std::size_t x = 0; x < jk.size(); ++x) {
          if (ij[jk[x]] != ik[x]) {
            throw Error(ErrorKind::FunctorialityViolation,
                        "bond(" + base_.label(i) + "," + base_.label(j) + ") o bond(" + base_.label(j) + "," +
                            base_.label(k) + ") != bond(" + base_.label(i) + "," + base_.label(k) + ") at '" +
                            carriers_[k][x] + "'");
          }
        }
      }
    }
  }
}

const std::vector<std::size_t>& SetSystem::bond(ElementId i, ElementId j) const {
  if (!base_.leq(i, j)) {
    throw Error(ErrorKind::NotComparable, "no bond for " + pair_name(base_, i, j));
  }
  return composite_[i * base_.size() + j];
}

SetSystem SetSystem::restrict_to(const std::vector<std::vector<bool>>& keep) const {
  const std::size_t n = base_.size();
  std::vector<std::vector<std::size_t>> new_index(n);
  std::vector<std::vector<std::string>> carriers(n);
  for (ElementId i = 0; i < n; ++i) {
    new_index[i].assign(carriers_[i].size(), static_cast<std::size_t>(-1));
    for (std::size_t x = 0; x < carriers_[i].size(); ++x) {
      if (keep[i][x]) {
        new_index[i][x] = carriers[i].size();
        carriers[i].push_back(carriers_[i][x]);
      }
    }
  }
  std::vector<CoverBond> bonds;
  for (const auto& b : bonds_) {
    CoverBond r{b.lower, b.upper, {}};
    for (std::size_t x = 0; x < b.image.size(); ++x) {
      if (!keep[b.upper][x]) continue;
      if (!keep[b.lower][b.image[x]]) {
        throw Error(ErrorKind::NotFunction, "restricted bond " + pair_name(base_, b.lower, b.upper) +
                                                " leaves the chosen subsets");
      }
      r.image.push_back(new_index[b.lower][b.image[x]]);
    }
    bonds.push_back(std::move(r));
  }
  return build(base_, std::move(carriers), std::move(bonds));
}

bool is_thread(const SetSystem& system, const Thread& thread) {
  const auto& p = system.base();
  if (thread.values.size() != p.size()) return false;
  for (ElementId i = 0; i < p.size(); ++i) {
    if (thread.values[i] >= system.carrier_size(i)) return false;
  }
  for (ElementId i = 0; i < p.size(); ++i) {
    for (ElementId j = 0; j < p.size(); ++j) {
      if (p.less(i, j) && system.apply(i, j, thread.values[j]) != thread.values[i]) return false;
    }
  }
  return true;
}

Tower Tower::build(std::vector<std::vector<std::string>> carriers, std::vector<std::vector<std::size_t>> maps) {
  if (carriers.empty() || maps.size() + 1 != carriers.size()) {
    throw Error(ErrorKind::MissingBond, "a tower of horizon H needs H+1 carriers and H maps");
  }
  std::vector<CoverBond> bonds;
  for (std::size_t n = 0; n < maps.size(); ++n) {
    bonds.push_back(CoverBond{n, n + 1, std::move(maps[n])});
  }
  auto chain = chain_poset(carriers.size(), 0);
  return Tower(SetSystem::build(std::move(chain), std::move(carriers), std::move(bonds)));
}

Tower Tower::from_system(SetSystem system) {
  const auto& p = system.base();
  for (ElementId i = 0; i + 1 < p.size(); ++i) {
    if (!p.less(i, i + 1) || p.label(i) != std::to_string(i)) {
      throw Error(ErrorKind::NotComparable, "system is not over the chain 0 <= 1 <= ... <= H");
    }
  }
  if (p.size() == 0) throw Error(ErrorKind::MissingBond, "empty tower");
  return Tower(std::move(system));
}

Tower clipped_decrement_tower(std::size_t width, std::size_t horizon) {
  std::vector<std::string> level;
  for (std::size_t x = 0; x < width; ++x) level.push_back(std::to_string(x));
  std::vector<std::size_t> clip(width);
  for (std::size_t x = 0; x < width; ++x) clip[x] = x == 0 ? 0 : x - 1;
  return Tower::build(std::vector<std::vector<std::string>>(horizon + 1, level),
                      std::vector<std::vector<std::size_t>>(horizon, clip));
}

SurjectivityReport is_surjective(const SetSystem& system) {
  const auto& p = system.base();
  for (ElementId i = 0; i < p.size(); ++i) {
    for (ElementId j = 0; j < p.size(); ++j) {
      if (!p.less(i, j)) continue;
      std::vector<bool> hit(system.carrier_size(i), false);
      for (std::size_t v : system.bond(i, j)) hit[v] = true;
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
        return {false, std::make_pair(i, j)};
      }
    }
  }
  return {};
}

std::vector<Thread> limit_threads(const SetSystem& system, std::size_t budget) {
  const auto& p = system.base();
  const std::size_t n = p.size();
  std::vector<ElementId> order(p.linear_extension().rbegin(), p.linear_extension().rend());
  std::vector<std::vector<ElementId>> above(n);
  for (ElementId i = 0; i < n; ++i) {
    for (ElementId j = 0; j < n; ++j) {
      if (p.less(i, j)) above[i].push_back(j);
    }
  }

  std::vector<Thread> out;
  Thread current{std::vector<std::size_t>(n, 0)};
  std::size_t visited = 0;

  auto descend = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      out.push_back(current);
      return;
    }
    const ElementId i = order[depth];
    auto assign = [&](std::size_t x) {
      if (++visited > budget) {
        throw Error(ErrorKind::BudgetExceeded,
                    "limit enumeration passed " + std::to_string(budget) + " partial assignments");
      }
      current.values[i] = x;
      self(self, depth + 1);
    };
    if (above[i].empty()) {
      for (std::size_t x = 0; x < system.carrier_size(i); ++x) assign(x);
      return;
    }
    const std::size_t forced = system.apply(i, above[i].front(), current.values[above[i].front()]);
    for (ElementId j : above[i]) {
      if (system.apply(i, j, current.values[j]) != forced) return;
    }
    assign(forced);
  };
  descend(descend, 0);
  std::sort(out.begin(), out.end());
  return out;
}

Thread thread_from_top(const SetSystem& system, std::size_t top_value) {
  auto top = maximum(system.base());
  if (!top) throw Error(ErrorKind::NoMaximum, "the index poset has no maximum");
  if (top_value >= system.carrier_size(*top)) {
    throw Error(ErrorKind::NotMember, "no element " + std::to_string(top_value) + " in the carrier at " +
                                          system.base().label(*top));
  }
  Thread t{std::vector<std::size_t>(system.base().size())};
  for (ElementId i = 0; i < system.base().size(); ++i) {
    t.values[i] = system.apply(i, *top, top_value);
  }
  return t;
}

Thread thread_from_top(const Tower& tower, std::size_t start) {
  const auto& s = tower.system();
  if (start >= s.carrier_size(0)) {
    throw Error(ErrorKind::NotMember, "start value outside X_0");
  }
  Thread t{std::vector<std::size_t>(tower.horizon() + 1)};
  t.values[0] = start;
  for (std::size_t n = 0; n < tower.horizon(); ++n) {
    const auto& bond = s.bond(n, n + 1);
    auto pre = std::find(bond.begin(), bond.end(), t.values[n]);
    if (pre == bond.end()) {
      throw Error(ErrorKind::NotSurjective, "value " + s.carrier(n)[t.values[n]] + " at level " + std::to_string(n) +
                                                " has no preimage at level " + std::to_string(n + 1));
    }
    t.values[n + 1] = static_cast<std::size_t>(pre - bond.begin());
  }
  return t;
}

bool MlReport::all_stable() const {
  return std::all_of(levels.begin(), levels.end(),
                     [](const MlLevel& l) { return l.verdict == MlVerdict::Stable; });
}

MlReport ml_report(const Tower& tower) {
  const auto& s = tower.system();
  const std::size_t h = tower.horizon();
  MlReport report{h, {}};
  for (std::size_t n = 0; n <= h; ++n) {
    MlLevel level;
    level.level = n;
    for (std::size_t m = n; m <= h; ++m) {
      std::set<std::size_t> image(s.bond(n, m).begin(), s.bond(n, m).end());
      level.images.emplace_back(image.begin(), image.end());
    }
    std::size_t m = h;
    while (m > n && level.images[m - 1 - n] == level.images[h - n]) --m;
    level.stabilizes_at = m;
    level.verdict = (m < h || n == h) ? MlVerdict::Stable : MlVerdict::UnstableAtHorizon;
    report.levels.push_back(std::move(level));
  }
  return report;
}

namespace {

struct ImageData {
  std::vector<std::vector<bool>> keep;
  std::vector<std::vector<std::size_t>> kept;
};

ImageData intersect_images(const SetSystem& system) {
  const auto& p = system.base();
  ImageData d;
  for (ElementId i = 0; i < p.size(); ++i) {
    std::vector<bool> in(system.carrier_size(i), true);
    for (ElementId j : p.up_set(i)) {
      std::vector<bool> hit(system.carrier_size(i), false);
      for (std::size_t v : system.bond(i, j)) hit[v] = true;
      for (std::size_t x = 0; x < in.size(); ++x) in[x] = in[x] && hit[x];
    }
    std::vector<std::size_t> idx;
    for (std::size_t x = 0; x < in.size(); ++x) {
      if (in[x]) idx.push_back(x);
    }
    d.keep.push_back(std::move(in));
    d.kept.push_back(std::move(idx));
  }
  return d;
}

std::vector<std::pair<ElementId, ElementId>> failing_pairs(const SetSystem& system) {
  std::vector<std::pair<ElementId, ElementId>> out;
  const auto& p = system.base();
  for (ElementId i = 0; i < p.size(); ++i) {
    for (ElementId j = 0; j < p.size(); ++j) {
      if (!p.less(i, j)) continue;
      std::vector<bool> hit(system.carrier_size(i), false);
      for (std::size_t v : system.bond(i, j)) hit[v] = true;
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace

UniversalImages universal_images(const SetSystem& system) {
  auto d = intersect_images(system);
  auto sub = system.restrict_to(d.keep);
  auto bad = failing_pairs(sub);
  return UniversalImages{std::move(sub), std::move(d.kept), std::move(bad)};
}

TowerImages universal_images(const Tower& tower) {
  auto u = universal_images(tower.system());
  return TowerImages{Tower::from_system(std::move(u.system)), std::move(u.kept), std::move(u.non_surjective)};
}

SetSystem fiber_subsystem(const SystemMap& map, const Thread& s) {
  const SetSystem& e = *map.source;
  const SetSystem& t = *map.target;
  const auto& p = e.base();
  if (t.base().size() != p.size() || map.components.size() != p.size()) {
    throw Error(ErrorKind::NotCommuting, "source, target and map disagree on the index poset");
  }
  for (ElementId i = 0; i < p.size(); ++i) {
    if (map.components[i].size() != e.carrier_size(i)) {
      throw Error(ErrorKind::NotCommuting, "map component at " + p.label(i) + " has the wrong domain");
    }
    for (std::size_t v : map.components[i]) {
      if (v >= t.carrier_size(i)) {
        throw Error(ErrorKind::NotCommuting, "map component at " + p.label(i) + " leaves the target");
      }
    }
  }
  for (ElementId i = 0; i < p.size(); ++i) {
    for (ElementId j = 0; j < p.size(); ++j) {
      if (!p.less(i, j)) continue;
      const auto& sigma = t.bond(i, j);
      std::set<std::size_t> distinct(sigma.begin(), sigma.end());
      if (distinct.size() != sigma.size()) {
        throw Error(ErrorKind::SigmaNotInjective, "target bond " + pair_name(p, i, j) + " is not injective");
      }
      for (std::size_t x = 0; x < e.carrier_size(j); ++x) {
        if (map.components[i][e.apply(i, j, x)] != sigma[map.components[j][x]]) {
          throw Error(ErrorKind::NotCommuting, "g does not commute with the bonds on " + pair_name(p, i, j));
        }
      }
    }
  }
  if (!is_thread(t, s)) throw Error(ErrorKind::NotAThread, "s is not a thread of the target system");

  std::vector<std::vector<bool>> keep(p.size());
  for (ElementId i = 0; i < p.size(); ++i) {
    keep[i].resize(e.carrier_size(i));
    bool any = false;
    for (std::size_t x = 0; x < e.carrier_size(i); ++x) {
      keep[i][x] = map.components[i][x] == s.values[i];
      any = any || keep[i][x];
    }
    if (!any) {
      throw Error(ErrorKind::EmptyFiber, "g_" + p.label(i) + " misses s_" + p.label(i));
    }
  }
  return e.restrict_to(keep);
}

}  // namespace invlim
