#include "generators.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace invlim::testgen {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

long long uniform_ll(std::mt19937_64& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

namespace {

std::vector<std::pair<ElementId, ElementId>> random_covers(std::mt19937_64& rng, std::size_t n, double edge_p) {
  std::vector<ElementId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::pair<ElementId, ElementId>> covers;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (chance(rng, edge_p)) covers.emplace_back(order[a], order[b]);
    }
  }
  return covers;
}

std::vector<std::string> element_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  return labels;
}

std::vector<std::string> value_labels(const std::string& prefix, std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return labels;
}

// All assignments on `elements` that respect the declared bonds among them.
std::vector<std::vector<std::size_t>> cover_threads(const Poset& base, const std::vector<std::size_t>& sizes,
                                                    const std::vector<CoverBond>& bonds,
                                                    const std::vector<ElementId>& elements) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> value(base.size(), 0);
  for (ElementId e : elements) {
    if (sizes[e] == 0) return out;
  }
  std::vector<bool> inside(base.size(), false);
  for (ElementId e : elements) inside[e] = true;
  for (;;) {
    bool ok = true;
    for (const auto& b : bonds) {
      if (inside[b.lower] && inside[b.upper] && b.image[value[b.upper]] != value[b.lower]) ok = false;
    }
    if (ok) out.push_back(value);
    std::size_t k = 0;
    while (k < elements.size()) {
      auto& v = value[elements[k]];
      if (++v < sizes[elements[k]]) break;
      v = 0;
      ++k;
    }
    if (k == elements.size()) break;
  }
  return out;
}

}  // namespace

Poset random_poset(std::mt19937_64& rng, std::size_t max_elements, double edge_p) {
  const std::size_t n = uniform(rng, 1, max_elements);
  return Poset::from_indices(element_labels(n), random_covers(rng, n, edge_p));
}

Poset random_poset_with_max(std::mt19937_64& rng, std::size_t max_elements, double edge_p) {
  const std::size_t n = uniform(rng, 0, max_elements - 1);
  auto covers = random_covers(rng, n, edge_p);
  auto labels = element_labels(n);
  labels.push_back("t");
  for (ElementId i = 0; i < n; ++i) covers.emplace_back(i, n);
  return Poset::from_indices(labels, covers);
}

SetSystem random_set_system(const Poset& base, std::mt19937_64& rng, std::size_t max_carrier) {
  std::vector<std::size_t> sizes(base.size(), 0);
  std::vector<CoverBond> bonds;
  std::vector<std::vector<std::vector<std::size_t>>> values(base.size());
  for (ElementId j : base.linear_extension()) {
    std::vector<ElementId> below;
    for (ElementId i : base.down_set(j)) {
      if (i != j) below.push_back(i);
    }
    auto threads = cover_threads(base, sizes, bonds, below);
    std::size_t size = chance(rng, 0.1) ? 0 : uniform(rng, 1, max_carrier);
    if (threads.empty()) size = 0;
    sizes[j] = size;
    std::vector<std::vector<std::size_t>> chosen;
    for (std::size_t x = 0; x < size; ++x) chosen.push_back(threads[uniform(rng, 0, threads.size() - 1)]);
    for (const auto& [lo, hi] : base.covers()) {
      if (hi != j) continue;
      CoverBond b{lo, hi, {}};
      for (const auto& t : chosen) b.image.push_back(t[lo]);
      bonds.push_back(std::move(b));
    }
  }
  std::vector<std::vector<std::string>> carriers;
  for (ElementId i = 0; i < base.size(); ++i) carriers.push_back(value_labels("x", sizes[i]));
  return SetSystem::build(base, std::move(carriers), std::move(bonds));
}

SetSystem random_surjective_set_system(const Poset& base, std::mt19937_64& rng, std::size_t max_carrier) {
  const std::size_t m = uniform(rng, 1, max_carrier);
  // block[i][p]: block index of point p in the partition at i.
  std::vector<std::vector<std::size_t>> block(base.size());
  const auto& order = base.linear_extension();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const ElementId i = *it;
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t p) {
      while (parent[p] != p) p = parent[p] = parent[parent[p]];
      return p;
    };
    auto merge = [&](std::size_t p, std::size_t q) { parent[find(p)] = find(q); };
    for (const auto& [lo, hi] : base.covers()) {
      if (lo != i) continue;
      for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = p + 1; q < m; ++q) {
          if (block[hi][p] == block[hi][q]) merge(p, q);
        }
      }
    }
    const std::size_t extra = uniform(rng, 0, 2);
    for (std::size_t k = 0; k < extra && m > 1; ++k) {
      if (chance(rng, 0.5)) merge(uniform(rng, 0, m - 1), uniform(rng, 0, m - 1));
    }
    std::vector<std::size_t> id(m, m);
    std::size_t next = 0;
    block[i].resize(m);
    for (std::size_t p = 0; p < m; ++p) {
      auto r = find(p);
      if (id[r] == m) id[r] = next++;
      block[i][p] = id[r];
    }
  }
  std::vector<std::vector<std::string>> carriers;
  for (ElementId i = 0; i < base.size(); ++i) {
    carriers.push_back(value_labels("b", *std::max_element(block[i].begin(), block[i].end()) + 1));
  }
  std::vector<CoverBond> bonds;
  for (const auto& [lo, hi] : base.covers()) {
    CoverBond b{lo, hi, std::vector<std::size_t>(carriers[hi].size())};
    for (std::size_t p = 0; p < m; ++p) b.image[block[hi][p]] = block[lo][p];
    bonds.push_back(std::move(b));
  }
  return SetSystem::build(base, std::move(carriers), std::move(bonds));
}

Tower random_tower(std::mt19937_64& rng, std::size_t horizon, std::size_t max_carrier) {
  std::vector<std::size_t> sizes(horizon + 1);
  for (auto& s : sizes) s = uniform(rng, 1, max_carrier);
  std::size_t settled_from = horizon + 1;
  if (chance(rng, 0.5) && horizon >= 2) {
    settled_from = uniform(rng, 1, horizon - 1);
    for (std::size_t n = settled_from; n <= horizon; ++n) sizes[n] = sizes[settled_from];
  }
  std::vector<std::vector<std::string>> carriers;
  for (auto s : sizes) carriers.push_back(value_labels("", s));
  std::vector<std::vector<std::size_t>> maps;
  for (std::size_t n = 0; n < horizon; ++n) {
    std::vector<std::size_t> image(sizes[n + 1]);
    if (n >= settled_from) {
      std::iota(image.begin(), image.end(), 0);
      std::shuffle(image.begin(), image.end(), rng);
    } else {
      for (auto& y : image) y = uniform(rng, 0, sizes[n] - 1);
    }
    maps.push_back(std::move(image));
  }
  return Tower::build(std::move(carriers), std::move(maps));
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long long lo, long long hi) {
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = uniform_ll(rng, lo, hi);
  }
  return m;
}

ExactSequence random_exact_sequence(const Poset& base, std::mt19937_64& rng, std::size_t g) {
  const std::size_t n = base.size();
  std::vector<IntMatrix> local(n);
  for (ElementId i = 0; i < n; ++i) local[i] = random_matrix(rng, uniform(rng, 0, 1), g, -3, 3);
  std::vector<IntMatrix> k(n);
  for (ElementId i = 0; i < n; ++i) {
    IntMatrix acc(0, g);
    for (ElementId j : base.up_set(i)) acc = vstack(acc, local[j]);
    k[i] = row_lattice_basis(acc);
  }
  IntMatrix s;
  do {
    s = row_lattice_basis(random_matrix(rng, uniform(rng, 1, g), g, -2, 2));
  } while (s.rows() == 0);
  const std::size_t r = s.rows();

  std::vector<FgAbGroup> ga, gb, gc;
  for (ElementId i = 0; i < n; ++i) {
    // S cap K_i in S coordinates: left kernel of [S; K_i], first r entries.
    IntMatrix joint = vstack(s, k[i]);
    IntMatrix z = integer_kernel(joint.transposed());
    ga.emplace_back(r, z.block(0, 0, z.rows(), r));
    gb.emplace_back(g, k[i]);
    gc.emplace_back(g, joint);
  }
  std::vector<AbBond> ba, bb, bc;
  for (const auto& [lo, hi] : base.covers()) {
    ba.push_back({lo, hi, IntMatrix::identity(r)});
    bb.push_back({lo, hi, IntMatrix::identity(g)});
    bc.push_back({lo, hi, IntMatrix::identity(g)});
  }
  return ExactSequence{AbSystem::build(base, ga, ba), AbSystem::build(base, gb, bb), AbSystem::build(base, gc, bc),
                       std::vector<IntMatrix>(n, s.transposed()), std::vector<IntMatrix>(n, IntMatrix::identity(g))};
}

}  // namespace invlim::testgen
