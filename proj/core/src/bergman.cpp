#include "invlim/bergman.hpp"

#include <algorithm>
#include <random>

#include "invlim/abelian.hpp"
#include "invlim/error.hpp"

namespace invlim {

std::string Generator::to_string() const {
  if (kind == Kind::F) return "f" + std::to_string(i);
  return "g" + std::to_string(i) + "_" + std::to_string(j);
}

FreeAbElement FreeAbElement::of(Generator gen, BigInt coefficient) {
  FreeAbElement e;
  e.add(gen, coefficient);
  return e;
}

BigInt FreeAbElement::coefficient(const Generator& gen) const {
  auto it = terms_.find(gen);
  return it == terms_.end() ? BigInt(0) : it->second;
}

BigInt FreeAbElement::coefficient_sum() const {
  BigInt s = 0;
  for (const auto& [gen, k] : terms_) s += k;
  return s;
}

bool FreeAbElement::only_g() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first.kind == Generator::Kind::G; });
}

int FreeAbElement::max_index() const {
  int m = 0;
  for (const auto& [gen, k] : terms_) m = std::max({m, gen.i, gen.j});
  return m;
}

std::string FreeAbElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [gen, k] : terms_) {
    if (s.empty()) {
      if (k == -1) s += "-";
      else if (k != 1) s += k.str() + "*";
    } else if (k < 0) {
      s += " - ";
      if (k != -1) s += BigInt(-k).str() + "*";
    } else {
      s += " + ";
      if (k != 1) s += k.str() + "*";
    }
    s += gen.to_string();
  }
  return s;
}

FreeAbElement& FreeAbElement::add(const Generator& gen, const BigInt& coefficient) {
  if (coefficient == 0) return *this;
  auto [it, inserted] = terms_.try_emplace(gen, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

FreeAbElement& FreeAbElement::operator+=(const FreeAbElement& other) {
  for (const auto& [gen, k] : other.terms_) add(gen, k);
  return *this;
}

FreeAbElement& FreeAbElement::operator-=(const FreeAbElement& other) {
  for (const auto& [gen, k] : other.terms_) add(gen, -k);
  return *this;
}

FreeAbElement operator*(const BigInt& k, const FreeAbElement& a) {
  FreeAbElement out;
  for (const auto& [gen, c] : a.terms()) out.add(gen, k * c);
  return out;
}

FreeAbElement relator(int i, int j, int k) {
  return FreeAbElement::g(i, j) + FreeAbElement::g(j, k) - FreeAbElement::g(i, k);
}

std::vector<FreeAbElement> h_relators(int alpha, int n) {
  std::vector<FreeAbElement> out;
  for (int i = std::max(alpha, 1); i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k) out.push_back(relator(i, j, k));
    }
  }
  return out;
}

namespace {

void check_support(const FreeAbElement& e, int n) {
  for (const auto& [gen, k] : e.terms()) {
    if (gen.kind == Generator::Kind::F) {
      throw Error(ErrorKind::SupportExceedsBound, gen.to_string() + " is not a g generator");
    }
    if (gen.i < 1 || gen.j > n || gen.i > gen.j) {
      throw Error(ErrorKind::SupportExceedsBound, gen.to_string() + " lies outside {1.." + std::to_string(n) + "}");
    }
  }
}

// Coordinates: g_ij, 1 <= i <= j <= n, in row-major order.
std::size_t coordinate(const Generator& gen, int n) {
  const auto i = static_cast<std::size_t>(gen.i - 1);
  const auto j = static_cast<std::size_t>(gen.j - 1);
  const auto nn = static_cast<std::size_t>(n);
  return i * nn - i * (i - 1) / 2 + (j - i);
}

IntVector coordinates(const FreeAbElement& e, int n) {
  IntVector v(static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1) / 2);
  for (const auto& [gen, k] : e.terms()) v[coordinate(gen, n)] = k;
  return v;
}

}  // namespace

bool h_subgroup_member(const FreeAbElement& e, int alpha, int n) {
  check_support(e, n);
  if (e.is_zero()) return true;
  const auto relators = h_relators(alpha, n);
  if (relators.empty()) return false;
  std::vector<IntVector> rows;
  for (const auto& r : relators) rows.push_back(coordinates(r, n));
  const std::size_t width = static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1) / 2;
  return in_row_lattice(IntMatrix::from_rows(rows, width), coordinates(e, n));
}

bool coset_equal(const CosetElement& a, const CosetElement& b, int n) {
  if (a.level != b.level) {
    throw Error(ErrorKind::LevelMismatch,
                "cosets at levels " + std::to_string(a.level) + " and " + std::to_string(b.level));
  }
  return h_subgroup_member(a.rep - b.rep, a.level, n);
}

CosetElement gset_bond(int alpha, int beta, const CosetElement& c) {
  if (alpha > beta) {
    throw Error(ErrorKind::NotComparable, std::to_string(alpha) + " is not below " + std::to_string(beta));
  }
  if (c.level != beta) {
    throw Error(ErrorKind::LevelMismatch, "coset lives at level " + std::to_string(c.level) + ", not " +
                                              std::to_string(beta));
  }
  if (alpha == beta) return c;
  return {alpha, c.rep + FreeAbElement::g(alpha, beta)};
}

FreeAbElement d_map(const FreeAbElement& e) {
  FreeAbElement out;
  for (const auto& [gen, k] : e.terms()) {
    if (gen.kind == Generator::Kind::F) {
      throw Error(ErrorKind::SupportExceedsBound, gen.to_string() + " is outside the domain of D");
    }
    out.add(Generator::f(gen.i), k);
    out.add(Generator::f(gen.j), -k);
  }
  return out;
}

bool BergmanDemo::all_hold() const {
  return std::all_of(steps.begin(), steps.end(), [](const DemoStep& s) { return s.holds; });
}

namespace {

bool is_thread(const std::vector<CosetElement>& c, int n) {
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (!coset_equal(gset_bond(i, j, c[j - 1]), c[i - 1], n)) return false;
    }
  }
  return true;
}

}  // namespace

BergmanDemo bergman_demo(int n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::SupportExceedsBound, "the demonstration needs n >= 2");
  BergmanDemo demo;
  demo.n = n;
  demo.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 2);
  std::uniform_int_distribution<int> small(-3, 3);

  // c_n is arbitrary; c_i = c_n + g_in + h_i with h_i in H_i.
  FreeAbElement top;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (coin(rng) == 0) top.add(Generator::g(i, j), small(rng));
    }
  }
  for (int i = 1; i <= n; ++i) {
    FreeAbElement c = top;
    if (i < n) c += FreeAbElement::g(i, n);
    for (const auto& r : h_relators(i, n)) {
      if (coin(rng) == 0) c += BigInt(small(rng)) * r;
    }
    demo.thread.push_back({i, c});
  }

  auto step = [&](std::string tag, std::string claim, bool holds, std::string detail = {}) {
    demo.steps.push_back({std::move(tag), std::move(claim), holds, std::move(detail)});
  };

  {
    bool ok = true;
    std::string detail;
    for (int alpha = 1; alpha <= n && ok; ++alpha) {
      for (const auto& r : h_relators(1, n)) {
        const int i = r.terms().begin()->first.i;
        if (h_subgroup_member(r, alpha, n) != (i >= alpha)) {
          ok = false;
          detail = r.to_string() + " at level " + std::to_string(alpha);
          break;
        }
      }
    }
    step("a", "g_ij + g_jk - g_ik lies in H_alpha exactly when i >= alpha", ok, detail);
  }

  step("b", "the sample is a thread: g_ij + c_j - c_i lies in H_i for all i < j", is_thread(demo.thread, n));

  FreeAbElement eventual;
  {
    bool ok = true;
    for (int a = 1; a <= n; ++a) {
      for (int b = a + 1; b <= n; ++b) {
        const auto gen = Generator::g(a, b);
        const BigInt k = demo.thread[n - 1].rep.coefficient(gen);
        for (int level = b; level <= n; ++level) ok = ok && demo.thread[level - 1].rep.coefficient(gen) == k;
        eventual.add(gen, k);
      }
    }
    step("eventual", "the coefficient of g_ab in c_k is the same for all k >= b", ok, "c = " + eventual.to_string());
  }

  for (const auto& c : demo.thread) demo.translated.push_back({c.level, c.rep - eventual});
  step("translate", "c_i - c is again a thread", is_thread(demo.translated, n));

  {
    bool ok = true;
    for (const auto& c : demo.translated) {
      for (const auto& [gen, k] : c.rep.terms()) ok = ok && gen.i >= c.level;
    }
    step("c", "after translation c_i involves no g_aj with a < i", ok);
  }

  {
    bool ok = true;
    for (const auto& r : h_relators(1, n)) ok = ok && d_map(r).is_zero();
    for (int i = 1; i <= n; ++i) {
      for (int j = i; j <= n; ++j) ok = ok && d_map(FreeAbElement::g(i, j)) == FreeAbElement::f(i) - FreeAbElement::f(j);
    }
    step("d", "D(g_ij) = f_i - f_j and D vanishes on every H_alpha", ok);
  }

  std::vector<FreeAbElement> images;
  for (const auto& c : demo.translated) images.push_back(d_map(c.rep));
  {
    bool ok = true;
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        ok = ok && images[i - 1] - images[j - 1] == FreeAbElement::f(i) - FreeAbElement::f(j);
      }
    }
    step("e", "D(c_i) - D(c_j) = f_i - f_j for i < j", ok);
  }

  {
    bool ok = true;
    for (int i = 1; i <= n; ++i) {
      for (const auto& [gen, k] : images[i - 1].terms()) ok = ok && gen.i >= i;
    }
    step("f", "D(c_i) involves no f_a with a < i", ok);
  }

  {
    const FreeAbElement residue = images[0] - FreeAbElement::f(1);
    bool constant = true;
    bool sums = true;
    for (int i = 1; i <= n; ++i) {
      constant = constant && images[i - 1] - FreeAbElement::f(i) == residue;
      sums = sums && images[i - 1].coefficient_sum() == 0;
    }
    // D(c_i) = f_i would force coefficient sum 1; the residue is what the truncation top absorbs.
    const bool obstruction = residue == BigInt(-1) * FreeAbElement::f(n);
    step("g", "D(c_i) - f_i = -f_n for every i, so D(c_i) has coefficient sum 0 and never equals f_i",
         constant && sums && obstruction, "residue " + residue.to_string());
  }
  return demo;
}

}  // namespace invlim
