#include "invlim/text_format.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "invlim/error.hpp"

namespace invlim {

namespace {

const std::regex kLabel("[A-Za-z0-9_()]+");

std::string trim(const std::string& s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<std::string> split(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto at = s.find(sep, start);
    out.push_back(trim(s.substr(start, at == std::string::npos ? std::string::npos : at - start)));
    if (at == std::string::npos) break;
    start = at + sep.size();
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + msg);
}

std::string label_at(std::size_t line, const std::string& s) {
  if (!std::regex_match(s, kLabel)) fail(line, "bad label '" + s + "'");
  return s;
}

std::size_t number_at(std::size_t line, const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
    fail(line, "expected a number, got '" + s + "'");
  }
  return static_cast<std::size_t>(std::stoull(s));
}

// "head: rest" split at the first colon.
std::pair<std::string, std::string> at_colon(std::size_t line, const std::string& s) {
  auto c = s.find(':');
  if (c == std::string::npos) fail(line, "expected ':' in '" + s + "'");
  return {trim(s.substr(0, c)), trim(s.substr(c + 1))};
}

std::vector<std::string> braced_set(std::size_t line, const std::string& s) {
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') fail(line, "expected '{ ... }'");
  std::vector<std::string> out;
  for (const auto& w : words(s.substr(1, s.size() - 2))) out.push_back(label_at(line, w));
  return out;
}

std::vector<std::pair<std::string, std::string>> arrow_pairs(std::size_t line, const std::string& s) {
  std::vector<std::pair<std::string, std::string>> out;
  if (s.empty()) return out;
  for (const auto& item : split(s, ",")) {
    auto sides = split(item, "->");
    if (sides.size() != 2) fail(line, "expected 'x -> y', got '" + item + "'");
    out.emplace_back(label_at(line, sides[0]), label_at(line, sides[1]));
  }
  return out;
}

std::string matrix_text(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) s += ',';
    s += '[';
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) s += ',';
      s += m(r, c).str();
    }
    s += ']';
  }
  return s + "]";
}

// A "[]" literal stands for the zero map of the expected shape.
IntMatrix shaped(const IntMatrix& m, std::size_t rows, std::size_t cols) {
  if (m.rows() == 0 && rows != 0) return IntMatrix(rows, cols);
  return m;
}

struct Line {
  std::size_t number;
  std::string text;
};

struct Block {
  std::string kind;
  Line header;
  std::vector<Line> body;
};

const std::vector<std::string> kHeaders = {"poset", "system", "tower", "group", "hom", "absystem", "sequence"};

// Rethrows builder errors with the block's line attached.
template <class F>
auto at_block(const Block& b, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    throw Error(e.kind(), "block at line " + std::to_string(b.header.number) + ": " + e.message());
  }
}

class Parser {
 public:
  Document doc;

  void run(const std::string& text) {
    std::vector<Block> blocks;
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
      ++number;
      auto hash = raw.find('#');
      std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (line.empty()) continue;
      auto first = words(line).front();
      if (auto c = first.find(':'); c != std::string::npos) first = first.substr(0, c);
      if (std::find(kHeaders.begin(), kHeaders.end(), first) != kHeaders.end()) {
        blocks.push_back({first, {number, line}, {}});
      } else if (blocks.empty()) {
        fail(number, "body line outside any block: '" + line + "'");
      } else {
        blocks.back().body.push_back({number, line});
      }
    }
    for (const auto& b : blocks) {
      if (b.kind == "poset") poset(b);
      else if (b.kind == "system") system(b);
      else if (b.kind == "tower") tower(b);
      else if (b.kind == "group") group(b);
      else if (b.kind == "hom") hom(b);
      else if (b.kind == "absystem") absystem(b);
      else sequence(b);
    }
  }

 private:
  void no_body(const Block& b) {
    if (!b.body.empty()) fail(b.body.front().number, "'" + b.kind + "' takes no body");
  }

  void unique(const Block& b, const std::string& name) {
    auto taken = [&](const auto& v) {
      return std::any_of(v.begin(), v.end(), [&](const auto& x) { return x.name == name; });
    };
    if (taken(doc.posets) || taken(doc.systems) || taken(doc.towers) || taken(doc.groups) || taken(doc.homs) ||
        taken(doc.absystems) || taken(doc.sequences)) {
      fail(b.header.number, "name '" + name + "' already used");
    }
  }

  const Poset& poset_named(std::size_t line, const std::string& name) {
    const Poset* p = doc.find_poset(name);
    if (!p) fail(line, "unknown poset '" + name + "'");
    return *p;
  }

  // "KIND NAME over POSET"
  std::pair<std::string, std::string> named_over(const Block& b) {
    auto w = words(b.header.text);
    if (w.size() != 4 || w[2] != "over") fail(b.header.number, "expected '" + b.kind + " NAME over POSET'");
    return {label_at(b.header.number, w[1]), label_at(b.header.number, w[3])};
  }

  void poset(const Block& b) {
    auto w = words(b.header.text);
    if (w.size() != 2) fail(b.header.number, "expected 'poset NAME'");
    const auto name = label_at(b.header.number, w[1]);
    unique(b, name);
    std::vector<std::string> labels;
    std::vector<std::pair<std::string, std::string>> covers;
    for (const auto& l : b.body) {
      auto [head, rest] = at_colon(l.number, l.text);
      if (head == "elements") {
        for (const auto& e : words(rest)) labels.push_back(label_at(l.number, e));
      } else if (head == "covers") {
        if (rest.empty()) continue;
        for (const auto& item : split(rest, ",")) {
          auto chain = split(item, "<");
          if (chain.size() < 2) fail(l.number, "expected 'a < b', got '" + item + "'");
          for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
            covers.emplace_back(label_at(l.number, chain[k]), label_at(l.number, chain[k + 1]));
          }
        }
      } else {
        fail(l.number, "unknown poset line '" + head + "'");
      }
    }
    doc.posets.push_back({name, at_block(b, [&] { return Poset::build(labels, covers); })});
  }

  void system(const Block& b) {
    auto [name, over] = named_over(b);
    unique(b, name);
    const Poset& base = poset_named(b.header.number, over);
    std::map<std::string, std::vector<std::string>> carriers;
    std::vector<LabelledBond> bonds;
    for (const auto& l : b.body) {
      auto [head, rest] = at_colon(l.number, l.text);
      auto w = words(head);
      if (w.size() == 2 && w[0] == "set") {
        if (!carriers.emplace(label_at(l.number, w[1]), braced_set(l.number, rest)).second) {
          fail(l.number, "set '" + w[1] + "' declared twice");
        }
      } else if (w.size() == 4 && w[0] == "map" && w[2] == "->") {
        bonds.push_back({label_at(l.number, w[1]), label_at(l.number, w[3]), arrow_pairs(l.number, rest)});
      } else {
        fail(l.number, "expected 'set a: { ... }' or 'map b -> a: ...'");
      }
    }
    doc.systems.push_back({name, over, at_block(b, [&] { return SetSystem::from_labels(base, carriers, bonds); })});
  }

  void tower(const Block& b) {
    auto w = words(b.header.text);
    if (w.size() != 4 || w[2] != "horizon") fail(b.header.number, "expected 'tower NAME horizon H'");
    TowerSpec spec;
    spec.name = label_at(b.header.number, w[1]);
    unique(b, spec.name);
    spec.horizon = number_at(b.header.number, w[3]);
    auto rule_of = [](const std::string& s) -> std::optional<TowerSpec::Rule> {
      if (s == "clipdec") return TowerSpec::Rule::ClipDec;
      if (s == "identity") return TowerSpec::Rule::Identity;
      return std::nullopt;
    };
    for (const auto& l : b.body) {
      auto [head, rest] = at_colon(l.number, l.text);
      auto hw = words(head);
      if (hw.size() == 2 && hw[0] == "set") {
        auto values = braced_set(l.number, rest);
        if (hw[1] == "all") spec.set_all = std::move(values);
        else spec.sets[number_at(l.number, hw[1])] = std::move(values);
      } else if (hw.size() == 2 && hw[0] == "map" && hw[1] == "all") {
        auto rule = rule_of(rest);
        if (!rule) fail(l.number, "uniform map rule must be clipdec or identity");
        spec.map_all = *rule;
      } else if (hw.size() == 4 && hw[0] == "map" && hw[2] == "->") {
        const auto upper = number_at(l.number, hw[1]);
        const auto lower = number_at(l.number, hw[3]);
        if (upper != lower + 1) fail(l.number, "tower maps go from n+1 to n");
        TowerSpec::MapRule rule;
        if (auto r = rule_of(rest)) rule.rule = *r;
        else rule.pairs = arrow_pairs(l.number, rest);
        spec.maps[lower] = std::move(rule);
      } else {
        fail(l.number, "expected a tower 'set' or 'map' line");
      }
    }
    at_block(b, [&] { return spec.build(); });  // validate now
    doc.towers.push_back(std::move(spec));
  }

  void group(const Block& b) {
    no_body(b);
    // group NAME gens K [relations MATRIX]
    const auto& t = b.header.text;
    auto w = words(t);
    if (w.size() < 4 || w[2] != "gens") fail(b.header.number, "expected 'group NAME gens K relations [[...]]'");
    const auto name = label_at(b.header.number, w[1]);
    unique(b, name);
    const auto gens = number_at(b.header.number, w[3]);
    IntMatrix rel(0, gens);
    if (w.size() > 4) {
      auto at = t.find("relations");
      if (w[4] != "relations" || at == std::string::npos) fail(b.header.number, "expected 'relations'");
      rel = parse_matrix(trim(t.substr(at + 9)), gens);
    }
    doc.groups.push_back({name, at_block(b, [&] { return FgAbGroup(gens, rel); })});
  }

  const FgAbGroup& group_named(std::size_t line, const std::string& name) {
    const FgAbGroup* g = doc.find_group(name);
    if (!g) fail(line, "unknown group '" + name + "'");
    return *g;
  }

  void hom(const Block& b) {
    no_body(b);
    const auto& t = b.header.text;
    auto w = words(t);
    if (w.size() < 7 || w[3] != "->" || w[5] != "matrix") fail(b.header.number, "expected 'hom NAME A -> B matrix [[...]]'");
    const auto name = label_at(b.header.number, w[1]);
    unique(b, name);
    const auto& src = group_named(b.header.number, w[2]);
    const auto& tgt = group_named(b.header.number, w[4]);
    auto m = shaped(parse_matrix(trim(t.substr(t.find("matrix") + 6)), src.ngens()), tgt.ngens(), src.ngens());
    doc.homs.push_back({name, w[2], w[4], at_block(b, [&] { return AbHom(src, tgt, m); })});
  }

  // "gens K [relations M]" or a group name.
  FgAbGroup inline_group(std::size_t line, const std::string& s) {
    auto w = words(s);
    if (w.size() == 1) return group_named(line, w[0]);
    if (w.size() < 2 || w[0] != "gens") fail(line, "expected 'gens K relations [[...]]' or a group name");
    const auto gens = number_at(line, w[1]);
    IntMatrix rel(0, gens);
    if (w.size() > 2) {
      auto at = s.find("relations");
      if (w[2] != "relations" || at == std::string::npos) fail(line, "expected 'relations'");
      rel = parse_matrix(trim(s.substr(at + 9)), gens);
    }
    try {
      return FgAbGroup(gens, rel);
    } catch (const Error& e) {
      fail(line, e.message());
    }
  }

  void absystem(const Block& b) {
    auto [name, over] = named_over(b);
    unique(b, name);
    const Poset& base = poset_named(b.header.number, over);
    std::vector<std::optional<FgAbGroup>> groups(base.size());
    struct PendingBond {
      std::size_t line;
      ElementId upper, lower;
      std::string matrix;
    };
    std::vector<PendingBond> pending;
    auto element = [&](std::size_t line, const std::string& label) {
      auto id = base.find(label);
      if (!id) fail(line, "unknown element '" + label + "'");
      return *id;
    };
    for (const auto& l : b.body) {
      auto w = words(l.text);
      if (!w.empty() && w[0] == "at") {
        auto [head, rest] = at_colon(l.number, l.text);
        auto hw = words(head);
        if (hw.size() != 2) fail(l.number, "expected 'at a: ...'");
        auto id = element(l.number, hw[1]);
        if (groups[id]) fail(l.number, "group at '" + hw[1] + "' declared twice");
        groups[id] = inline_group(l.number, rest);
      } else if (w.size() >= 5 && w[0] == "bond" && w[2] == "->" && w[4] == "matrix") {
        pending.push_back({l.number, element(l.number, w[1]), element(l.number, w[3]),
                           trim(l.text.substr(l.text.find("matrix") + 6))});
      } else {
        fail(l.number, "expected 'at a: ...' or 'bond b -> a matrix [[...]]'");
      }
    }
    std::vector<FgAbGroup> gs;
    for (ElementId i = 0; i < base.size(); ++i) {
      if (!groups[i]) fail(b.header.number, "no group declared at '" + base.label(i) + "'");
      gs.push_back(*groups[i]);
    }
    std::vector<AbBond> bonds;
    for (const auto& p : pending) {
      const auto rows = gs[p.lower].ngens();
      const auto cols = gs[p.upper].ngens();
      bonds.push_back({p.lower, p.upper, shaped(parse_matrix(p.matrix, cols), rows, cols)});
    }
    doc.absystems.push_back({name, over, at_block(b, [&] { return AbSystem::build(base, gs, bonds); })});
  }

  void sequence(const Block& b) {
    // sequence NAME: A -> B -> C
    auto [head, rest] = at_colon(b.header.number, b.header.text);
    auto hw = words(head);
    auto parts = split(rest, "->");
    if (hw.size() != 2 || parts.size() != 3) fail(b.header.number, "expected 'sequence NAME: A -> B -> C'");
    NamedSequence s;
    s.name = label_at(b.header.number, hw[1]);
    unique(b, s.name);
    s.a = parts[0];
    s.b = parts[1];
    s.c = parts[2];
    const AbSystem* sys[3];
    for (int k = 0; k < 3; ++k) {
      sys[k] = doc.find_absystem(parts[k]);
      if (!sys[k]) fail(b.header.number, "unknown absystem '" + parts[k] + "'");
    }
    const Poset& base = sys[0]->base();
    for (int k = 1; k < 3; ++k) {
      if (sys[k]->base().labels() != base.labels()) fail(b.header.number, "systems are over different posets");
    }
    std::vector<std::optional<IntMatrix>> u(base.size()), v(base.size());
    for (const auto& l : b.body) {
      auto w = words(l.text);
      if (w.size() < 4 || (w[0] != "u" && w[0] != "v") || w[2] != "matrix") {
        fail(l.number, "expected 'u a matrix [[...]]' or 'v a matrix [[...]]'");
      }
      auto id = base.find(w[1]);
      if (!id) fail(l.number, "unknown element '" + w[1] + "'");
      const bool is_u = w[0] == "u";
      const auto& src = (is_u ? sys[0] : sys[1])->group(*id);
      const auto& tgt = (is_u ? sys[1] : sys[2])->group(*id);
      auto& slot = is_u ? u[*id] : v[*id];
      if (slot) fail(l.number, w[0] + " at '" + w[1] + "' declared twice");
      slot = shaped(parse_matrix(trim(l.text.substr(l.text.find("matrix") + 6)), src.ngens()), tgt.ngens(),
                    src.ngens());
    }
    for (ElementId i = 0; i < base.size(); ++i) {
      s.u.push_back(u[i] ? *u[i] : IntMatrix(sys[1]->group(i).ngens(), sys[0]->group(i).ngens()));
      s.v.push_back(v[i] ? *v[i] : IntMatrix(sys[2]->group(i).ngens(), sys[1]->group(i).ngens()));
    }
    doc.sequences.push_back(std::move(s));
  }
};

}  // namespace

Tower TowerSpec::build(std::optional<std::size_t> horizon_override) const {
  const std::size_t h = horizon_override.value_or(horizon);
  std::vector<std::vector<std::string>> carriers;
  for (std::size_t n = 0; n <= h; ++n) {
    if (auto it = sets.find(n); it != sets.end()) carriers.push_back(it->second);
    else if (set_all) carriers.push_back(*set_all);
    else throw Error(ErrorKind::ParseError, "tower " + name + ": level " + std::to_string(n) + " has no set");
  }
  std::vector<std::vector<std::size_t>> maps;
  for (std::size_t n = 0; n < h; ++n) {
    MapRule rule;
    if (const MapRule* it = maps_find(n)) rule = *it;
    else if (map_all) rule.rule = *map_all;
    else throw Error(ErrorKind::ParseError, "tower " + name + ": no map " + std::to_string(n + 1) + " -> " +
                                                std::to_string(n));
    const auto& up = carriers[n + 1];
    const auto& down = carriers[n];
    std::vector<std::size_t> image(up.size());
    for (std::size_t x = 0; x < up.size(); ++x) {
      switch (rule.rule) {
        case Rule::ClipDec: image[x] = x == 0 ? 0 : x - 1; break;
        case Rule::Identity: image[x] = x; break;
        case Rule::Explicit: {
          auto p = std::find_if(rule.pairs.begin(), rule.pairs.end(), [&](const auto& pr) { return pr.first == up[x]; });
          if (p == rule.pairs.end()) {
            throw Error(ErrorKind::NotFunction, "tower " + name + ": '" + up[x] + "' at level " +
                                                    std::to_string(n + 1) + " has no image");
          }
          auto y = std::find(down.begin(), down.end(), p->second);
          if (y == down.end()) {
            throw Error(ErrorKind::NotFunction, "tower " + name + ": '" + p->second + "' is not at level " +
                                                    std::to_string(n));
          }
          image[x] = static_cast<std::size_t>(y - down.begin());
          break;
        }
      }
    }
    maps.push_back(std::move(image));
  }
  return Tower::build(std::move(carriers), std::move(maps));
}

const TowerSpec::MapRule* TowerSpec::maps_find(std::size_t n) const {
  auto it = maps.find(n);
  return it == maps.end() ? nullptr : &it->second;
}

const Poset* Document::find_poset(const std::string& name) const {
  for (const auto& p : posets) {
    if (p.name == name) return &p.poset;
  }
  return nullptr;
}

const AbSystem* Document::find_absystem(const std::string& name) const {
  for (const auto& s : absystems) {
    if (s.name == name) return &s.system;
  }
  return nullptr;
}

const FgAbGroup* Document::find_group(const std::string& name) const {
  for (const auto& g : groups) {
    if (g.name == name) return &g.group;
  }
  return nullptr;
}

SequenceOfSystems Document::sequence(const NamedSequence& s) const {
  SequenceOfSystems out;
  out.a = find_absystem(s.a);
  out.b = find_absystem(s.b);
  out.c = find_absystem(s.c);
  if (!out.a || !out.b || !out.c) throw Error(ErrorKind::ParseError, "sequence " + s.name + " names an unknown system");
  out.u = s.u;
  out.v = s.v;
  return out;
}

Document parse_document(const std::string& text) {
  Parser p;
  p.run(text);
  return std::move(p.doc);
}

Document read_document_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

IntMatrix parse_matrix(const std::string& text, std::size_t cols_if_empty) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  auto bad = [&] { throw Error(ErrorKind::ParseError, "bad matrix literal '" + text + "'"); };
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') bad();
  const std::string inner = s.substr(1, s.size() - 2);
  if (inner.empty()) return IntMatrix(0, cols_if_empty);
  std::vector<IntVector> rows;
  std::size_t pos = 0;
  while (pos < inner.size()) {
    if (inner[pos] != '[') bad();
    auto close = inner.find(']', pos);
    if (close == std::string::npos) bad();
    IntVector row;
    const std::string body = inner.substr(pos + 1, close - pos - 1);
    if (!body.empty()) {
      for (const auto& item : split(body, ",")) {
        const std::size_t digits = item.size() - ((!item.empty() && item[0] == '-') ? 1 : 0);
        if (digits == 0 || !std::all_of(item.end() - static_cast<std::ptrdiff_t>(digits), item.end(),
                                        [](unsigned char c) { return std::isdigit(c); })) {
          bad();
        }
        row.emplace_back(item);
      }
    }
    if (!rows.empty() && rows.front().size() != row.size()) bad();
    rows.push_back(std::move(row));
    pos = close + 1;
    if (pos < inner.size()) {
      if (inner[pos] != ',') bad();
      ++pos;
      if (pos == inner.size()) bad();
    }
  }
  return IntMatrix::from_rows(rows, rows.front().size());
}

std::string print_poset(const std::string& name, const Poset& poset) {
  std::string s = "poset " + name + "\n  elements:";
  for (const auto& l : poset.labels()) s += " " + l;
  s += "\n  covers:";
  bool first = true;
  for (const auto& [lo, hi] : poset.covers()) {
    s += first ? " " : ", ";
    first = false;
    s += poset.label(lo) + " < " + poset.label(hi);
  }
  return s + "\n";
}

std::string print_system(const std::string& name, const std::string& over, const SetSystem& system) {
  const Poset& p = system.base();
  std::string s = "system " + name + " over " + over + "\n";
  for (ElementId i = 0; i < p.size(); ++i) {
    s += "  set " + p.label(i) + ": {";
    for (const auto& v : system.carrier(i)) s += " " + v;
    s += " }\n";
  }
  for (const auto& b : system.declared_bonds()) {
    s += "  map " + p.label(b.upper) + " -> " + p.label(b.lower) + ":";
    for (std::size_t x = 0; x < b.image.size(); ++x) {
      s += (x ? ", " : " ") + system.carrier(b.upper)[x] + " -> " + system.carrier(b.lower)[b.image[x]];
    }
    s += "\n";
  }
  return s;
}

std::string print_tower(const TowerSpec& t) {
  auto rule_name = [](TowerSpec::Rule r) { return r == TowerSpec::Rule::ClipDec ? "clipdec" : "identity"; };
  auto set_text = [](const std::vector<std::string>& v) {
    std::string s = "{";
    for (const auto& x : v) s += " " + x;
    return s + " }";
  };
  std::string s = "tower " + t.name + " horizon " + std::to_string(t.horizon) + "\n";
  if (t.set_all) s += "  set all: " + set_text(*t.set_all) + "\n";
  for (const auto& [n, v] : t.sets) s += "  set " + std::to_string(n) + ": " + set_text(v) + "\n";
  if (t.map_all) s += std::string("  map all: ") + rule_name(*t.map_all) + "\n";
  for (const auto& [n, rule] : t.maps) {
    s += "  map " + std::to_string(n + 1) + " -> " + std::to_string(n) + ":";
    if (rule.rule != TowerSpec::Rule::Explicit) {
      s += std::string(" ") + rule_name(rule.rule);
    } else {
      for (std::size_t k = 0; k < rule.pairs.size(); ++k) {
        s += (k ? ", " : " ") + rule.pairs[k].first + " -> " + rule.pairs[k].second;
      }
    }
    s += "\n";
  }
  return s;
}

std::string print_document(const Document& doc) {
  std::vector<std::string> blocks;
  for (const auto& p : doc.posets) blocks.push_back(print_poset(p.name, p.poset));
  for (const auto& g : doc.groups) {
    blocks.push_back("group " + g.name + " gens " + std::to_string(g.group.ngens()) + " relations " +
                     matrix_text(g.group.relations()) + "\n");
  }
  for (const auto& h : doc.homs) {
    blocks.push_back("hom " + h.name + " " + h.source + " -> " + h.target + " matrix " +
                     matrix_text(shaped(h.hom.matrix(), h.hom.target().ngens(), h.hom.source().ngens())) + "\n");
  }
  for (const auto& s : doc.systems) blocks.push_back(print_system(s.name, s.over, s.system));
  for (const auto& t : doc.towers) blocks.push_back(print_tower(t));
  for (const auto& a : doc.absystems) {
    const Poset& p = a.system.base();
    std::string s = "absystem " + a.name + " over " + a.over + "\n";
    for (ElementId i = 0; i < p.size(); ++i) {
      const auto& g = a.system.group(i);
      s += "  at " + p.label(i) + ": gens " + std::to_string(g.ngens()) + " relations " + matrix_text(g.relations()) +
           "\n";
    }
    for (const auto& b : a.system.declared_bonds()) {
      s += "  bond " + p.label(b.upper) + " -> " + p.label(b.lower) + " matrix " +
           matrix_text(shaped(b.matrix, a.system.group(b.lower).ngens(), a.system.group(b.upper).ngens())) + "\n";
    }
    blocks.push_back(s);
  }
  for (const auto& q : doc.sequences) {
    std::string s = "sequence " + q.name + ": " + q.a + " -> " + q.b + " -> " + q.c + "\n";
    const AbSystem* a = doc.find_absystem(q.a);
    const Poset& p = a->base();
    for (ElementId i = 0; i < p.size(); ++i) s += "  u " + p.label(i) + " matrix " + matrix_text(q.u[i]) + "\n";
    for (ElementId i = 0; i < p.size(); ++i) s += "  v " + p.label(i) + " matrix " + matrix_text(q.v[i]) + "\n";
    blocks.push_back(s);
  }
  std::string out;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (k) out += "\n";
    out += blocks[k];
  }
  return out;
}

}  // namespace invlim
