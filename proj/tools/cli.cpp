#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "invlim/bergman.hpp"
#include "invlim/derived.hpp"
#include "invlim/error.hpp"
#include "invlim/henkin.hpp"
#include "invlim/set_system.hpp"
#include "invlim/text_format.hpp"

namespace invlim::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  bool json = false;
  bool timing = false;
  std::uint64_t seed = 0;
  std::size_t budget = kDefaultBudget;
  std::optional<std::size_t> horizon;
  std::string name;
};

/// What one invocation produced; rendered as text or JSON at the end.
struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  std::optional<bool> verdict;
  Json result = Json::object();
  std::vector<std::string> lines;
  double elapsed_ms = 0;

  void line(std::string s) { lines.push_back(std::move(s)); }
};

struct Input {
  std::string path;
  Document doc;
};

Input load(const std::string& path, RunReport& report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  report.inputs.emplace_back(path, digest(text));
  return {path, parse_document(text)};
}

template <class T>
const T* pick(const std::vector<T>& items, const std::string& name) {
  if (name.empty()) return items.empty() ? nullptr : &items.front();
  for (const auto& item : items) {
    if (item.name == name) return &item;
  }
  return nullptr;
}

template <class T>
const T& require(const std::vector<T>& items, const Options& opt, const Input& in, const char* what) {
  if (const T* p = pick(items, opt.name)) return *p;
  std::string msg = std::string("no ") + what + " block";
  if (!opt.name.empty()) msg += " named '" + opt.name + "'";
  throw Error(ErrorKind::ParseError, msg + " in '" + in.path + "'");
}

Json big(const BigInt& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max()) {
    return static_cast<long long>(x);
  }
  return x.str();
}

Json invariants_json(const GroupInvariants& inv) {
  Json torsion = Json::array();
  for (const auto& t : inv.torsion) torsion.push_back(big(t));
  return Json{{"free_rank", inv.free_rank}, {"torsion", torsion}};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string thread_text(const SetSystem& s, const Thread& t) {
  std::string out = "(";
  for (ElementId i = 0; i < t.values.size(); ++i) {
    if (i) out += ", ";
    out += s.base().label(i) + "=" + s.carrier(i)[t.values[i]];
  }
  return out + ")";
}

std::string values_text(const SetSystem& s, ElementId i, const std::vector<std::size_t>& idx) {
  std::string out = "{";
  for (auto x : idx) out += " " + s.carrier(i)[x];
  return out + (idx.empty() ? "}" : " }");
}

/// A set system from the file: a `system` block, or else a tower.
struct SystemChoice {
  std::optional<SetSystem> system;
  std::optional<Tower> tower;
  const SetSystem& get() const { return system ? *system : tower->system(); }
};

SystemChoice choose_system(const Input& in, const Options& opt) {
  if (const auto* s = pick(in.doc.systems, opt.name)) return {s->system, std::nullopt};
  if (const auto* t = pick(in.doc.towers, opt.name)) return {std::nullopt, t->build(opt.horizon)};
  throw Error(ErrorKind::ParseError, "no system or tower block in '" + in.path + "'");
}

Tower choose_tower(const Input& in, const Options& opt) {
  return require(in.doc.towers, opt, in, "tower").build(opt.horizon);
}

void cmd_validate(const Input& in, const Options& opt, RunReport& r) {
  const auto& d = in.doc;
  // Towers are only checked lazily by the parser; build them here.
  for (const auto& t : d.towers) t.build(opt.horizon);
  for (const auto& s : d.sequences) d.sequence(s);
  r.result = {{"posets", d.posets.size()},     {"systems", d.systems.size()}, {"towers", d.towers.size()},
              {"groups", d.groups.size()},     {"homs", d.homs.size()},       {"absystems", d.absystems.size()},
              {"sequences", d.sequences.size()}};
  for (const auto& [key, value] : r.result.items()) {
    if (value.get<std::size_t>() > 0) r.line(key + ": " + std::to_string(value.get<std::size_t>()));
  }
  r.line("valid");
  r.verdict = true;
}

void cmd_limit(const Input& in, const Options& opt, RunReport& r) {
  auto choice = choose_system(in, opt);
  const auto& s = choice.get();
  auto threads = limit_threads(s, opt.budget);
  r.line("threads: " + std::to_string(threads.size()));
  Json labels = Json::array();
  for (ElementId i = 0; i < s.base().size(); ++i) labels.push_back(s.base().label(i));
  Json values = Json::array();
  for (const auto& t : threads) {
    r.line("  " + thread_text(s, t));
    Json row = Json::array();
    for (ElementId i = 0; i < t.values.size(); ++i) row.push_back(s.carrier(i)[t.values[i]]);
    values.push_back(row);
  }
  r.result = {{"threads", threads.size()}, {"elements", labels}, {"values", values}};
}

void cmd_surjective(const Input& in, const Options& opt, RunReport& r) {
  auto choice = choose_system(in, opt);
  const auto& s = choice.get();
  auto rep = is_surjective(s);
  r.verdict = rep.surjective;
  r.result["surjective"] = rep.surjective;
  if (rep.first_failure) {
    const auto [i, j] = *rep.first_failure;
    const auto& lo = s.base().label(i);
    const auto& hi = s.base().label(j);
    r.line("surjective: no (bond " + hi + " -> " + lo + " is not onto)");
    r.result["first_failure"] = {{"upper", hi}, {"lower", lo}};
  } else {
    r.line("surjective: yes");
  }
}

void cmd_ml(const Input& in, const Options& opt, RunReport& r) {
  auto tower = choose_tower(in, opt);
  auto rep = ml_report(tower);
  Json levels = Json::array();
  bool settles_at_horizon = false;
  for (const auto& lv : rep.levels) {
    const bool stable = lv.verdict == MlVerdict::Stable;
    if (stable) {
      r.line("level " + std::to_string(lv.level) + ": stable from " + std::to_string(lv.stabilizes_at));
    } else {
      r.line("level " + std::to_string(lv.level) + ": unstable at horizon " + std::to_string(rep.horizon));
    }
    if (lv.level < rep.horizon && lv.stabilizes_at == rep.horizon) settles_at_horizon = true;
    levels.push_back({{"level", lv.level},
                      {"stabilizes_at", lv.stabilizes_at},
                      {"verdict", stable ? "Stable" : "UnstableAtHorizon"},
                      {"image_sizes", [&] {
                         Json sizes = Json::array();
                         for (const auto& im : lv.images) sizes.push_back(im.size());
                         return sizes;
                       }()}});
  }
  if (settles_at_horizon) r.line("note: some image chain only settles at the horizon; the verdict may change with it");
  r.line(std::string("mittag-leffler up to horizon ") + std::to_string(rep.horizon) + ": " + yes_no(rep.all_stable()));
  r.verdict = rep.all_stable();
  r.result = {{"horizon", rep.horizon}, {"horizon_sensitive", settles_at_horizon}, {"levels", levels}};
}

void cmd_images(const Input& in, const Options& opt, RunReport& r) {
  auto choice = choose_system(in, opt);
  std::vector<std::vector<std::size_t>> kept;
  std::vector<std::pair<ElementId, ElementId>> bad;
  if (choice.tower) {
    auto u = universal_images(*choice.tower);
    kept = u.kept;
    bad = u.non_surjective;
  } else {
    auto u = universal_images(*choice.system);
    kept = u.kept;
    bad = u.non_surjective;
  }
  const auto& s = choice.get();
  Json images = Json::object();
  for (ElementId i = 0; i < s.base().size(); ++i) {
    r.line("X'_" + s.base().label(i) + " = " + values_text(s, i, kept[i]));
    Json vals = Json::array();
    for (auto x : kept[i]) vals.push_back(s.carrier(i)[x]);
    images[s.base().label(i)] = vals;
  }
  r.line("restricted bonds surjective: " + yes_no(bad.empty()));
  r.verdict = bad.empty();
  Json failures = Json::array();
  for (const auto& [i, j] : bad) failures.push_back({{"upper", s.base().label(j)}, {"lower", s.base().label(i)}});
  r.result = {{"images", images}, {"non_surjective", failures}};
}

void cmd_derived(const Input& in, const Options& opt, std::optional<std::size_t> degree, RunReport& r) {
  const auto& named = require(in.doc.absystems, opt, in, "absystem");
  Json out = Json::array();
  auto emit = [&](std::size_t n, const GroupInvariants& inv) {
    r.line("lim^" + std::to_string(n) + " invariants: " + inv.to_string());
    Json j = invariants_json(inv);
    j["degree"] = n;
    out.push_back(j);
  };
  if (degree) {
    emit(*degree, group_invariants(derived_limit(named.system, *degree, opt.budget)));
  } else {
    for (const auto& c : derived_limits(named.system, opt.budget)) emit(c.degree, c.invariants);
  }
  r.result = {{"system", named.name}, {"derived_limits", out}};
}

void cmd_scd(const Input& in, const Options& opt, std::size_t trials, RunReport& r) {
  const auto& named = require(in.doc.posets, opt, in, "poset");
  auto rep = scd_finite(named.poset, trials, opt.seed);
  std::string text = "scd lower bound: " + std::to_string(rep.lower_bound) + " (sampled over " +
                     std::to_string(rep.trials) + " trials";
  if (rep.witness) text += ", witness trial " + std::to_string(*rep.witness);
  r.line(text + ")");
  r.result = {{"poset", named.name},
              {"lower_bound", rep.lower_bound},
              {"trials", rep.trials},
              {"seed", opt.seed},
              {"trial_degree", rep.trial_degree},
              {"witness", rep.witness ? Json(*rep.witness) : Json(nullptr)}};
}

void cmd_exactness(const Input& in, const Options& opt, RunReport& r) {
  const auto& named = require(in.doc.sequences, opt, in, "sequence");
  auto rep = limit_exactness_check(in.doc.sequence(named));
  r.line("lim A: " + rep.lim_a.to_string());
  r.line("lim B: " + rep.lim_b.to_string());
  r.line("lim C: " + rep.lim_c.to_string());
  r.line("lim^1 A: " + rep.lim1_a.to_string());
  r.line("lim u injective: " + yes_no(rep.lim_u_injective));
  r.line("exact at lim B: " + yes_no(rep.exact_at_lim_b));
  r.line("lim v surjective: " + yes_no(rep.lim_v_surjective) + " (cokernel: " + rep.coker_lim_v.to_string() + ")");
  r.line("connecting map exact: " + yes_no(rep.connecting_exact) + " (image: " + rep.image_delta.to_string() + ")");
  r.line("surjectivity expected: " + yes_no(rep.surjectivity_expected));
  r.line("passes: " + yes_no(rep.passes()));
  r.verdict = rep.passes();
  r.result = {{"sequence", named.name},
              {"lim_a", invariants_json(rep.lim_a)},
              {"lim_b", invariants_json(rep.lim_b)},
              {"lim_c", invariants_json(rep.lim_c)},
              {"lim1_a", invariants_json(rep.lim1_a)},
              {"lim_u_injective", rep.lim_u_injective},
              {"exact_at_lim_b", rep.exact_at_lim_b},
              {"lim_v_surjective", rep.lim_v_surjective},
              {"coker_lim_v", invariants_json(rep.coker_lim_v)},
              {"connecting_exact", rep.connecting_exact},
              {"image_delta", invariants_json(rep.image_delta)},
              {"surjectivity_expected", rep.surjectivity_expected},
              {"passes", rep.passes()}};
}

void cmd_henkin_enumerate(const Input& in, const Options& opt, const std::string& level, std::size_t maxlen,
                          RunReport& r) {
  const auto& p = require(in.doc.posets, opt, in, "poset").poset;
  auto tuples = henkin_enumerate(p, p.id(level), maxlen);
  r.line("tuples: " + std::to_string(tuples.size()));
  Json list = Json::array();
  for (const auto& t : tuples) {
    auto s = format_henkin_tuple(p, t);
    r.line("  " + s);
    list.push_back(s);
  }
  r.result = {{"level", level}, {"maxlen", maxlen}, {"count", tuples.size()}, {"tuples", list}};
}

void cmd_henkin_eps(const Input& in, const Options& opt, const std::string& alpha, const std::string& beta,
                    const std::string& tuple, RunReport& r) {
  const auto& p = require(in.doc.posets, opt, in, "poset").poset;
  auto t = parse_henkin_tuple(p, tuple);
  auto image = henkin_eps(p, p.id(alpha), p.id(beta), t);
  const auto s = format_henkin_tuple(p, image);
  r.line("eps_" + alpha + "," + beta + format_henkin_tuple(p, t) + " = " + s);
  r.result = {{"alpha", alpha}, {"beta", beta}, {"tuple", format_henkin_tuple(p, t)}, {"image", s}};
}

void cmd_bergman_demo(int n, const Options& opt, RunReport& r) {
  auto demo = bergman_demo(n, opt.seed);
  Json steps = Json::array();
  for (std::size_t i = 0; i < demo.thread.size(); ++i) {
    r.line("c_" + std::to_string(i + 1) + " = (" + demo.thread[i].rep.to_string() + ") x_" +
           std::to_string(demo.thread[i].level));
  }
  for (const auto& s : demo.steps) {
    r.line("(" + s.tag + ") " + (s.holds ? "holds" : "FAILS") + ": " + s.claim +
           (s.detail.empty() ? "" : " [" + s.detail + "]"));
    steps.push_back({{"tag", s.tag}, {"claim", s.claim}, {"holds", s.holds}, {"detail", s.detail}});
  }
  r.line("all identities hold: " + yes_no(demo.all_hold()));
  r.verdict = demo.all_hold();
  r.result = {{"n", n}, {"seed", opt.seed}, {"steps", steps}};
}

void render(const RunReport& r, const Options& opt, std::ostream& out) {
  if (!opt.json) {
    for (const auto& l : r.lines) out << l << '\n';
    if (opt.timing) out << "elapsed: " << std::fixed << std::setprecision(3) << r.elapsed_ms << " ms\n";
    return;
  }
  Json j;
  j["command"] = r.command;
  Json inputs = Json::array();
  for (const auto& [path, d] : r.inputs) inputs.push_back({{"path", path}, {"digest", d}});
  j["inputs"] = inputs;
  j["verdict"] = r.verdict ? Json(*r.verdict) : Json(nullptr);
  j["result"] = r.result;
  if (opt.timing) j["elapsed_ms"] = r.elapsed_ms;
  out << j.dump(2) << '\n';
}

}  // namespace

std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inverse limits, derived limits and the Henkin and Bergman constructions over finite posets."};
  app.name("invlim");
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_flag("--json", opt.json, "Machine-readable report");
  app.add_flag("--timing", opt.timing, "Include elapsed time");
  app.add_option("--seed", opt.seed, "Seed for randomized commands")->capture_default_str();
  app.add_option("--budget", opt.budget, "Cap on enumeration steps")->capture_default_str();
  app.add_option("--horizon", opt.horizon, "Truncate or extend towers to this horizon");
  app.add_option("--name", opt.name, "Block to use when a file holds several");

  std::string file;
  auto add_file = [&](CLI::App* sub) { sub->add_option("file", file, "Input file")->required(); };

  auto* validate = app.add_subcommand("validate", "Parse and validate every block of a file");
  add_file(validate);
  auto* limit = app.add_subcommand("limit", "Threads of a set system or tower");
  add_file(limit);
  auto* surjective = app.add_subcommand("surjective", "Whether every bond is onto");
  add_file(surjective);
  auto* ml = app.add_subcommand("ml", "Mittag-Leffler report of a tower");
  add_file(ml);
  auto* images = app.add_subcommand("images", "Universal images and their restricted bonds");
  add_file(images);

  std::optional<std::size_t> degree;
  auto* derived = app.add_subcommand("derived", "Derived limits of an abelian system");
  derived->add_option("--n", degree, "Degree (default: all)");
  add_file(derived);

  std::size_t trials = 20;
  auto* scd = app.add_subcommand("scd", "Sampled lower bound on the surjective cohomological dimension");
  scd->add_option("--trials", trials, "Number of trials")->capture_default_str();
  add_file(scd);

  auto* exactness = app.add_subcommand("exactness", "Exactness of lim on a short exact sequence of systems");
  add_file(exactness);

  std::string level, alpha, beta, tuple;
  std::size_t maxlen = 6;
  auto* henkin = app.add_subcommand("henkin", "Henkin tuple system");
  henkin->require_subcommand(1);
  henkin->fallthrough();
  auto* henum = henkin->add_subcommand("enumerate", "List E_level up to a tuple length");
  henum->add_option("--poset", file, "Poset file")->required();
  henum->add_option("--level", level, "Level element")->required();
  henum->add_option("--maxlen", maxlen, "Maximum tuple length")->capture_default_str();
  auto* heps = henkin->add_subcommand("eps", "Apply eps_alpha,beta to a tuple");
  heps->add_option("--poset", file, "Poset file")->required();
  heps->add_option("--alpha", alpha, "Lower element")->required();
  heps->add_option("--beta", beta, "Upper element")->required();
  heps->add_option("--tuple", tuple, "Tuple, e.g. \"b,c\"")->required();

  int bergman_n = 5;
  auto* bergman = app.add_subcommand("bergman", "Bergman G-set construction");
  bergman->require_subcommand(1);
  bergman->fallthrough();
  auto* bdemo = bergman->add_subcommand("demo", "Check the non-surjectivity identities on a sampled thread");
  bdemo->add_option("--n", bergman_n, "Chain truncation {1..n}")->capture_default_str()->check(CLI::Range(2, 64));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  RunReport report;
  const auto start = std::chrono::steady_clock::now();
  try {
    auto input = [&] { return load(file, report); };
    if (validate->parsed()) {
      report.command = "validate";
      cmd_validate(input(), opt, report);
    } else if (limit->parsed()) {
      report.command = "limit";
      cmd_limit(input(), opt, report);
    } else if (surjective->parsed()) {
      report.command = "surjective";
      cmd_surjective(input(), opt, report);
    } else if (ml->parsed()) {
      report.command = "ml";
      cmd_ml(input(), opt, report);
    } else if (images->parsed()) {
      report.command = "images";
      cmd_images(input(), opt, report);
    } else if (derived->parsed()) {
      report.command = "derived";
      cmd_derived(input(), opt, degree, report);
    } else if (scd->parsed()) {
      report.command = "scd";
      cmd_scd(input(), opt, trials, report);
    } else if (exactness->parsed()) {
      report.command = "exactness";
      cmd_exactness(input(), opt, report);
    } else if (henum->parsed()) {
      report.command = "henkin enumerate";
      cmd_henkin_enumerate(input(), opt, level, maxlen, report);
    } else if (heps->parsed()) {
      report.command = "henkin eps";
      cmd_henkin_eps(input(), opt, alpha, beta, tuple, report);
    } else if (bdemo->parsed()) {
      report.command = "bergman demo";
      cmd_bergman_demo(bergman_n, opt, report);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (opt.json) {
      Json j;
      j["command"] = report.command;
      j["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.message()}};
      out << j.dump(2) << '\n';
    }
    return kInputError;
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  render(report, opt, out);
  if (report.verdict && !*report.verdict) return kVerdictFalse;
  return kOk;
}

}  // namespace invlim::cli
