#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ekr/ekr.hpp"

namespace {

using namespace ekr;

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kError = 1, kMismatch = 2, kBudget = 3 };

Set parse_set(const std::string& text) {
  Set s;
  if (text.empty()) return s;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in '" + text + "'");
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size() || v < 1 || v > kMaxGround) throw std::invalid_argument("bad element '" + item + "'");
    s.insert(v);
  }
  return s;
}

std::string fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

int env_workers() {
  if (const char* w = std::getenv("EKR_WORKERS")) {
    const int v = std::atoi(w);
    if (v >= 1) return v;
  }
  return 1;
}

struct ConstructArgs {
  std::string kind;
  int n = 0;
  int k = 0;
  int center = 0;
  std::string core, pages, e1, e2, y, z, y0, out;
};

int run_construct(const ConstructArgs& a) {
  const Params p{a.n, a.k};
  p.validate();
  int index = 0;
  const TemplateKind kind = parse_template_kind(a.kind, &index);
  TemplateDescriptor d = TemplateDescriptor::canonical(kind, p, index);
  if (a.center != 0) d.center = a.center;
  if (!a.core.empty()) d.core = parse_set(a.core);
  if (!a.pages.empty()) d.pages = parse_set(a.pages);
  if (!a.e1.empty()) d.e1 = parse_set(a.e1);
  if (!a.e2.empty()) d.e2 = parse_set(a.e2);
  if (!a.y.empty()) d.y = parse_set(a.y);
  if (!a.z.empty()) d.z = parse_set(a.z);
  if (!a.y0.empty()) d.y0 = parse_set(a.y0);
  const Family f = build(d, p);
  save_family(a.out, f);
  std::cout << d.name() << " n=" << p.n << " k=" << p.k << " size=" << f.size() << "\n";
  return kOk;
}

int run_bounds(int k, int n_min, int n_max) {
  if (n_min > n_max) throw std::invalid_argument("--n-min exceeds --n-max");
  const Bound tags[] = {Bound::EKR_max, Bound::HM_bound, Bound::HK_bound, Bound::Main_i_bound,
                        Bound::Main_ii_bound, Bound::Eq1_K2, Bound::Eq2_J3};
  std::cout << "n";
  for (Bound b : tags) std::cout << '\t' << bound_name(b);
  std::cout << "\tordering\n";
  for (int n = n_min; n <= n_max; ++n) {
    const Params p{n, k};
    std::cout << n;
    for (Bound b : tags) std::cout << '\t' << formula_value(b, p);
    if (k >= 4) {
      std::cout << '\t' << ordering_name(crossover_table(k, n, n).front().ordering);
    } else {
      std::cout << "\t-";
    }
    std::cout << '\n';
  }
  return kOk;
}

int run_classify(const std::string& in) {
  const Family f = load_family(in);
  Json j;
  j["n"] = f.n();
  j["k"] = f.k();
  j["size"] = f.size();
  j["intersecting"] = is_intersecting(f);
  if (!is_intersecting(f)) {
    std::cout << j.dump(2) << "\n";
    std::cerr << "classify: family is not intersecting\n";
    return kMismatch;
  }
  j["report"] = report_to_json(classify(f));
  j["covering_number"] = covering_number(f);
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int run_stabilize(const std::string& in, bool guarded, const std::string& freeze, const std::string& log_path,
                  const std::string& out) {
  const Family f = load_family(in);
  std::string log;
  Family result;
  int code = kOk;
  if (guarded) {
    if (!freeze.empty()) throw std::invalid_argument("--freeze cannot be combined with --guarded");
    GuardOptions opts;
    opts.require_floor = min_missing_degree(f) >= 3;
    const auto g = guarded_stabilize(f, opts);
    log = g.log.str();
    result = g.family;
    std::cout << "X=" << g.frozen.elements.str() << " events=" << g.log.case_events.size() << "\n";
    for (const auto& v : g.violations) std::cerr << "violation: " << v << "\n";
    if (!g.ok()) code = kMismatch;
  } else {
    FrozenSet frozen;
    frozen.elements = parse_set(freeze);
    const auto s = stabilize(f, frozen);
    log = s.log.str();
    result = s.family;
  }
  write_text(log_path, log);
  if (!out.empty()) save_family(out, result);
  std::cout << "steps=" << std::count(log.begin(), log.end(), '\n') << " size=" << result.size() << "\n";
  return code;
}

Json verdict_json(const TraceVerdict& v) {
  Json j;
  j["ok"] = v.ok;
  j["detail"] = v.detail;
  if (v.level >= 0) {
    j["level"] = v.level;
    j["observed"] = v.observed;
    j["cap"] = v.cap;
  }
  return j;
}

int run_trace(const std::string& in, const std::string& frozen_text) {
  const Family f = load_family(in);
  const Params p = f.params();
  const Set frozen = parse_set(frozen_text);
  const Set window = build_window(p, frozen);
  const auto t = trace(f, window, frozen);
  Json j;
  j["window"] = set_to_json(window);
  j["frozen"] = set_to_json(frozen);
  Json levels = Json::array();
  for (int i = 0; i <= p.k; ++i) {
    Json level;
    level["i"] = i;
    level["count"] = t.count(i);
    level["cap"] = trace_cap(p.k, i);
    Json sets = Json::array();
    for (Set s : t.traces[static_cast<std::size_t>(i)]) sets.push_back(set_to_json(s));
    level["traces"] = sets;
    levels.push_back(level);
  }
  j["levels"] = levels;
  const auto l22 = check_trace_pairs(t, f);
  const auto l23 = check_trace_caps(t, p);
  j["trace_pairs"] = verdict_json(l22);
  j["trace_caps"] = verdict_json(l23);
  j["bound_from_traces"] = bound_from_traces(p);
  j["observed_bound"] = observed_trace_bound(t, p);
  const auto eq = check_equality_structure(t, f);
  j["equality"] = {{"applies", eq.applies}, {"ok", eq.ok}, {"detail", eq.detail}};
  std::cout << j.dump(2) << "\n";
  return l22.ok && l23.ok && eq.ok ? kOk : kMismatch;
}

int run_rigidity(const std::string& name, int n, int k) {
  const Params p{n, k};
  int index = 0;
  const TemplateKind kind = parse_template_kind(name, &index);
  const auto rows = check_rigidity(TemplateDescriptor::canonical(kind, p, index), p);
  std::cout << "x\ty\tblock_x\tblock_y\tboundary\ttrivial\tnon_separable\tverdict\n";
  bool ok = true;
  for (const auto& r : rows) {
    std::cout << r.x << '\t' << r.y << '\t' << r.block_x << '\t' << r.block_y << '\t' << r.boundary_size << '\t'
              << r.trivial << '\t' << r.non_separable << '\t' << (r.pass ? "PASS" : "FAIL") << '\n';
    ok = ok && r.pass;
  }
  return ok ? kOk : kMismatch;
}

int run_search(int n, int k, const std::string& preset_text, double budget, int workers, const std::string& dir) {
  const Preset preset = parse_preset(preset_text);
  const auto rep = verify_theorem(preset, {n, k}, budget, workers);
  std::filesystem::create_directories(dir);
  Json j;
  j["preset"] = preset_name(preset);
  j["n"] = n;
  j["k"] = k;
  j["bound"] = bound_name(rep.bound);
  j["expected"] = rep.expected;
  j["result"] = search_result_to_json(rep.result);
  j["allowed"] = rep.allowed;
  Json ws = Json::array();
  for (std::size_t i = 0; i < rep.witnesses.size(); ++i) {
    const std::string file = "witness_" + std::to_string(i + 1) + ".json";
    save_family((std::filesystem::path(dir) / file).string(), rep.witnesses[i].family);
    ws.push_back({{"file", file}, {"matched", rep.witnesses[i].matched}});
  }
  j["witnesses"] = ws;
  j["absent"] = rep.absent;
  j["ok"] = rep.ok;
  j["message"] = rep.message;
  write_text((std::filesystem::path(dir) / "result.json").string(), j.dump(2) + "\n");
  std::cout << preset_name(preset) << " n=" << n << " k=" << k << " optimum=" << rep.result.optimum
            << " expected=" << rep.expected << " status=" << status_name(rep.result.status) << " nodes=" << rep.result.nodes
            << "\n"
            << rep.message << "\n";
  if (rep.result.status == SearchStatus::BudgetExhausted) return kBudget;
  return rep.ok ? kOk : kMismatch;
}

struct VerifyArgs {
  std::string grid = "default";
  std::uint64_t seed = VerifyOptions{}.seed;
  std::string report;
  std::string manifest;
  std::string items;
  double main_ii_budget = VerifyOptions{}.main_ii_budget;
  bool corrupt_golden = false;
};

int run_verify_all(const VerifyArgs& a, const std::string& command_line) {
  VerifyOptions o;
  if (a.grid == "quick") {
    o.grid = Grid::Quick;
  } else if (a.grid != "default") {
    throw std::invalid_argument("--grid must be default or quick");
  }
  o.seed = a.seed;
  o.main_ii_budget = a.main_ii_budget;
  o.corrupt_golden = a.corrupt_golden;
  const int workers = env_workers();
  std::vector<int> ids;
  if (a.items.empty()) {
    for (int i = 1; i <= kItemCount; ++i) ids.push_back(i);
  } else {
    for (int i : parse_set(a.items).elements()) {
      if (i > kItemCount) throw std::invalid_argument("no acceptance item " + std::to_string(i));
      ids.push_back(i);
    }
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<ItemResult> results(ids.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < ids.size(); i = next++) results[i] = run_item(ids[i], o);
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::ostringstream tsv;
  tsv << "item\tname\texpected\tobserved\tverdict\tseconds\n";
  bool ok = true;
  for (const auto& r : results) {
    tsv << r.id << '\t' << r.name << '\t' << r.expected << '\t' << r.observed << '\t' << (r.pass ? "PASS" : "FAIL") << '\t'
        << std::fixed << std::setprecision(2) << r.seconds << '\n';
    ok = ok && r.pass;
  }
  std::cout << tsv.str();
  if (!a.report.empty()) write_text(a.report, tsv.str());

  const std::string manifest = !a.manifest.empty() ? a.manifest : (a.report.empty() ? "" : a.report + ".manifest.json");
  if (!manifest.empty()) {
    Json m;
    m["version"] = kVersion;
    m["command"] = command_line;
    m["parameters"] = {{"grid", a.grid}, {"seed", a.seed}, {"workers", workers}, {"items", ids},
                       {"main_ii_budget", a.main_ii_budget}, {"corrupt_golden", a.corrupt_golden}};
    m["report"] = a.report;
    m["report_fnv1a64"] = fnv1a(tsv.str());
    m["wall_seconds"] = wall;
    Json verdicts = Json::object();
    for (const auto& r : results) verdicts[std::to_string(r.id)] = r.pass ? "PASS" : "FAIL";
    m["verdicts"] = verdicts;
    m["all_pass"] = ok;
    write_text(manifest, m.dump(2) + "\n");
  }
  return ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intersecting-family toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a template family");
  construct->add_option("--kind", ca.kind, "star, hm, t3, g<i>, j<i>, k2 or fp")->required();
  construct->add_option("--n", ca.n)->required();
  construct->add_option("--k", ca.k)->required();
  construct->add_option("--center", ca.center);
  construct->add_option("--core", ca.core, "core, kernel or exceptional set, e.g. 2,3,4");
  construct->add_option("--pages", ca.pages);
  construct->add_option("--e1", ca.e1);
  construct->add_option("--e2", ca.e2);
  construct->add_option("--y", ca.y);
  construct->add_option("--z", ca.z);
  construct->add_option("--y0", ca.y0);
  construct->add_option("--out", ca.out)->required();

  int bk = 0, bmin = 0, bmax = 0;
  auto* bounds = app.add_subcommand("bounds", "Closed-form bounds as TSV");
  bounds->add_option("--k", bk)->required();
  bounds->add_option("--n-min", bmin)->required();
  bounds->add_option("--n-max", bmax)->required();

  std::string cin_path;
  auto* cls = app.add_subcommand("classify", "Classify a family");
  cls->add_option("--in", cin_path)->required()->check(CLI::ExistingFile);

  std::string sin, sfreeze, slog, sout;
  bool sguarded = false;
  auto* stab = app.add_subcommand("stabilize", "Shift to a stable family");
  stab->add_option("--in", sin)->required()->check(CLI::ExistingFile);
  stab->add_flag("--guarded", sguarded);
  stab->add_option("--freeze", sfreeze);
  stab->add_option("--log", slog)->required();
  stab->add_option("--out", sout, "write the resulting family");

  std::string tin, tfrozen;
  auto* tr = app.add_subcommand("trace", "Trace profile and window checks");
  tr->add_option("--in", tin)->required()->check(CLI::ExistingFile);
  tr->add_option("--frozen", tfrozen);

  std::string rtemplate;
  int rn = 0, rk = 0;
  auto* rig = app.add_subcommand("rigidity", "Per-pair boundary table");
  rig->add_option("--template", rtemplate)->required();
  rig->add_option("--n", rn)->required();
  rig->add_option("--k", rk)->required();

  int qn = 0, qk = 0, qworkers = env_workers();
  double qbudget = 0.0;
  std::string qpreset, qout;
  auto* search = app.add_subcommand("search", "Exact extremal search for a theorem preset");
  search->add_option("--n", qn)->required();
  search->add_option("--k", qk)->required();
  search->add_option("--preset", qpreset, "EKR, HM, HK, Main or Stable")->required();
  search->add_option("--budget", qbudget, "seconds, 0 for none");
  search->add_option("--workers", qworkers);
  search->add_option("--out", qout)->required();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify-all", "Run the acceptance grid");
  verify->add_option("--grid", va.grid);
  verify->add_option("--seed", va.seed);
  verify->add_option("--report", va.report);
  verify->add_option("--manifest", va.manifest);
  verify->add_option("--items", va.items, "comma-separated item ids");
  verify->add_option("--main-ii-budget", va.main_ii_budget);
  verify->add_flag("--corrupt-golden", va.corrupt_golden, "negative control");

  CLI11_PARSE(app, argc, argv);

  std::string command_line;
  for (int i = 0; i < argc; ++i) command_line += (i ? " " : "") + std::string(argv[i]);

  try {
    if (*construct) return run_construct(ca);
    if (*bounds) return run_bounds(bk, bmin, bmax);
    if (*cls) return run_classify(cin_path);
    if (*stab) return run_stabilize(sin, sguarded, sfreeze, slog, sout);
    if (*tr) return run_trace(tin, tfrozen);
    if (*rig) return run_rigidity(rtemplate, rn, rk);
    if (*search) return run_search(qn, qk, qpreset, qbudget, qworkers, qout);
    if (*verify) return run_verify_all(va, command_line);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
