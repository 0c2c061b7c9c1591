#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ekr/classification.hpp"
#include "ekr/constructions.hpp"
#include "ekr/core.hpp"
#include "ekr/search.hpp"
#include "ekr/separability.hpp"
#include "ekr/shifting.hpp"
#include "ekr/trace.hpp"

namespace ekr {

enum class Grid { Default, Quick };

struct VerifyOptions {
  Grid grid = Grid::Default;
  std::uint64_t seed = 20240917;
  int workers = 1;
  /// Search budget for the Main preset at n=10, k=4, in seconds.
  double main_ii_budget = 3600.0;
  /// Negative control: perturbs one golden value.
  bool corrupt_golden = false;
};

struct ItemResult {
  int id = 0;
  std::string name;
  std::string expected;
  std::string observed;
  bool pass = false;
  double seconds = 0.0;
};

inline constexpr int kItemCount = 12;

namespace detail {

inline std::string join(const std::vector<std::string>& parts, const char* sep = ",") {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

/// Greedy random intersecting family: shuffled k-sets added while they meet
/// every chosen one, up to `target` members.
inline Family random_intersecting(std::mt19937_64& rng, Params p, std::size_t target) {
  auto pool = k_subsets(p.n, p.k);
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<Set> chosen;
  for (Set s : pool) {
    if (chosen.size() >= target) break;
    if (std::all_of(chosen.begin(), chosen.end(), [&](Set c) { return c.intersects(s); })) chosen.push_back(s);
  }
  return Family(p, std::move(chosen));
}

inline Permutation random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

inline Family random_subfamily(std::mt19937_64& rng, const Family& f) {
  std::uniform_real_distribution<double> keep_rate(0.2, 1.0);
  std::bernoulli_distribution keep(keep_rate(rng));
  std::vector<Set> out;
  for (Set s : f) {
    if (keep(rng)) out.push_back(s);
  }
  return Family(f.params(), std::move(out));
}

/// Separability by trying every bipartition (the first set is pinned to
/// one side).
inline bool non_separable_by_bipartitions(std::span<const Set> sets) {
  const auto m = sets.size();
  if (m <= 1) return true;
  std::vector<std::uint32_t> disjoint(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (sets[i].disjoint(sets[j])) disjoint[i] |= std::uint32_t{1} << j;
    }
  }
  const std::uint32_t all = (std::uint32_t{1} << m) - 1;
  for (std::uint32_t side = 1; side < all; side += 2) {
    bool cross = true;
    for (std::size_t i = 0; i < m && cross; ++i) {
      if (((side >> i) & 1U) != 0 && (disjoint[i] & ~side & all) != 0) cross = false;
    }
    if (cross) return false;
  }
  return true;
}

/// Short description of an extremal witness matching no allowed template.
inline std::string describe_unmatched(const Family& f) {
  for (int x = 1; x <= f.n(); ++x) {
    const auto miss = missing(f, x);
    if (miss.size() == 2) {
      return "two sets miss " + std::to_string(x) + " with |E1 n E2|=" + std::to_string((miss[0] & miss[1]).size());
    }
  }
  return "min missing degree " + std::to_string(min_missing_degree(f));
}

inline std::string witness_summary(const TheoremReport& r) {
  std::vector<std::string> parts;
  for (const auto& w : r.witnesses) parts.push_back(w.matched == "none" ? "none(" + describe_unmatched(w.family) + ")" : w.matched);
  return join(parts);
}

inline ItemResult item_formulas() {
  ItemResult r{1, "formula/enumeration agreement", "0 mismatches", "", false, 0};
  int checks = 0;
  std::vector<std::string> bad;
  auto check = [&](const std::string& what, std::int64_t built, std::int64_t formula) {
    ++checks;
    if (built != formula) bad.push_back(what + ":" + std::to_string(built) + "!=" + std::to_string(formula));
  };
  for (int k = 3; k <= 5; ++k) {
    for (int n = 2 * k + 1; n <= 3 * k + 2; ++n) {
      const Params p{n, k};
      const std::string at = "(" + std::to_string(n) + "," + std::to_string(k) + ")";
      auto size = [&](TemplateKind kind, int i = 0) { return static_cast<std::int64_t>(build(kind, p, i).size()); };
      check("hm" + at, size(TemplateKind::HM), formula_value(Bound::HM_bound, p));
      const auto j2 = size(TemplateKind::J, 2);
      check("j2" + at, j2, formula_value(Bound::Ji_size, p, 2));
      check("j2=HK" + at, j2, formula_value(Bound::HK_bound, p));
      const auto j3 = size(TemplateKind::J, 3);
      check("j3" + at, j3, formula_value(Bound::Ji_size, p, 3));
      check("j3=Eq2" + at, j3, formula_value(Bound::Eq2_J3, p));
      for (int i = 2; i <= k; ++i) check("g" + std::to_string(i) + at, size(TemplateKind::G, i), formula_value(Bound::Gi_size, p, i));
      check("gk=HM" + at, size(TemplateKind::G, k), formula_value(Bound::HM_bound, p));
      check("k2" + at, size(TemplateKind::K2), formula_value(Bound::Eq1_K2, p, 2));
    }
  }
  r.observed = std::to_string(bad.size()) + " mismatches / " + std::to_string(checks) + " checks";
  if (!bad.empty()) r.observed += ": " + join(bad);
  r.pass = bad.empty();
  return r;
}

inline ItemResult item_golden(bool corrupt) {
  ItemResult r{2, "golden values", "all equal", "", false, 0};
  struct Row {
    std::string what;
    std::int64_t expected;
    std::int64_t observed;
  };
  const Params p94{9, 4};
  const Params p104{10, 4};
  const Params p115{11, 5};
  auto size = [](TemplateKind kind, Params p, int i = 0) { return static_cast<std::int64_t>(build(kind, p, i).size()); };
  std::vector<Row> rows = {
      {"|HM(9,4)|", 53, size(TemplateKind::HM, p94)},
      {"|J2(9,4)|", 51, size(TemplateKind::J, p94, 2)},
      {"|G2(9,4)|", 51, size(TemplateKind::G, p94, 2)},
      {"|G3(9,4)|", 51, size(TemplateKind::G, p94, 3)},
      {"HK_bound(9,4)", 51, formula_value(Bound::HK_bound, p94)},
      {"|K2(9,4)|", 50, size(TemplateKind::K2, p94)},
      {"|J3(9,4)|", 50, size(TemplateKind::J, p94, 3)},
      {"Main_i_bound(9,4)", 50, formula_value(Bound::Main_i_bound, p94)},
      {"Eq2_J3(9,4)", 50, formula_value(Bound::Eq2_J3, p94)},
      {"|J3(10,4)|", 68, size(TemplateKind::J, p104, 3)},
      {"|J3(11,5)|", 201, size(TemplateKind::J, p115, 3)},
      {"|G4(11,5)|", 201, size(TemplateKind::G, p115, 4)},
  };
  if (corrupt) rows.front().expected = 54;
  std::vector<std::string> bad;
  for (const auto& row : rows) {
    if (row.expected != row.observed) {
      bad.push_back(row.what + " expected " + std::to_string(row.expected) + " got " + std::to_string(row.observed));
    }
  }
  r.observed = bad.empty() ? std::to_string(rows.size()) + " values equal" : join(bad, "; ");
  r.pass = bad.empty();
  return r;
}

inline ItemResult item_crossover() {
  ItemResult r{3, "K2/J3 crossover pattern", "pattern holds at every point", "", false, 0};
  int points = 0;
  std::vector<std::string> bad;
  for (int k = 4; k <= 10; ++k) {
    for (const auto& row : crossover_table(k, 2 * k + 1, 4 * k)) {
      ++points;
      if (!row.matches_pattern) bad.push_back("(" + std::to_string(row.n) + "," + std::to_string(k) + ")");
    }
  }
  r.observed = std::to_string(points - static_cast<int>(bad.size())) + "/" + std::to_string(points) + " points";
  if (!bad.empty()) r.observed += " failing " + join(bad);
  r.pass = bad.empty();
  return r;
}

inline ItemResult item_trace_collapse() {
  ItemResult r{4, "trace bound equals Main_ii_bound", "identity at every point", "", false, 0};
  int points = 0;
  std::vector<std::string> bad;
  for (int k = 4; k <= 8; ++k) {
    for (int n = 2 * k + 1; n <= 3 * k + 2; ++n) {
      const Params p{n, k};
      ++points;
      const auto a = bound_from_traces(p);
      const auto b = formula_value(Bound::Main_ii_bound, p);
      if (a != b) bad.push_back("(" + std::to_string(n) + "," + std::to_string(k) + "):" + std::to_string(a) + "!=" + std::to_string(b));
    }
  }
  r.observed = std::to_string(points - static_cast<int>(bad.size())) + "/" + std::to_string(points) + " points";
  if (!bad.empty()) r.observed += " failing " + join(bad);
  r.pass = bad.empty();
  return r;
}

inline ItemResult item_shifting(const VerifyOptions& o) {
  const int count = o.grid == Grid::Quick ? 200 : 1000;
  ItemResult r{5, "shifting properties", "0 failures on " + std::to_string(count) + " families", "", false, 0};
  std::mt19937_64 rng(o.seed);
  std::vector<std::string> bad;
  for (int t = 0; t < count; ++t) {
    const int k = std::uniform_int_distribution<int>(2, 5)(rng);
    const int n = std::uniform_int_distribution<int>(2 * k, 12)(rng);
    const auto target = static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 60)(rng));
    const Family f = random_intersecting(rng, {n, k}, target);
    const std::string tag = "#" + std::to_string(t);
    for (int s = 0; s < 5; ++s) {
      const int x = std::uniform_int_distribution<int>(1, n - 1)(rng);
      const int y = std::uniform_int_distribution<int>(x + 1, n)(rng);
      const Family g = shift(f, x, y);
      if (g.size() != f.size()) bad.push_back(tag + " shift changed size");
      if (!is_intersecting(g)) bad.push_back(tag + " shift broke intersecting");
    }
    const auto st = stabilize(f);
    std::int64_t decrease = 0;
    for (const auto& step : st.log.steps) decrease += static_cast<std::int64_t>(step.changed) * (step.y - step.x);
    const std::int64_t floor_sum = static_cast<std::int64_t>(f.size()) * k * (k + 1) / 2;
    if (decrease != element_sum(f) - element_sum(st.family)) bad.push_back(tag + " potential accounting off");
    if (element_sum(f) - decrease < floor_sum) bad.push_back(tag + " exceeded potential bound");
    if (!is_stable(st.family)) bad.push_back(tag + " result not stable");
    if (!is_intersecting(st.family) || st.family.size() != f.size()) bad.push_back(tag + " stabilize lost a property");
    const auto again = stabilize(st.family);
    if (!again.log.steps.empty() || !(again.family == st.family)) bad.push_back(tag + " not idempotent");
    if (!(replay(f, st.log) == st.family)) bad.push_back(tag + " replay differs");
  }
  r.observed = std::to_string(bad.size()) + " failures";
  if (!bad.empty()) r.observed += ": " + bad.front();
  r.pass = bad.empty();
  return r;
}

inline ItemResult item_guarded(const VerifyOptions& o) {
  const int per = o.grid == Grid::Quick ? 10 : 50;
  ItemResult r{6, "guarded stabilization", "0 failures on " + std::to_string(4 * per) + " relabelings", "", false, 0};
  std::mt19937_64 rng(o.seed + 6);
  std::vector<std::string> bad;
  int max_x = 0;
  std::size_t max_events = 0;
  const std::vector<std::pair<TemplateDescriptor, Params>> inputs = {
      {TemplateDescriptor::canonical(TemplateKind::J, {9, 4}, 3), {9, 4}},
      {TemplateDescriptor::canonical(TemplateKind::J, {10, 4}, 3), {10, 4}},
      {TemplateDescriptor::canonical(TemplateKind::J, {11, 4}, 3), {11, 4}},
      {TemplateDescriptor::canonical(TemplateKind::K2, {9, 4}), {9, 4}},
  };
  for (const auto& [desc, p] : inputs) {
    const Family base = build(desc, p);
    for (int t = 0; t < per; ++t) {
      const Family f = relabel(base, random_permutation(rng, p.n));
      GuardOptions opts;
      opts.require_floor = min_missing_degree(f) >= 3;
      const auto g = guarded_stabilize(f, opts);
      const std::string tag = desc.name() + "(" + std::to_string(p.n) + ")#" + std::to_string(t) + " ";
      for (const auto& v : g.violations) bad.push_back(tag + v);
      if (!g.ok()) continue;
      const Set x = g.frozen.elements;
      max_x = std::max(max_x, x.size());
      max_events = std::max(max_events, g.log.case_events.size());
      if (!is_stable(g.family, x)) bad.push_back(tag + "not stable");
      const auto profile = trace(g.family, build_window(p, x), x);
      const auto l22 = check_trace_pairs(profile, g.family);
      if (!l22.ok) bad.push_back(tag + l22.detail);
      const auto l23 = check_trace_caps(profile, p);
      if (!l23.ok) bad.push_back(tag + l23.detail);
    }
  }
  r.observed = std::to_string(bad.size()) + " failures, max |X|=" + std::to_string(max_x) +
               ", max events=" + std::to_string(max_events);
  if (!bad.empty()) r.observed += ": " + bad.front();
  r.pass = bad.empty();
  return r;
}

inline ItemResult item_oracle(const VerifyOptions& o) {
  ItemResult r{7, "solver vs oracle", "agreement on every preset with C(n,k) <= 40; HM(7,3) witnesses {hm,t3}", "", false, 0};
  int instances = 0;
  std::vector<std::string> bad;
  for (int k = 2; k <= 5; ++k) {
    for (int n = 2 * k + 1; binom(n, k) <= 40; ++n) {
      for (Preset pr : kAllPresets) {
        if (!preset_applies(pr, {n, k})) continue;
        auto prob = preset_problem(pr, {n, k});
        prob.workers = o.workers;
        ++instances;
        const auto a = solve(prob).optimum;
        const auto b = brute_oracle(prob);
        if (a != b) {
          bad.push_back(std::string(preset_name(pr)) + "(" + std::to_string(n) + "," + std::to_string(k) + "):" +
                        std::to_string(a) + "!=" + std::to_string(b));
        }
      }
    }
  }
  const auto hm = verify_theorem(Preset::HM, {7, 3}, 0.0, o.workers);
  std::vector<std::string> classes;
  for (const auto& w : hm.witnesses) classes.push_back(w.matched);
  std::sort(classes.begin(), classes.end());
  if (!hm.ok || classes != std::vector<std::string>{"hm", "t3"}) bad.push_back("HM(7,3): " + hm.message);
  r.observed = std::to_string(instances) + " instances, " + std::to_string(bad.size()) + " disagreements; HM(7,3) optimum " +
               std::to_string(hm.result.optimum) + " witnesses {" + join(classes) + "}";
  if (!bad.empty()) r.observed += ": " + join(bad, "; ");
  r.pass = bad.empty();
  return r;
}

inline ItemResult item_small_theorems(const VerifyOptions& o) {
  ItemResult r{8, "EKR/HM/HK at n=9 k=4", "56 {star} / 53 {hm} / 51 {j2,g2,g3}", "", false, 0};
  std::vector<std::string> parts;
  bool ok = true;
  for (Preset pr : {Preset::EKR, Preset::HM, Preset::HK}) {
    const auto rep = verify_theorem(pr, {9, 4}, 600.0, o.workers);
    std::vector<std::string> classes;
    for (const auto& w : rep.witnesses) classes.push_back(w.matched);
    std::sort(classes.begin(), classes.end());
    parts.push_back(std::to_string(rep.result.optimum) + " {" + join(classes) + "}");
    ok = ok && rep.ok;
  }
  r.observed = join(parts, " / ");
  r.pass = ok;
  return r;
}

inline ItemResult item_main_i(const VerifyOptions& o) {
  ItemResult r{9, "Main (i) at n=9 k=4", "50; every witness k2 or j3, both present", "", false, 0};
  const auto rep = verify_theorem(Preset::Main, {9, 4}, 900.0, o.workers);
  r.observed = std::to_string(rep.result.optimum) + " " + status_name(rep.result.status) + "; witnesses " + witness_summary(rep);
  r.pass = rep.ok;
  return r;
}

inline ItemResult item_main_ii(const VerifyOptions& o) {
  ItemResult r{10, "Main (ii) at n=10 k=4", "68; every witness j3", "", false, 0};
  const Params p{10, 4};
  const double budget = o.grid == Grid::Quick ? std::min(o.main_ii_budget, 60.0) : o.main_ii_budget;
  const auto rep = verify_theorem(Preset::Main, p, budget, o.workers);
  r.observed = std::to_string(rep.result.optimum) + " " + status_name(rep.result.status) + "; witnesses " + witness_summary(rep);
  if (rep.result.status == SearchStatus::ProvedOptimal) {
    r.pass = rep.ok;
    return r;
  }
  // Certificate in place of a finished search.
  std::vector<std::string> bad;
  if (rep.result.optimum != 68 || rep.result.witnesses.empty()) {
    bad.push_back("incumbent " + std::to_string(rep.result.optimum));
  } else {
    const Family& inc = rep.result.witnesses.front();
    if (!isomorphic_to(inc, TemplateKind::J, 3)) bad.push_back("incumbent is not J3");
    if (bound_from_traces(p) != 68 || formula_value(Bound::Main_ii_bound, p) != 68) bad.push_back("trace bound is not 68");
    const auto g = guarded_stabilize(inc);
    for (const auto& v : g.violations) bad.push_back(v);
    if (g.ok()) {
      const auto profile = trace(g.family, build_window(p, g.frozen.elements), g.frozen.elements);
      const auto l22 = check_trace_pairs(profile, g.family);
      if (!l22.ok) bad.push_back(l22.detail);
      const auto l23 = check_trace_caps(profile, p);
      if (!l23.ok) bad.push_back(l23.detail);
    }
  }
  r.observed += bad.empty() ? "; fallback certificate holds" : "; fallback certificate fails: " + join(bad, "; ");
  r.pass = bad.empty();
  return r;
}

inline ItemResult item_separability(const VerifyOptions& o) {
  ItemResult r{11, "non-separability and rigidity", "0 failures", "", false, 0};
  std::vector<std::string> bad;
  int grid_points = 0;
  for (int rr = 2; rr <= 3; ++rr) {
    for (int m = 2 * rr + 1; m <= 2 * rr + 3; ++m) {
      for (int a = rr - 1; a <= rr; ++a) {
        ++grid_points;
        if (!is_non_separable(boundary_family(m, rr, Set::interval(1, a)))) {
          bad.push_back("boundary(" + std::to_string(m) + "," + std::to_string(rr) + ",|A|=" + std::to_string(a) + ")");
        }
      }
    }
  }
  std::mt19937_64 rng(o.seed + 11);
  const int samples = o.grid == Grid::Quick ? 100 : 400;
  for (int t = 0; t < samples; ++t) {
    const int rr = std::uniform_int_distribution<int>(2, 3)(rng);
    const int m = std::uniform_int_distribution<int>(2 * rr, 2 * rr + 3)(rng);
    auto pool = k_subsets(m, rr);
    std::shuffle(pool.begin(), pool.end(), rng);
    const auto size = std::min<std::size_t>(pool.size(), static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 18)(rng)));
    pool.resize(size);
    if (is_non_separable(pool) != non_separable_by_bipartitions(pool)) bad.push_back("oracle disagreement #" + std::to_string(t));
  }
  int rows = 0;
  for (Params p : {Params{9, 4}, Params{10, 4}, Params{11, 5}}) {
    for (const auto& row : check_rigidity(TemplateDescriptor::canonical(TemplateKind::J, p, 3), p)) {
      ++rows;
      if (!row.pass) {
        bad.push_back("j3(" + std::to_string(p.n) + "," + std::to_string(p.k) + ") pair " + std::to_string(row.x) + "," +
                      std::to_string(row.y));
      }
    }
  }
  r.observed = std::to_string(grid_points) + " grid points, " + std::to_string(samples) + " oracle samples, " +
               std::to_string(rows) + " rigidity rows; " + std::to_string(bad.size()) + " failures";
  if (!bad.empty()) r.observed += ": " + join(bad, "; ");
  r.pass = bad.empty();
  return r;
}

inline ItemResult item_degree_claims(const VerifyOptions& o) {
  const int per = o.grid == Grid::Quick ? 100 : 500;
  ItemResult r{12, "degree-threshold claims", "0 counterexamples", "", false, 0};
  std::mt19937_64 rng(o.seed + 12);
  std::vector<std::string> bad;
  int families = 0;
  for (int n = 9; n <= 12; ++n) {
    const Params p{n, 4};
    const Family g2 = build(TemplateKind::G, p, 2);
    const Family g3 = build(TemplateKind::G, p, 3);
    const Set core2{1, 2, 3};
    const Set core3{2, 3, 4};
    auto check = [&](const Family& a, const Family& b, const std::string& tag) {
      families += 2;
      if (!g2_pair_claim_counterexamples(a, core2).empty()) bad.push_back("g2 pair " + tag);
      if (!g3_pair_claim_counterexamples(b, 1, core3).empty()) bad.push_back("g3 pair " + tag);
      if (!g3_triple_claim_counterexamples(b, 1, core3).empty()) bad.push_back("g3 triple " + tag);
    };
    check(g2, g3, "n=" + std::to_string(n));
    for (int t = 0; t < per; ++t) check(random_subfamily(rng, g2), random_subfamily(rng, g3), "n=" + std::to_string(n) + "#" + std::to_string(t));
  }
  r.observed = std::to_string(families) + " families, " + std::to_string(bad.size()) + " counterexamples";
  if (!bad.empty()) r.observed += ": " + bad.front();
  r.pass = bad.empty();
  return r;
}

}  // namespace detail

inline ItemResult run_item(int id, const VerifyOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  ItemResult r;
  try {
    switch (id) {
      case 1: r = detail::item_formulas(); break;
      case 2: r = detail::item_golden(o.corrupt_golden); break;
      case 3: r = detail::item_crossover(); break;
      case 4: r = detail::item_trace_collapse(); break;
      case 5: r = detail::item_shifting(o); break;
      case 6: r = detail::item_guarded(o); break;
      case 7: r = detail::item_oracle(o); break;
      case 8: r = detail::item_small_theorems(o); break;
      case 9: r = detail::item_main_i(o); break;
      case 10: r = detail::item_main_ii(o); break;
      case 11: r = detail::item_separability(o); break;
      case 12: r = detail::item_degree_claims(o); break;
      default: throw std::invalid_argument("no acceptance item " + std::to_string(id));
    }
  } catch (const std::exception& e) {
    if (id < 1 || id > kItemCount) throw;
    r.id = id;
    r.name = "item " + std::to_string(id);
    r.observed = std::string("error: ") + e.what();
    r.pass = false;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace ekr
