#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "ekr/constructions.hpp"
#include "ekr/shifting.hpp"
#include "ekr/trace.hpp"

using namespace ekr;

namespace {

Permutation random_perm(std::mt19937_64& rng, int n) {
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 1);
  std::shuffle(im.begin(), im.end(), rng);
  return Permutation(im);
}

// Distinct traces of size i, counted directly.
std::int64_t traces_of_size(const Family& g, Set y, int i) {
  std::vector<Set> seen;
  for (Set m : g) {
    const Set a = m & y;
    if (a.size() == i && std::find(seen.begin(), seen.end(), a) == seen.end()) seen.push_back(a);
  }
  return static_cast<std::int64_t>(seen.size());
}

}  // namespace

TEST(Window, SpecExamples) {
  EXPECT_EQ(build_window({11, 5}, {}), Set::interval(1, 10));
  EXPECT_EQ(build_window({10, 4}, Set::interval(1, 5)), Set::interval(1, 9));
  EXPECT_EQ(build_window({13, 4}, Set{2, 4, 11, 12, 13}), (Set{1, 2, 3, 4, 5, 6, 11, 12, 13}));
  EXPECT_EQ(window_size(4), 9);
  EXPECT_EQ(window_size(6), 12);
}

TEST(Trace, J3LevelCounts) {
  for (int n = 10; n <= 13; ++n) {
    const Params p{n, 4};
    const Family j3 = build(TemplateKind::J, p, 3);
    const Set y = build_window(p, {});
    const auto t = trace(j3, y);
    for (int i = 0; i <= 4; ++i) EXPECT_EQ(t.count(i), traces_of_size(j3, y, i));
    std::size_t lifted = 0;
    for (const auto& level : t.lifted) lifted += level.size();
    EXPECT_EQ(lifted, j3.size());
    // One element outside Y leaves no room for a two-element trace at n = 10.
    if (n == 10) {
      EXPECT_EQ(t.count(2), 0);
    } else {
      EXPECT_EQ(t.traces[2], (std::vector<Set>{Set{1, 2}, Set{1, 3}, Set{1, 4}}));
    }
  }
}

TEST(Trace, MembersInsideWindowAreTheirOwnTraces) {
  const Params p{12, 4};
  const Family g = build(TemplateKind::Star, {9, 4});
  const Family lifted(p, std::vector<Set>(g.begin(), g.end()));
  const auto t = trace(lifted, Set::interval(1, 9));
  EXPECT_EQ(t.count(4), static_cast<std::int64_t>(g.size()));
  for (int i = 0; i < 4; ++i) EXPECT_EQ(t.count(i), 0);
}

TEST(Trace, StarHasSmallTraces) {
  const Params p{12, 4};
  const auto t = trace(build(TemplateKind::Star, p), build_window(p, {}));
  EXPECT_GT(t.count(1), 0);
  EXPECT_FALSE(check_trace_pairs(t, build(TemplateKind::Star, p)).ok);
}

TEST(TraceCaps, Values) {
  EXPECT_EQ(trace_cap(4, 2), 3);
  EXPECT_EQ(trace_cap(4, 3), 18);
  EXPECT_EQ(trace_cap(4, 4), 50);
  EXPECT_EQ(trace_cap(5, 2), 4);
  EXPECT_EQ(trace_cap(5, 5), 126);
  for (int k = 5; k <= 8; ++k) {
    EXPECT_EQ(trace_cap(k, 0), 0);
    EXPECT_EQ(trace_cap(k, 1), 0);
    EXPECT_EQ(trace_cap(k, 2), k - 1);
  }
  EXPECT_THROW(trace_cap(3, 1), std::invalid_argument);
  EXPECT_THROW(trace_cap(5, 6), std::invalid_argument);
}

TEST(TraceBound, SpecExamples) {
  EXPECT_EQ(bound_from_traces({10, 4}), 68);
  EXPECT_EQ(bound_from_traces({9, 4}), 50);
  EXPECT_EQ(bound_from_traces({11, 5}), 201);
}

TEST(TraceBound, EqualsClosedForm) {
  for (int k = 4; k <= 7; ++k) {
    for (int n = 3 * k - 2; n <= 3 * k + 4; ++n) {
      EXPECT_EQ(bound_from_traces({n, k}), formula_value(Bound::Main_ii_bound, {n, k})) << n << "," << k;
    }
  }
}

TEST(TraceChecks, HoldOnPipelineOutputs) {
  std::mt19937_64 rng(7);
  struct Input {
    TemplateKind kind;
    int index;
    Params p;
  };
  for (const auto& in : std::vector<Input>{{TemplateKind::J, 3, {10, 4}}, {TemplateKind::J, 3, {11, 4}},
                                           {TemplateKind::K2, 0, {9, 4}}, {TemplateKind::J, 3, {11, 5}}}) {
    for (int t = 0; t < 3; ++t) {
      const Family f = relabel(build(in.kind, in.p, in.index), random_perm(rng, in.p.n));
      GuardOptions opts;
      opts.require_floor = in.kind != TemplateKind::K2;
      const auto r = guarded_stabilize(f, opts);
      ASSERT_TRUE(r.ok());
      const auto profile = trace(r.family, build_window(in.p, r.frozen.elements), r.frozen.elements);
      const auto v22 = check_trace_pairs(profile, r.family);
      EXPECT_TRUE(v22.ok) << v22.detail;
      const auto v23 = check_trace_caps(profile, in.p);
      EXPECT_TRUE(v23.ok) << v23.detail;
      EXPECT_LE(static_cast<std::int64_t>(r.family.size()), observed_trace_bound(profile, in.p));
      if (in.p.k == 5) {
        EXPECT_LE(profile.count(2), 4);
      }
    }
  }
}

TEST(TraceChecks, ReportsPairMeetingOutsideWindow) {
  const Params p{12, 4};
  const Set a{1, 2, 10, 11};
  const Set b{3, 4, 10, 12};
  const Family g(p, {a, b});
  const auto t = trace(g, Set::interval(1, 9));
  const auto v = check_trace_pairs(t, g);
  ASSERT_FALSE(v.ok);
  ASSERT_TRUE(v.pair);
  EXPECT_EQ(v.pair->first, a);
  EXPECT_EQ(v.pair->second, b);
}

TEST(TraceChecks, ReportsLevelOverCap) {
  const Params p{12, 4};
  std::vector<Set> m;
  for (Set s : k_subsets(Set::interval(1, 9), 2)) {
    if (s.contains(1)) m.push_back(s | Set{10, 11});
  }
  const Family g(p, m);
  const auto v = check_trace_caps(trace(g, Set::interval(1, 9)), p);
  ASSERT_FALSE(v.ok);
  EXPECT_EQ(v.level, 2);
  EXPECT_EQ(v.observed, 8);
  EXPECT_EQ(v.cap, 3);
}

TEST(EqualityStructure, J3AtBound) {
  for (Params p : std::vector<Params>{{10, 4}, {11, 4}, {13, 5}}) {
    const Family j3 = build(TemplateKind::J, p, 3);
    const auto v = check_equality_structure(trace(j3, build_window(p, {})), j3);
    EXPECT_TRUE(v.applies);
    EXPECT_TRUE(v.ok) << v.detail;
  }
  const Family k2 = build(TemplateKind::K2, {10, 4});
  EXPECT_FALSE(check_equality_structure(trace(k2, build_window({10, 4}, {})), k2).applies);
}
