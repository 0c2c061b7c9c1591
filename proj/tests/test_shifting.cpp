#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ekr/classification.hpp"
#include "ekr/constructions.hpp"
#include "ekr/shifting.hpp"

using namespace ekr;

namespace {

// Shift written from its definition: a member containing y but not x moves to
// (G - y) + x unless that set is already present.
std::vector<Set> shift_oracle(const Family& f, int x, int y) {
  std::vector<Set> out;
  for (Set g : f) {
    if (g.contains(y) && !g.contains(x)) {
      Set img = g;
      img.erase(y);
      img.insert(x);
      if (std::find(f.begin(), f.end(), img) == f.end()) {
        out.push_back(img);
        continue;
      }
    }
    out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool stable_oracle(const Family& f, Set frozen) {
  for (int x = 1; x <= f.n(); ++x) {
    for (int y = x + 1; y <= f.n(); ++y) {
      if (frozen.contains(x) || frozen.contains(y)) continue;
      const auto img = shift_oracle(f, x, y);
      if (!std::equal(img.begin(), img.end(), f.begin(), f.end())) return false;
    }
  }
  return true;
}

Permutation random_perm(std::mt19937_64& rng, int n) {
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 1);
  std::shuffle(im.begin(), im.end(), rng);
  return Permutation(im);
}

Family greedy_intersecting(std::mt19937_64& rng, Params p) {
  auto all = k_subsets(p.n, p.k);
  std::shuffle(all.begin(), all.end(), rng);
  std::vector<Set> chosen;
  for (Set s : all) {
    if (std::all_of(chosen.begin(), chosen.end(), [&](Set t) { return s.intersects(t); })) chosen.push_back(s);
  }
  return Family(p, chosen);
}

std::vector<Set> as_vector(const Family& f) { return {f.begin(), f.end()}; }

}  // namespace

TEST(Shift, SpecExamples) {
  EXPECT_EQ(shift(Family({5, 4}, {Set{2, 3, 4, 5}}), 1, 2), Family({5, 4}, {Set{1, 3, 4, 5}}));
  const Family pair({3, 2}, {Set{2, 3}, Set{1, 3}});
  EXPECT_EQ(shift(pair, 1, 2), pair);
  const Family star = build(TemplateKind::Star, {9, 4});
  for (int y = 2; y <= 9; ++y) EXPECT_EQ(shift(star, 1, y), star);
}

TEST(Shift, RejectsBadPairs) {
  const Family f = build(TemplateKind::Star, {6, 3});
  EXPECT_THROW(shift(f, 3, 2), std::invalid_argument);
  EXPECT_THROW(shift(f, 2, 2), std::invalid_argument);
  EXPECT_THROW(shift(f, 1, 7), std::out_of_range);
}

TEST(Shift, MatchesDefinitionAndKeepsIntersecting) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 60; ++t) {
    const Params p{8 + t % 3, 3 + t % 2};
    const Family f = greedy_intersecting(rng, p);
    const int x = std::uniform_int_distribution<int>(1, p.n - 1)(rng);
    const int y = std::uniform_int_distribution<int>(x + 1, p.n)(rng);
    const Family g = shift(f, x, y);
    EXPECT_EQ(as_vector(g), shift_oracle(f, x, y));
    EXPECT_EQ(g.size(), f.size());
    EXPECT_TRUE(is_intersecting(g));
    EXPECT_EQ(shift_changes(f, x, y), static_cast<int>(std::count_if(f.begin(), f.end(), [&](Set s) { return !g.contains(s); })));
  }
}

TEST(Stabilize, SpecExamples) {
  const Family stable = build(TemplateKind::Star, {7, 3});
  EXPECT_TRUE(stabilize(stable).log.steps.empty());
  const auto single = stabilize(Family({5, 4}, {Set{2, 3, 4, 5}}));
  EXPECT_EQ(single.family, Family({5, 4}, {Set{1, 2, 3, 4}}));
  const Family j3 = build(TemplateKind::J, {10, 4}, 3);
  const auto r = stabilize(j3);
  EXPECT_EQ(r.family, j3);
  EXPECT_TRUE(r.log.steps.empty());
}

TEST(Stabilize, FixpointReplayAndPotential) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 25; ++t) {
    const Params p{9, 4};
    const Family f = relabel(greedy_intersecting(rng, p), random_perm(rng, p.n));
    Set frozen;
    if (t % 3 == 0) frozen = Set{2, 5};
    const auto r = stabilize(f, FrozenSet{frozen, 0});
    EXPECT_TRUE(stable_oracle(r.family, frozen));
    EXPECT_TRUE(is_stable(r.family, frozen));
    EXPECT_TRUE(is_intersecting(r.family));
    EXPECT_EQ(replay(f, r.log), r.family);
    // Every effective shift lowers the element sum by (y - x) per moved member.
    std::int64_t drop = 0;
    for (const auto& s : r.log.steps) drop += static_cast<std::int64_t>(s.changed) * (s.y - s.x);
    EXPECT_EQ(element_sum(f) - element_sum(r.family), drop);
    EXPECT_EQ(stabilize(r.family, FrozenSet{frozen, 0}).family, r.family);
  }
}

TEST(DetectCase, StableTemplateHasNoCase) {
  const Family j3 = build(TemplateKind::J, {10, 4}, 3);
  for (int x = 1; x <= 10; ++x) {
    for (int y = x + 1; y <= 10; ++y) EXPECT_FALSE(detect_case(j3, x, y)) << x << "," << y;
  }
}

TEST(DetectCase, ReverseShiftedStarIsCaseOne) {
  const Params p{9, 4};
  const Set t{1, 2, 3, 5};
  const Set decoy{2, 3, 5, 6};
  std::vector<Set> m;
  for (Set s : k_subsets(9, 4)) {
    if (s.contains(1) && (s & Set{2, 3, 4}).size() >= 2 && s != t) m.push_back(s);
  }
  m.push_back(decoy);
  const Family f(p, m);
  ASSERT_TRUE(is_intersecting(f));
  ASSERT_FALSE(classify(f).is_ekr);
  EXPECT_EQ(detect_case(f, 1, 6), 1);
}

TEST(DetectCase, ReverseShiftedG2IsCaseFourWithXInCore) {
  const Params p{9, 4};
  const Set core{1, 2, 3};
  const Set t{1, 2, 5, 6};
  const Set decoy{2, 5, 6, 7};
  std::vector<Set> m;
  for (Set s : k_subsets(9, 4)) {
    if ((s & core).size() >= 2 && s.intersects(decoy) && s != t) m.push_back(s);
  }
  m.push_back(decoy);
  const Family f(p, m);
  ASSERT_TRUE(is_intersecting(f));
  const auto d = detect_case_detail(f, 1, 7);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->case_id, 4);
  ASSERT_TRUE(d->g2);
  EXPECT_TRUE(d->g2->core.contains(1));
}

TEST(GuardedStabilize, StableJ3IsUntouched) {
  const Family j3 = build(TemplateKind::J, {10, 4}, 3);
  const auto r = guarded_stabilize(j3);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.family, j3);
  EXPECT_TRUE(r.frozen.elements.empty());
}

TEST(GuardedStabilize, RelabelledJ3ReturnsToJ3) {
  std::mt19937_64 rng(41);
  for (int n : {9, 10, 11}) {
    for (int t = 0; t < 4; ++t) {
      const Family f = relabel(build(TemplateKind::J, {n, 4}, 3), random_perm(rng, n));
      const auto r = guarded_stabilize(f);
      EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations.front());
      EXPECT_TRUE(stable_oracle(r.family, r.frozen.elements));
      EXPECT_TRUE(isomorphic_to(r.family, TemplateKind::J, 3));
      EXPECT_LE(r.frozen.elements.size(), 5);
    }
  }
}

TEST(GuardedStabilize, RelabelledK2KeepsHypotheses) {
  std::mt19937_64 rng(43);
  GuardOptions opts;
  opts.require_floor = false;
  for (int t = 0; t < 6; ++t) {
    const Family f = relabel(build(TemplateKind::K2, {9, 4}), random_perm(rng, 9));
    const auto r = guarded_stabilize(f, opts);
    EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations.front());
    EXPECT_EQ(r.family.size(), 50U);
    EXPECT_TRUE(stable_oracle(r.family, r.frozen.elements));
    const auto c = classify(r.family);
    EXPECT_FALSE(c.is_ekr || c.is_hm() || c.in_j2() || c.in_g2() || c.in_g3());
  }
}
