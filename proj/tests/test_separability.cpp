#include <gtest/gtest.h>

#include <random>

#include "ekr/constructions.hpp"
#include "ekr/separability.hpp"

using namespace ekr;

namespace {

// Tries every split into two nonempty parts.
bool separable_by_bipartitions(const std::vector<Set>& b) {
  const std::size_t m = b.size();
  if (m < 2) return false;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (m - 1)); ++mask) {
    bool cross = true;
    for (std::size_t i = 0; i < m && cross; ++i) {
      if ((mask >> i & 1U) == 0) continue;
      for (std::size_t j = 0; j < m && cross; ++j) {
        if ((mask >> j & 1U) == 0 && !b[i].intersects(b[j])) cross = false;
      }
    }
    if (cross) return true;
  }
  return false;
}

}  // namespace

TEST(NonSeparable, SpecExamples) {
  EXPECT_TRUE(is_non_separable(std::vector<Set>{Set{1, 2, 3}}));
  EXPECT_TRUE(is_non_separable(std::vector<Set>{}));
  EXPECT_FALSE(is_non_separable(std::vector<Set>{Set{1, 2, 3}, Set{1, 4, 5}}));
  EXPECT_TRUE(is_non_separable(std::vector<Set>{Set{1, 2, 3}, Set{4, 5, 6}}));
}

TEST(NonSeparable, AgreesWithBipartitionEnumeration) {
  std::mt19937_64 rng(23);
  int separable = 0;
  for (int t = 0; t < 300; ++t) {
    const int n = std::uniform_int_distribution<int>(5, 8)(rng);
    const int r = std::uniform_int_distribution<int>(2, 3)(rng);
    auto all = k_subsets(n, r);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min<std::size_t>(all.size(), std::uniform_int_distribution<std::size_t>(1, 12)(rng)));
    const bool oracle = separable_by_bipartitions(all);
    separable += oracle ? 1 : 0;
    EXPECT_EQ(is_non_separable(all), !oracle);
    const auto split = find_separation(all);
    EXPECT_EQ(split.has_value(), oracle);
    if (split) {
      EXPECT_FALSE(split->first.empty());
      EXPECT_FALSE(split->second.empty());
      EXPECT_EQ(split->first.size() + split->second.size(), all.size());
      EXPECT_TRUE(are_cross_intersecting(split->first, split->second));
    }
  }
  EXPECT_GT(separable, 20);
  EXPECT_LT(separable, 280);
}

TEST(BoundaryFamily, TwentySetsOnSevenPoints) {
  const auto b = boundary_family(7, 3, Set{1, 2});
  EXPECT_EQ(b.size(), 20U);
  for (Set s : b) EXPECT_EQ((s & Set{1, 2}).size(), 1);
  EXPECT_TRUE(is_non_separable(b));
  EXPECT_FALSE(separable_by_bipartitions(b));
}

TEST(BoundaryFamily, NonSeparableAcrossSizes) {
  for (int r = 2; r <= 4; ++r) {
    for (int m = 2 * r + 1; m <= 2 * r + 3; ++m) {
      for (int a = 2; a <= r + 1 && a < m; ++a) {
        const auto b = boundary_family(m, r, Set::interval(1, a));
        EXPECT_TRUE(is_non_separable(b)) << m << "," << r << "," << a;
      }
    }
  }
}

TEST(ShiftBoundary, FullStar) {
  const Family star = build(TemplateKind::Star, {7, 3});
  for (int y = 2; y <= 7; ++y) {
    const auto b = shift_boundary(star, 1, y);
    EXPECT_EQ(b.b_x.size(), 10U);
    for (Set g : b.b_x) EXPECT_TRUE(g.contains(1) && !g.contains(y));
  }
}

TEST(ShiftBoundary, J3CenterToPage) {
  const Params p{10, 4};
  const Family j3 = build(TemplateKind::J, p, 3);
  const Set kernel{2, 3, 4};
  for (int y = 5; y <= 7; ++y) {
    std::vector<Set> expected;
    for (Set s : k_subsets(ground_set(10) - Set{1, y}, 3)) {
      const int c = (s & kernel).size();
      if (c > 0 && c < 3) expected.push_back(s);
    }
    auto got = shift_boundary(j3, 1, y).b_prime;
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expected);
  }
}

TEST(ShiftBoundary, ReferenceSplit) {
  const Params p{9, 4};
  const Family hm = build(TemplateKind::HM, p);
  const Family star = build(TemplateKind::Star, p);
  const auto b = shift_boundary(hm, 1, 2, &star);
  EXPECT_EQ(b.c_x.size() + b.d_x.size(), b.b_x.size());
  EXPECT_EQ(b.c_x.size(), b.b_x.size());
  EXPECT_THROW(shift_boundary(hm, 3, 3), std::invalid_argument);
}

TEST(Rigidity, AllTemplatesPass) {
  const std::vector<std::pair<TemplateKind, int>> kinds{{TemplateKind::J, 2}, {TemplateKind::J, 3}, {TemplateKind::G, 2}};
  for (Params p : std::vector<Params>{{9, 4}, {10, 4}, {11, 5}, {12, 5}}) {
    auto list = kinds;
    list.emplace_back(TemplateKind::G, p.k - 1);
    for (auto [kind, i] : list) {
      const auto d = TemplateDescriptor::canonical(kind, p, i);
      for (const auto& r : check_rigidity(d, p)) {
        EXPECT_TRUE(r.pass) << d.name() << " n=" << p.n << " k=" << p.k << " (" << r.x << "," << r.y << ")";
        if (r.block_x == r.block_y) {
          EXPECT_TRUE(r.trivial);
        }
      }
    }
  }
}

TEST(Rigidity, J3PageToRestIsStarPlusKernelSet) {
  const Params p{11, 5};
  const auto b = shift_boundary(build(TemplateKind::J, p, 3), 6, 10);
  const std::vector<Set> expected{Set{1, 7, 8, 9}, Set{1, 7, 8, 11}, Set{2, 3, 4, 5}};
  EXPECT_EQ(b.b_prime, expected);
  EXPECT_TRUE(is_non_separable(b.b_prime));
}

TEST(Rigidity, RejectsUnsupportedTemplates) {
  EXPECT_THROW(check_rigidity(TemplateDescriptor::canonical(TemplateKind::HM, {9, 4}), {9, 4}), std::invalid_argument);
  EXPECT_THROW(check_rigidity(TemplateDescriptor::canonical(TemplateKind::J, {10, 4}, 1), {10, 4}), std::invalid_argument);
}
