#include <gtest/gtest.h>

#include "ekr/classification.hpp"
#include "ekr/constructions.hpp"

using namespace ekr;

namespace {

// Direct counts from the membership definitions, independent of build().
template <typename Pred>
std::int64_t count_sets(Params p, Pred&& pred) {
  std::int64_t c = 0;
  for (Set s : k_subsets(p.n, p.k)) c += pred(s) ? 1 : 0;
  return c;
}

std::int64_t count_hm(Params p) {
  const Set e = Set::interval(2, p.k + 1);
  return count_sets(p, [&](Set s) { return (s.contains(1) && s.intersects(e)) || s == e; });
}

std::int64_t count_g(Params p, int i) {
  const Set e = Set::interval(2, i + 1);
  return count_sets(p, [&](Set s) { return e.subset_of(s) || (s.contains(1) && s.intersects(e)); });
}

std::int64_t count_j(Params p, int i) {
  const Set e = Set::interval(2, p.k);
  const Set j = Set::interval(p.k + 1, p.k + i);
  return count_sets(p, [&](Set s) {
    return (e.subset_of(s) && s.intersects(j)) || j.with(1).subset_of(s) || (s.contains(1) && s.intersects(e));
  });
}

std::int64_t count_k2(Params p) {
  const Set c = Set::interval(2, p.k - 1);
  const Set e1 = c | Set{p.k, p.k + 1};
  const Set e2 = c | Set{p.k + 2, p.k + 3};
  return count_sets(p, [&](Set s) { return (s.contains(1) && s.intersects(e1) && s.intersects(e2)) || s == e1 || s == e2; });
}

}  // namespace

TEST(Build, SpecExamples) {
  EXPECT_EQ(build(TemplateKind::Star, {6, 3}).size(), 10U);
  EXPECT_EQ(build(TemplateKind::HM, {9, 4}).size(), 53U);
  EXPECT_EQ(build(TemplateKind::K2, {9, 4}).size(), 50U);
  EXPECT_EQ(build(TemplateKind::J, {10, 4}, 3).size(), 68U);
}

TEST(Build, SizesMatchDefinitionsAndClosedForms) {
  for (int k = 3; k <= 5; ++k) {
    for (int n = 2 * k + 1; n <= 3 * k + 2; ++n) {
      const Params p{n, k};
      const auto hm = count_hm(p);
      EXPECT_EQ(static_cast<std::int64_t>(build(TemplateKind::HM, p).size()), hm);
      EXPECT_EQ(formula_value(Bound::HM_bound, p), hm);
      for (int i = 2; i <= k; ++i) {
        const auto g = count_g(p, i);
        EXPECT_EQ(static_cast<std::int64_t>(build(TemplateKind::G, p, i).size()), g);
        EXPECT_EQ(formula_value(Bound::Gi_size, p, i), g);
      }
      for (int i = 1; i <= 3; ++i) {
        const auto j = count_j(p, i);
        EXPECT_EQ(static_cast<std::int64_t>(build(TemplateKind::J, p, i).size()), j);
        EXPECT_EQ(formula_value(Bound::Ji_size, p, i), j);
      }
      EXPECT_EQ(formula_value(Bound::HK_bound, p), count_j(p, 2));
      EXPECT_EQ(formula_value(Bound::Eq2_J3, p), count_j(p, 3));
      const auto k2 = count_k2(p);
      EXPECT_EQ(static_cast<std::int64_t>(build(TemplateKind::K2, p).size()), k2);
      EXPECT_EQ(formula_value(Bound::Eq1_K2, p, 2), k2);
    }
  }
}

TEST(Build, AllTemplatesAreIntersecting) {
  const Params p{10, 4};
  EXPECT_TRUE(is_intersecting(build(TemplateKind::Star, p)));
  EXPECT_TRUE(is_intersecting(build(TemplateKind::HM, p)));
  EXPECT_TRUE(is_intersecting(build(TemplateKind::K2, p)));
  EXPECT_TRUE(is_intersecting(build(TemplateKind::FP, p)));
  for (int i = 2; i <= 4; ++i) EXPECT_TRUE(is_intersecting(build(TemplateKind::G, p, i)));
  for (int i = 1; i <= 4; ++i) EXPECT_TRUE(is_intersecting(build(TemplateKind::J, p, i)));
  EXPECT_TRUE(is_intersecting(build(TemplateKind::T3, {7, 3})));
}

TEST(Build, GkEqualsHm) {
  for (int n = 9; n <= 11; ++n) EXPECT_EQ(build(TemplateKind::G, {n, 4}, 4), build(TemplateKind::HM, {n, 4}));
}

TEST(Build, T3IsSetsMeetingTripleTwice) {
  const Family t = build(TemplateKind::T3, {7, 3});
  EXPECT_EQ(t.size(), 13U);
  for (Set s : t) EXPECT_GE((s & Set{1, 2, 3}).size(), 2);
}

TEST(Validate, NamesTheBrokenConstraint) {
  const Params p{9, 4};
  auto message = [&](const TemplateDescriptor& d) {
    try {
      validate(d, p);
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_EQ(message(TemplateDescriptor::hm(2, Set{2, 3, 4, 5})), "center must not lie in E");
  EXPECT_EQ(message(TemplateDescriptor::k2(1, Set{2, 3, 4, 5}, Set{2, 6, 7, 8})), "|E1 n E2| must be k-2");
  EXPECT_EQ(message(TemplateDescriptor::g(5, 1, Set{2, 3, 4, 5, 6})), "G(i) needs 2 <= i <= k");
  EXPECT_EQ(message(TemplateDescriptor::j(2, 1, Set{2, 3, 4}, Set{4, 5})), "J must avoid E and the center");
  EXPECT_EQ(message(TemplateDescriptor::star(10)), "center must lie in [n]");
  EXPECT_EQ(message(TemplateDescriptor::t3(Set{1, 2, 3})), "T(n,3) needs k = 3");
  EXPECT_THROW(build(TemplateDescriptor::star(0), p), std::invalid_argument);
}

TEST(Names, RoundTrip) {
  const Params p{10, 4};
  for (const char* name : {"star", "hm", "k2", "fp", "g2", "g3", "j2", "j3"}) {
    int index = 0;
    const auto kind = parse_template_kind(name, &index);
    EXPECT_EQ(TemplateDescriptor::canonical(kind, p, index).name(), name);
  }
  EXPECT_THROW(parse_template_kind("q7"), std::invalid_argument);
  EXPECT_THROW(parse_template_kind("g"), std::invalid_argument);
}

TEST(FormulaValue, SpecExamples) {
  const Params p{9, 4};
  EXPECT_EQ(formula_value(Bound::Eq2_J3, p), 56 - 4 - 3 - 2 + 3);
  EXPECT_EQ(formula_value(Bound::HK_bound, p), 56 - 4 - 3 + 2);
  EXPECT_EQ(formula_value(Bound::Eq1_K2, p, 2), 56 - 8 + 0 + 2);
  EXPECT_EQ(formula_value(Bound::EKR_max, p), 56);
  EXPECT_EQ(formula_value(Bound::Main_i_bound, p), 50);
  EXPECT_EQ(formula_value(Bound::Main_ii_bound, {10, 4}), 68);
}

TEST(FormulaValue, DomainChecks) {
  EXPECT_THROW(formula_value(Bound::HM_bound, {8, 4}), std::invalid_argument);
  EXPECT_THROW(formula_value(Bound::Gi_size, {9, 4}), std::invalid_argument);
  EXPECT_THROW(formula_value(Bound::Gi_size, {9, 4}, 5), std::invalid_argument);
  EXPECT_THROW(formula_value(Bound::Eq1_K2, {9, 4}, 1), std::invalid_argument);
  EXPECT_EQ(formula_value(Bound::Gi_size, {8, 4}, 2), count_g({8, 4}, 2));
}

TEST(Crossover, SpecExamples) {
  const auto r9 = crossover_table(4, 9, 10);
  EXPECT_EQ(r9[0].k2, 50);
  EXPECT_EQ(r9[0].j3, 50);
  EXPECT_EQ(r9[0].ordering, Ordering::Equal);
  EXPECT_EQ(r9[1].j3, 68);
  EXPECT_LT(r9[1].k2, 68);
  EXPECT_EQ(r9[1].ordering, Ordering::Less);
  const auto r11 = crossover_table(5, 11, 11);
  EXPECT_GE(r11[0].k2, r11[0].j3);
  EXPECT_THROW(crossover_table(3, 7, 9), std::invalid_argument);
  EXPECT_THROW(crossover_table(4, 8, 9), std::invalid_argument);
}

TEST(Crossover, PatternHoldsForKUpToTen) {
  for (int k = 4; k <= 10; ++k) {
    for (const auto& row : crossover_table(k, 2 * k + 1, 4 * k)) {
      EXPECT_TRUE(row.matches_pattern) << "k=" << k << " n=" << row.n;
    }
  }
}
