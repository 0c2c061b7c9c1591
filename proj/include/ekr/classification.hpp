#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "ekr/constructions.hpp"
#include "ekr/core.hpp"

namespace ekr {

struct HmWitness {
  int center = 0;
  Set exceptional;
  friend bool operator==(const HmWitness&, const HmWitness&) = default;
};

struct J2Witness {
  int center = 0;
  Set kernel;
  Set pages;
  friend bool operator==(const J2Witness&, const J2Witness&) = default;
};

/// The 3-set every member meets at least twice.
struct G2Witness {
  Set core;
  friend bool operator==(const G2Witness&, const G2Witness&) = default;
};

struct G3Witness {
  int center = 0;
  Set core;
  friend bool operator==(const G3Witness&, const G3Witness&) = default;
};

inline TemplateDescriptor descriptor(const HmWitness& w) { return TemplateDescriptor::hm(w.center, w.exceptional); }
inline TemplateDescriptor descriptor(const J2Witness& w) {
  return TemplateDescriptor::j(2, w.center, w.kernel, w.pages);
}
/// G_2 is symmetric in its core; the least core element is used as center.
inline TemplateDescriptor descriptor(const G2Witness& w) {
  return TemplateDescriptor::g(2, w.core.min(), w.core.without(w.core.min()));
}
inline TemplateDescriptor descriptor(const G3Witness& w) { return TemplateDescriptor::g(3, w.center, w.core); }

struct ClassificationReport {
  bool is_ekr = false;
  int ekr_center = 0;
  std::optional<HmWitness> hm;
  std::optional<J2Witness> j2;
  std::optional<G2Witness> g2;
  std::optional<G3Witness> g3;
  int min_missing_degree = 0;

  bool is_hm() const { return hm.has_value(); }
  bool in_j2() const { return j2.has_value(); }
  bool in_g2() const { return g2.has_value(); }
  bool in_g3() const { return g3.has_value(); }
};

namespace detail {

inline std::vector<Set> unhit_by(std::span<const Set> sets, Set chosen) {
  std::vector<Set> out;
  for (Set s : sets) {
    if (!s.intersects(chosen)) out.push_back(s);
  }
  return out;
}

}  // namespace detail

/// Lexicographically least `size`-subset of `allowed` meeting every set.
inline std::optional<Set> lex_least_hitting_set(std::span<const Set> sets, Set allowed, int size) {
  if (size < 0 || allowed.size() < size) return std::nullopt;
  Set chosen;
  int last = 0;
  for (int pos = 0; pos < size; ++pos) {
    const int remaining = size - pos - 1;
    bool placed = false;
    for (int e = last + 1; e <= kMaxGround && !placed; ++e) {
      if (!allowed.contains(e)) continue;
      const Set rest = allowed - Set::interval(1, e);
      if (rest.size() < remaining) break;
      const Set cand = chosen.with(e);
      const auto unhit = detail::unhit_by(sets, cand);
      Set scratch;
      if (detail::hit_within(unhit, rest, remaining, scratch)) {
        chosen = cand;
        last = e;
        placed = true;
      }
    }
    if (!placed) return std::nullopt;
  }
  if (!detail::unhit_by(sets, chosen).empty()) return std::nullopt;
  return chosen;
}

/// Least element common to all members; element 1 for the empty family.
inline std::optional<int> find_star_center(const Family& f) {
  Set common = ground_set(f.n());
  for (Set s : f) common = common & s;
  if (common.empty()) return std::nullopt;
  return common.min();
}

namespace detail {

inline std::vector<Set> missing(const Family& f, int x) {
  std::vector<Set> out;
  for (Set s : f) {
    if (!s.contains(x)) out.push_back(s);
  }
  return out;
}

inline std::vector<Set> containing(const Family& f, int x) {
  std::vector<Set> out;
  for (Set s : f) {
    if (s.contains(x)) out.push_back(s);
  }
  return out;
}

inline std::optional<HmWitness> hm_at(const Family& f, int x) {
  const auto miss = missing(f, x);
  if (miss.size() > 1) return std::nullopt;
  const auto with_x = containing(f, x);
  if (miss.size() == 1) {
    const Set e = miss.front();
    for (Set s : with_x) {
      if (!s.intersects(e)) return std::nullopt;
    }
    return HmWitness{x, e};
  }
  auto e = lex_least_hitting_set(with_x, ground_set(f.n()).without(x), f.k());
  if (!e) return std::nullopt;
  return HmWitness{x, *e};
}

inline bool j2_accepts(Set s, int x, Set kernel, Set pages) {
  return template_contains(TemplateDescriptor::j(2, x, kernel, pages), s);
}

inline bool j2_valid(const Family& f, int x, Set kernel, Set pages) {
  for (Set s : f) {
    if (!j2_accepts(s, x, kernel, pages)) return false;
  }
  return true;
}

inline bool witness_less(const J2Witness& a, const J2Witness& b) {
  if (a.kernel != b.kernel) return a.kernel < b.kernel;
  return a.pages < b.pages;
}

inline std::optional<J2Witness> j2_at(const Family& f, int x) {
  const int n = f.n();
  const int k = f.k();
  if (k < 2 || n < k + 2) return std::nullopt;
  const auto miss = missing(f, x);
  if (miss.size() > 2) return std::nullopt;
  const Set ground = ground_set(n);
  std::optional<J2Witness> best;
  auto offer = [&](Set kernel, Set pages) {
    if (kernel.size() != k - 1 || pages.size() != 2 || kernel.contains(x) || pages.contains(x)) return;
    if (kernel.intersects(pages)) return;
    if (!j2_valid(f, x, kernel, pages)) return;
    J2Witness w{x, kernel, pages};
    if (!best || witness_less(w, *best)) best = w;
  };
  const auto with_x = containing(f, x);
  if (miss.size() == 2) {
    const Set kernel = miss[0] & miss[1];
    offer(kernel, (miss[0] | miss[1]) - kernel);
    return best;
  }
  if (miss.size() == 1) {
    const Set m = miss[0];
    m.for_each([&](int j1) {
      const Set kernel = m.without(j1);
      Set common = ground - kernel - Set{x, j1};
      for (Set s : with_x) {
        if (!s.intersects(kernel)) common = common & s;
      }
      if (!common.empty()) offer(kernel, Set{j1, common.min()});
    });
    return best;
  }
  for (Set pages : k_subsets(ground.without(x), 2)) {
    std::vector<Set> rest;
    for (Set s : with_x) {
      if (!pages.subset_of(s)) rest.push_back(s);
    }
    auto kernel = lex_least_hitting_set(rest, ground - pages.with(x), k - 1);
    if (kernel) offer(*kernel, pages);
  }
  return best;
}

inline bool g2_valid(const Family& f, Set core) {
  for (Set s : f) {
    if ((s & core).size() < 2) return false;
  }
  return true;
}

inline bool g3_valid(const Family& f, int c, Set core) {
  for (Set s : f) {
    if (!(core.subset_of(s) || (s.contains(c) && s.intersects(core)))) return false;
  }
  return true;
}

inline std::vector<G3Witness> g3_at(const Family& f, int c) {
  std::vector<G3Witness> out;
  if (f.k() < 3 || f.n() < 4) return out;
  const auto miss = missing(f, c);
  const Set ground = ground_set(f.n());
  if (!miss.empty()) {
    Set common = ground;
    for (Set s : miss) common = common & s;
    for (Set core : k_subsets(common, 3)) {
      if (g3_valid(f, c, core)) out.push_back({c, core});
    }
    return out;
  }
  for (Set core : k_subsets(ground.without(c), 3)) {
    if (g3_valid(f, c, core)) out.push_back({c, core});
  }
  return out;
}

}  // namespace detail

/// HM witness (center, exceptional set); restricted to `center` if given.
inline std::optional<HmWitness> find_hm(const Family& f, std::optional<int> center = std::nullopt) {
  if (f.k() >= f.n()) return std::nullopt;
  if (center) return detail::hm_at(f, *center);
  for (int x = 1; x <= f.n(); ++x) {
    if (auto w = detail::hm_at(f, x)) return w;
  }
  return std::nullopt;
}

inline std::optional<J2Witness> find_j2(const Family& f, std::optional<int> center = std::nullopt) {
  if (center) return detail::j2_at(f, *center);
  for (int x = 1; x <= f.n(); ++x) {
    if (auto w = detail::j2_at(f, x)) return w;
  }
  return std::nullopt;
}

/// Every G_2 core of the family, in lexicographic order.
inline std::vector<G2Witness> all_g2_witnesses(const Family& f) {
  std::vector<G2Witness> out;
  if (f.k() < 2 || f.n() < 3) return out;
  const Set ground = ground_set(f.n());
  if (f.empty()) {
    for (Set core : k_subsets(ground, 3)) out.push_back({core});
    return out;
  }
  const Set first = f[0];
  std::vector<Set> cores;
  for (Set pair : k_subsets(first, 2)) {
    (ground - pair).for_each([&](int t) { cores.push_back(pair.with(t)); });
  }
  std::sort(cores.begin(), cores.end());
  cores.erase(std::unique(cores.begin(), cores.end()), cores.end());
  for (Set core : cores) {
    if (detail::g2_valid(f, core)) out.push_back({core});
  }
  return out;
}

inline std::optional<G2Witness> find_g2(const Family& f, std::optional<int> in_core = std::nullopt) {
  for (const auto& w : all_g2_witnesses(f)) {
    if (!in_core || w.core.contains(*in_core)) return w;
  }
  return std::nullopt;
}

/// Every G_3 (center, core) pair, ordered by center then core.
inline std::vector<G3Witness> all_g3_witnesses(const Family& f) {
  std::vector<G3Witness> out;
  for (int c = 1; c <= f.n(); ++c) {
    auto at = detail::g3_at(f, c);
    out.insert(out.end(), at.begin(), at.end());
  }
  return out;
}

inline std::optional<G3Witness> find_g3(const Family& f, std::optional<int> center = std::nullopt) {
  if (center) {
    auto at = detail::g3_at(f, *center);
    if (at.empty()) return std::nullopt;
    return at.front();
  }
  auto all = all_g3_witnesses(f);
  if (all.empty()) return std::nullopt;
  return all.front();
}

inline ClassificationReport classify(const Family& f) {
  if (!is_intersecting(f)) throw std::invalid_argument("classify: family is not intersecting");
  ClassificationReport r;
  if (auto c = find_star_center(f)) {
    r.is_ekr = true;
    r.ekr_center = *c;
  }
  r.hm = find_hm(f);
  r.j2 = find_j2(f);
  r.g2 = find_g2(f);
  r.g3 = find_g3(f);
  r.min_missing_degree = min_missing_degree(f);
  return r;
}

inline bool is_template_subfamily(const Family& f, const TemplateDescriptor& d) {
  validate(d, f.params());
  for (Set s : f) {
    if (!template_contains(d, s)) return false;
  }
  return true;
}

enum class IsoMode { Equal, Subfamily };

/// A bijection pi with relabel(f, pi) == g (Equal) or contained in g
/// (Subfamily). Backtracks over element images, pruned by element and pair
/// degrees and by checking each member as soon as all its elements are
/// mapped.
inline std::optional<Permutation> find_isomorphism(const Family& f, const Family& g, IsoMode mode = IsoMode::Equal) {
  if (f.params() != g.params()) return std::nullopt;
  if (mode == IsoMode::Equal && f.size() != g.size()) return std::nullopt;
  if (f.size() > g.size()) return std::nullopt;
  const int n = f.n();
  auto idx = [](int e) { return static_cast<std::size_t>(e); };
  auto degrees = [&](const Family& h) {
    std::vector<int> d(idx(n) + 1, 0);
    std::vector<std::vector<int>> pd(idx(n) + 1, std::vector<int>(idx(n) + 1, 0));
    for (Set s : h) {
      const auto el = s.elements();
      for (std::size_t i = 0; i < el.size(); ++i) {
        ++d[idx(el[i])];
        for (std::size_t j = i + 1; j < el.size(); ++j) {
          ++pd[idx(el[i])][idx(el[j])];
          ++pd[idx(el[j])][idx(el[i])];
        }
      }
    }
    return std::pair{d, pd};
  };
  const auto [df, pf] = degrees(f);
  const auto [dg, pg] = degrees(g);
  const bool equal = mode == IsoMode::Equal;
  auto compatible = [&](int a, int b) { return equal ? df[idx(a)] == dg[idx(b)] : df[idx(a)] <= dg[idx(b)]; };
  if (equal) {
    auto sf = df;
    auto sg = dg;
    std::sort(sf.begin(), sf.end());
    std::sort(sg.begin(), sg.end());
    if (sf != sg) return std::nullopt;
  }

  // Most constrained elements first, then higher degree.
  std::vector<int> order;
  std::vector<int> options(idx(n) + 1, 0);
  for (int a = 1; a <= n; ++a) {
    order.push_back(a);
    for (int b = 1; b <= n; ++b) options[idx(a)] += compatible(a, b) ? 1 : 0;
    if (options[idx(a)] == 0) return std::nullopt;
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (options[idx(a)] != options[idx(b)]) return options[idx(a)] < options[idx(b)];
    return df[idx(a)] > df[idx(b)];
  });
  std::vector<int> position(idx(n) + 1, 0);
  for (std::size_t i = 0; i < order.size(); ++i) position[idx(order[i])] = static_cast<int>(i);
  // Members of f grouped by the depth at which they become fully mapped.
  std::vector<std::vector<Set>> completes(order.size());
  for (Set s : f) {
    int last = 0;
    s.for_each([&](int e) { last = std::max(last, position[idx(e)]); });
    completes[static_cast<std::size_t>(last)].push_back(s);
  }

  std::vector<int> image(idx(n) + 1, 0);
  std::vector<bool> used(idx(n) + 1, false);
  auto map_set = [&](Set s) {
    Set out;
    s.for_each([&](int e) { out.insert(image[idx(e)]); });
    return out;
  };
  auto rec = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == order.size()) return true;
    const int a = order[depth];
    for (int b = 1; b <= n; ++b) {
      if (used[idx(b)] || !compatible(a, b)) continue;
      bool ok = true;
      for (std::size_t i = 0; i < depth && ok; ++i) {
        const int a2 = order[i];
        const int b2 = image[idx(a2)];
        ok = equal ? pf[idx(a)][idx(a2)] == pg[idx(b)][idx(b2)] : pf[idx(a)][idx(a2)] <= pg[idx(b)][idx(b2)];
      }
      if (!ok) continue;
      image[idx(a)] = b;
      used[idx(b)] = true;
      for (Set s : completes[depth]) {
        if (!g.contains(map_set(s))) {
          ok = false;
          break;
        }
      }
      if (ok && self(self, depth + 1)) return true;
      used[idx(b)] = false;
      image[idx(a)] = 0;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  std::vector<int> im(idx(n));
  for (int a = 1; a <= n; ++a) im[idx(a - 1)] = image[idx(a)];
  return Permutation(std::move(im));
}

inline std::optional<Permutation> isomorphic_to(const Family& f, const TemplateDescriptor& d,
                                                IsoMode mode = IsoMode::Equal) {
  return find_isomorphism(f, build(d, f.params()), mode);
}

inline std::optional<Permutation> isomorphic_to(const Family& f, TemplateKind kind, int index = 0,
                                                IsoMode mode = IsoMode::Equal) {
  return isomorphic_to(f, TemplateDescriptor::canonical(kind, f.params(), index), mode);
}

/// Pairs {a,b} with degree above 2n-7 that are not inside the G_2 core.
/// Empty means the localization holds (4-uniform families only).
inline std::vector<Set> g2_pair_claim_counterexamples(const Family& f, Set core) {
  std::vector<Set> bad;
  const int threshold = 2 * f.n() - 7;
  for (Set pair : k_subsets(f.n(), 2)) {
    if (subset_degree(f, pair) > threshold && !pair.subset_of(core)) bad.push_back(pair);
  }
  return bad;
}

/// Pairs violating either degree localization for a G_3 subfamily with
/// center c and core e: degree >= 3n-12 forces c into the pair, degree
/// > 3n-12 forces the pair into {c} u e as well.
inline std::vector<Set> g3_pair_claim_counterexamples(const Family& f, int c, Set core) {
  std::vector<Set> bad;
  const int threshold = 3 * f.n() - 12;
  const Set b = core.with(c);
  for (Set pair : k_subsets(f.n(), 2)) {
    const int d = subset_degree(f, pair);
    const bool weak_fail = d >= threshold && !pair.contains(c);
    const bool strong_fail = d > threshold && !(pair.subset_of(b) && pair.contains(c));
    if (weak_fail || strong_fail) bad.push_back(pair);
  }
  return bad;
}

/// Triples with degree >= n-3 that are neither inside {c} u e nor meet it in
/// exactly two elements one of which is c. Meaningful for n > 6.
inline std::vector<Set> g3_triple_claim_counterexamples(const Family& f, int c, Set core) {
  std::vector<Set> bad;
  const int threshold = f.n() - 3;
  const Set b = core.with(c);
  for (Set t : k_subsets(f.n(), 3)) {
    if (subset_degree(f, t) < threshold) continue;
    const bool inside = t.subset_of(b);
    const bool two_with_center = (t & b).size() == 2 && t.contains(c);
    if (!inside && !two_with_center) bad.push_back(t);
  }
  return bad;
}

}  // namespace ekr
