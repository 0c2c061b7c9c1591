#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ekr/binomial.hpp"
#include "ekr/core.hpp"

namespace ekr {

enum class TemplateKind { Star, HM, T3, G, J, K2, FP };

/// Names one of the standard constructions together with its placement.
///
/// Field use per kind:
///   Star  center
///   HM    center, core (the exceptional k-set)
///   T3    core (the 3-set every member meets twice), k = 3 only
///   G     index i, center, core (|core| = i)
///   J     index i, center, core (kernel, |core| = k-1), pages (|pages| = i)
///   K2    center, e1, e2 with |e1 & e2| = k-2
///   FP    center, y (|y| = k), z (|z| = k-1), y0 (two elements of y)
struct TemplateDescriptor {
  TemplateKind kind = TemplateKind::Star;
  int index = 0;
  int center = 0;
  Set core;
  Set pages;
  Set e1;
  Set e2;
  Set y;
  Set z;
  Set y0;

  static TemplateDescriptor star(int x) {
    TemplateDescriptor d;
    d.kind = TemplateKind::Star;
    d.center = x;
    return d;
  }
  static TemplateDescriptor hm(int x, Set e) {
    TemplateDescriptor d;
    d.kind = TemplateKind::HM;
    d.center = x;
    d.core = e;
    return d;
  }
  static TemplateDescriptor t3(Set triple) {
    TemplateDescriptor d;
    d.kind = TemplateKind::T3;
    d.core = triple;
    return d;
  }
  static TemplateDescriptor g(int i, int x, Set e) {
    TemplateDescriptor d;
    d.kind = TemplateKind::G;
    d.index = i;
    d.center = x;
    d.core = e;
    return d;
  }
  static TemplateDescriptor j(int i, int x, Set kernel, Set pages) {
    TemplateDescriptor d;
    d.kind = TemplateKind::J;
    d.index = i;
    d.center = x;
    d.core = kernel;
    d.pages = pages;
    return d;
  }
  static TemplateDescriptor k2(int x, Set a, Set b) {
    TemplateDescriptor d;
    d.kind = TemplateKind::K2;
    d.center = x;
    d.e1 = a;
    d.e2 = b;
    return d;
  }
  static TemplateDescriptor fp(int x, Set ys, Set zs, Set y0s) {
    TemplateDescriptor d;
    d.kind = TemplateKind::FP;
    d.center = x;
    d.y = ys;
    d.z = zs;
    d.y0 = y0s;
    return d;
  }

  /// Default placement: center 1, core/kernel on the next elements, pages
  /// after the kernel.
  static TemplateDescriptor canonical(TemplateKind kind, Params p, int i = 0) {
    const int k = p.k;
    switch (kind) {
      case TemplateKind::Star:
        return star(1);
      case TemplateKind::HM:
        return hm(1, Set::interval(2, k + 1));
      case TemplateKind::T3:
        return t3(Set::interval(1, 3));
      case TemplateKind::G:
        return g(i, 1, Set::interval(2, i + 1));
      case TemplateKind::J:
        return j(i, 1, Set::interval(2, k), Set::interval(k + 1, k + i));
      case TemplateKind::K2: {
        const Set common = Set::interval(2, k - 1);
        return k2(1, common | Set{k, k + 1}, common | Set{k + 2, k + 3});
      }
      case TemplateKind::FP:
        return fp(1, Set::interval(2, k + 1), Set::interval(k + 2, 2 * k), Set{2, 3});
    }
    throw std::logic_error("unknown template kind");
  }

  std::string name() const {
    switch (kind) {
      case TemplateKind::Star: return "star";
      case TemplateKind::HM: return "hm";
      case TemplateKind::T3: return "t3";
      case TemplateKind::G: return "g" + std::to_string(index);
      case TemplateKind::J: return "j" + std::to_string(index);
      case TemplateKind::K2: return "k2";
      case TemplateKind::FP: return "fp";
    }
    return "?";
  }

  friend bool operator==(const TemplateDescriptor&, const TemplateDescriptor&) = default;
};

/// Parses "star", "hm", "t3", "k2", "fp", "g<i>", "j<i>".
inline TemplateKind parse_template_kind(const std::string& name, int* index = nullptr) {
  auto num = [&](std::size_t from) {
    if (name.size() <= from) throw std::invalid_argument("template '" + name + "' needs an index");
    const int v = std::stoi(name.substr(from));
    if (index != nullptr) *index = v;
  };
  if (name == "star") return TemplateKind::Star;
  if (name == "hm") return TemplateKind::HM;
  if (name == "t3") return TemplateKind::T3;
  if (name == "k2") return TemplateKind::K2;
  if (name == "fp") return TemplateKind::FP;
  if (name.starts_with("g")) {
    num(1);
    return TemplateKind::G;
  }
  if (name.starts_with("j")) {
    num(1);
    return TemplateKind::J;
  }
  throw std::invalid_argument("unknown template '" + name + "'");
}

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

inline bool in_ground(int x, Params p) { return x >= 1 && x <= p.n; }

}  // namespace detail

/// Throws std::invalid_argument naming the first violated constraint.
inline void validate(const TemplateDescriptor& d, Params p) {
  using detail::in_ground;
  using detail::require;
  p.validate();
  const Set ground = ground_set(p.n);
  const int k = p.k;
  auto inside = [&](Set s, const char* what) {
    require(s.subset_of(ground), std::string(what) + " must lie inside [n]");
  };
  switch (d.kind) {
    case TemplateKind::Star:
      require(in_ground(d.center, p), "center must lie in [n]");
      break;
    case TemplateKind::HM:
      require(in_ground(d.center, p), "center must lie in [n]");
      inside(d.core, "E");
      require(d.core.size() == k, "|E| must be k");
      require(!d.core.contains(d.center), "center must not lie in E");
      break;
    case TemplateKind::T3:
      require(k == 3, "T(n,3) needs k = 3");
      inside(d.core, "the triple");
      require(d.core.size() == 3, "the triple must have 3 elements");
      break;
    case TemplateKind::G:
      require(d.index >= 2 && d.index <= k, "G(i) needs 2 <= i <= k");
      require(in_ground(d.center, p), "center must lie in [n]");
      inside(d.core, "E");
      require(d.core.size() == d.index, "|E| must be i");
      require(!d.core.contains(d.center), "center must not lie in E");
      break;
    case TemplateKind::J:
      require(k >= 2, "J(i) needs k >= 2");
      require(d.index >= 1, "J(i) needs i >= 1");
      require(in_ground(d.center, p), "center must lie in [n]");
      inside(d.core, "kernel E");
      inside(d.pages, "pages J");
      require(d.core.size() == k - 1, "|E| must be k-1");
      require(d.pages.size() == d.index, "|J| must be i");
      require(!d.core.contains(d.center), "center must not lie in E");
      require(d.pages.disjoint(d.core.with(d.center)), "J must avoid E and the center");
      break;
    case TemplateKind::K2:
      require(k >= 2, "K2 needs k >= 2");
      require(in_ground(d.center, p), "center must lie in [n]");
      inside(d.e1, "E1");
      inside(d.e2, "E2");
      require(d.e1.size() == k && d.e2.size() == k, "|E1| and |E2| must be k");
      require((d.e1 & d.e2).size() == k - 2, "|E1 n E2| must be k-2");
      require(!(d.e1 | d.e2).contains(d.center), "center must avoid E1 u E2");
      break;
    case TemplateKind::FP:
      require(k >= 2, "FP needs k >= 2");
      require(in_ground(d.center, p), "center must lie in [n]");
      inside(d.y, "Y");
      inside(d.z, "Z");
      require(d.y.size() == k, "|Y| must be k");
      require(d.z.size() == k - 1, "|Z| must be k-1");
      require(!(d.y | d.z).contains(d.center), "center must avoid Y u Z");
      require(d.y.disjoint(d.z), "Y and Z must be disjoint");
      require(d.y0.size() == 2 && d.y0.subset_of(d.y), "Y0 must be a 2-subset of Y");
      break;
  }
}

/// Membership test for the template's family; assumes `validate` passed
/// and |s| = k.
inline bool template_contains(const TemplateDescriptor& d, Set s) {
  const bool has_x = s.contains(d.center);
  switch (d.kind) {
    case TemplateKind::Star:
      return has_x;
    case TemplateKind::HM:
      return (has_x && s.intersects(d.core)) || s == d.core;
    case TemplateKind::T3:
      return (s & d.core).size() >= 2;
    case TemplateKind::G:
      return d.core.subset_of(s) || (has_x && s.intersects(d.core));
    case TemplateKind::J:
      return (d.core.subset_of(s) && s.intersects(d.pages)) || d.pages.with(d.center).subset_of(s) ||
             (has_x && s.intersects(d.core));
    case TemplateKind::K2:
      return (has_x && s.intersects(d.e1) && s.intersects(d.e2)) || s == d.e1 || s == d.e2;
    case TemplateKind::FP: {
      const int y1 = d.y0.min();
      const int y2 = d.y0.max();
      return (has_x && s.intersects(d.y) && s.intersects(d.z)) || d.y.subset_of(s) ||
             d.z.with(y1).subset_of(s) || d.z.with(y2).subset_of(s) ||
             Set{d.center, y1, y2}.subset_of(s);
    }
  }
  return false;
}

inline Family build(const TemplateDescriptor& d, Params p) {
  validate(d, p);
  std::vector<Set> members;
  for (Set s : k_subsets(p.n, p.k)) {
    if (template_contains(d, s)) members.push_back(s);
  }
  return Family(p, std::move(members));
}

inline Family build(TemplateKind kind, Params p, int i = 0) {
  return build(TemplateDescriptor::canonical(kind, p, i), p);
}

enum class Bound { EKR_max, HM_bound, HK_bound, Main_i_bound, Main_ii_bound, Eq1_K2, Eq2_J3, Gi_size, Ji_size };

inline const char* bound_name(Bound b) {
  switch (b) {
    case Bound::EKR_max: return "EKR_max";
    case Bound::HM_bound: return "HM_bound";
    case Bound::HK_bound: return "HK_bound";
    case Bound::Main_i_bound: return "Main_i_bound";
    case Bound::Main_ii_bound: return "Main_ii_bound";
    case Bound::Eq1_K2: return "Eq1_K2";
    case Bound::Eq2_J3: return "Eq2_J3";
    case Bound::Gi_size: return "Gi_size";
    case Bound::Ji_size: return "Ji_size";
  }
  return "?";
}

/// Exact value of one closed form. `i` is the intersection parameter for
/// Eq1_K2 (|E1 n E2| = k-i, default 2) and the template index for Gi_size
/// and Ji_size.
inline std::int64_t formula_value(Bound tag, Params p, std::optional<int> i = std::nullopt) {
  p.validate();
  const std::int64_t n = p.n;
  const std::int64_t k = p.k;
  auto C = [](std::int64_t a, std::int64_t b) { return binom(a, b); };
  auto sum = [](std::initializer_list<std::int64_t> terms) {
    std::int64_t s = 0;
    for (auto t : terms) s = checked_add(s, t);
    return s;
  };
  switch (tag) {
    case Bound::Gi_size: {
      const std::int64_t g = i.value_or(-1);
      detail::require(g >= 2 && g <= k, "Gi_size needs 2 <= i <= k");
      detail::require(n >= k + 1, "Gi_size needs n >= k+1");
      return sum({C(n - g, k - g), C(n - 1, k - 1), -C(n - 1 - g, k - 1), -C(n - g - 1, k - g - 1)});
    }
    case Bound::Ji_size: {
      const std::int64_t j = i.value_or(-1);
      detail::require(j >= 1, "Ji_size needs i >= 1");
      detail::require(n - k - j >= 0, "Ji_size needs n >= k+i (pages must fit)");
      return sum({C(n - 1, k - 1), -C(n - k, k - 1), C(n - k - j, k - 1 - j), j});
    }
    default:
      break;
  }
  p.require_theorem_range();
  switch (tag) {
    case Bound::EKR_max:
      return C(n - 1, k - 1);
    case Bound::HM_bound:
      return sum({C(n - 1, k - 1), -C(n - k - 1, k - 1), 1});
    case Bound::HK_bound:
      return sum({C(n - 1, k - 1), -C(n - k - 1, k - 1), -C(n - k - 2, k - 2), 2});
    case Bound::Main_i_bound:
      return sum({C(n - 1, k - 1), -checked_mul(2, C(n - k - 1, k - 1)), C(n - k - 3, k - 1), 2});
    case Bound::Eq1_K2: {
      const std::int64_t j = i.value_or(2);
      detail::require(j >= 2 && j <= k, "Eq1_K2 needs 2 <= i <= k");
      return sum({C(n - 1, k - 1), -checked_mul(2, C(n - k - 1, k - 1)), C(n - k - j - 1, k - 1), 2});
    }
    case Bound::Main_ii_bound:
    case Bound::Eq2_J3:
      return sum({C(n - 1, k - 1), -C(n - k - 1, k - 1), -C(n - k - 2, k - 2), -C(n - k - 3, k - 3), 3});
    default:
      break;
  }
  throw std::logic_error("unhandled bound");
}

enum class Ordering { Less, Equal, Greater };

inline const char* ordering_name(Ordering o) {
  switch (o) {
    case Ordering::Less: return "less";
    case Ordering::Equal: return "equal";
    case Ordering::Greater: return "greater";
  }
  return "?";
}

struct CrossoverRow {
  int n = 0;
  std::int64_t k2 = 0;
  std::int64_t j3 = 0;
  Ordering ordering = Ordering::Equal;
  /// Whether the row follows the expected pattern: |K2| >= |J3| on
  /// [2k+1, 3k-3] with equality only when k = 4, and |K2| < |J3| from 3k-2 on.
  bool matches_pattern = false;
};

inline std::vector<CrossoverRow> crossover_table(int k, int n_min, int n_max) {
  detail::require(k >= 4, "crossover table needs k >= 4");
  detail::require(n_min >= 2 * k + 1, "crossover table needs n >= 2k+1");
  std::vector<CrossoverRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    const Params p{n, k};
    CrossoverRow r;
    r.n = n;
    r.k2 = formula_value(Bound::Eq1_K2, p, 2);
    r.j3 = formula_value(Bound::Eq2_J3, p);
    r.ordering = r.k2 < r.j3 ? Ordering::Less : (r.k2 == r.j3 ? Ordering::Equal : Ordering::Greater);
    if (n <= 3 * k - 3) {
      r.matches_pattern = (k == 4) ? r.ordering == Ordering::Equal : r.ordering == Ordering::Greater;
    } else {
      r.matches_pattern = r.ordering == Ordering::Less;
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace ekr
