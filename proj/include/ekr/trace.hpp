#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ekr/binomial.hpp"
#include "ekr/classification.hpp"
#include "ekr/constructions.hpp"
#include "ekr/core.hpp"

namespace ekr {

/// Window size: 9 for k = 4, 2k otherwise.
inline int window_size(int k) { return k == 4 ? 9 : 2 * k; }

/// X together with the first |Y|-|X| elements of [n] outside X.
inline Set build_window(Params p, Set frozen) {
  p.require_theorem_range();
  if (frozen.size() > 5) throw std::invalid_argument("frozen set has more than 5 elements");
  if (!frozen.subset_of(ground_set(p.n))) throw std::invalid_argument("frozen set is not inside [n]");
  const int target = window_size(p.k);
  if (target > p.n) throw std::invalid_argument("window does not fit in [n]");
  Set y = frozen;
  for (int e = 1; e <= p.n && y.size() < target; ++e) y.insert(e);
  return y;
}

struct TraceProfile {
  Set window;
  Set frozen;
  /// traces[i]: the distinct sets G & Y with |G & Y| = i, sorted.
  std::vector<std::vector<Set>> traces;
  /// lifted[i]: the members G with |G & Y| = i.
  std::vector<std::vector<Set>> lifted;

  std::int64_t count(int i) const { return static_cast<std::int64_t>(traces.at(static_cast<std::size_t>(i)).size()); }
};

inline TraceProfile trace(const Family& g, Set window, Set frozen = {}) {
  TraceProfile t;
  t.window = window;
  t.frozen = frozen;
  const auto levels = static_cast<std::size_t>(g.k()) + 1;
  t.traces.assign(levels, {});
  t.lifted.assign(levels, {});
  for (Set m : g) {
    const Set a = m & window;
    const auto i = static_cast<std::size_t>(a.size());
    t.lifted[i].push_back(m);
    t.traces[i].push_back(a);
  }
  for (auto& level : t.traces) {
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
  }
  return t;
}

struct TraceVerdict {
  bool ok = true;
  std::string detail;
  /// Pair check: two members meeting only outside the window.
  std::optional<std::pair<Set, Set>> pair;
  /// Cap check: the trace level over its cap.
  int level = -1;
  std::int64_t observed = 0;
  std::int64_t cap = 0;
};

/// No member meets the window in fewer than two elements, and every two
/// members meet inside the window.
inline TraceVerdict check_trace_pairs(const TraceProfile& t, const Family& g) {
  TraceVerdict v;
  for (int i = 0; i <= 1 && i < static_cast<int>(t.lifted.size()); ++i) {
    if (!t.lifted[static_cast<std::size_t>(i)].empty()) {
      v.ok = false;
      v.level = i;
      v.observed = static_cast<std::int64_t>(t.lifted[static_cast<std::size_t>(i)].size());
      v.detail = "A_" + std::to_string(i) + " is not empty: " + t.lifted[static_cast<std::size_t>(i)].front().str();
      return v;
    }
  }
  const auto members = g.members();
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if ((members[a] & members[b] & t.window).empty()) {
        v.ok = false;
        v.pair = {members[a], members[b]};
        v.detail = members[a].str() + " and " + members[b].str() + " meet only outside Y";
        return v;
      }
    }
  }
  return v;
}

/// Cap on |A_i|: the constants 0/0/3/18/50 at k = 4; for k >= 5 the binomial
/// expression, with 3 added at i = k.
inline std::int64_t trace_cap(int k, int i) {
  if (k < 4) throw std::invalid_argument("trace caps need k >= 4");
  if (i < 0 || i > k) throw std::invalid_argument("trace level outside [0,k]");
  if (k == 4) {
    static constexpr std::int64_t caps[] = {0, 0, 3, 18, 50};
    return caps[i];
  }
  if (i == 0) return 0;
  std::int64_t c = binom(2 * k - 1, i - 1) - binom(k - 1, i - 1);
  if (i >= 2) c -= binom(k - 2, i - 2);
  if (i >= 3) c -= binom(k - 3, i - 3);
  return i == k ? c + 3 : c;
}

inline TraceVerdict check_trace_caps(const TraceProfile& t, Params p) {
  TraceVerdict v;
  for (int i = 0; i <= p.k; ++i) {
    const auto cap = trace_cap(p.k, i);
    const auto observed = t.count(i);
    if (observed > cap) {
      v.ok = false;
      v.level = i;
      v.observed = observed;
      v.cap = cap;
      v.detail = "|A_" + std::to_string(i) + "| = " + std::to_string(observed) + " exceeds cap " + std::to_string(cap);
      return v;
    }
  }
  return v;
}

/// Sum over levels of cap_i * C(n - |Y|, k - i).
inline std::int64_t bound_from_traces(Params p) {
  p.require_theorem_range();
  if (p.k < 4) throw std::invalid_argument("trace bound needs k >= 4");
  const int outside = p.n - window_size(p.k);
  std::int64_t s = 0;
  for (int i = 1; i <= p.k; ++i) s = checked_add(s, checked_mul(trace_cap(p.k, i), binom(outside, p.k - i)));
  return s;
}

inline std::int64_t bound_from_traces(const TraceProfile&, Params p) { return bound_from_traces(p); }

/// The same sum with the observed |A_i| in place of the caps; bounds |G|.
inline std::int64_t observed_trace_bound(const TraceProfile& t, Params p) {
  const int outside = p.n - t.window.size();
  std::int64_t s = 0;
  for (int i = 0; i <= p.k; ++i) s = checked_add(s, checked_mul(t.count(i), binom(outside, p.k - i)));
  return s;
}

struct EqualityVerdict {
  bool applies = false;
  bool ok = true;
  std::string detail;
};

/// When |G| reaches the bound: A_2 is a star (k >= 5), and G is J_3, or G_4
/// when k = 5.
inline EqualityVerdict check_equality_structure(const TraceProfile& t, const Family& g) {
  EqualityVerdict v;
  const Params p = g.params();
  if (static_cast<std::int64_t>(g.size()) != formula_value(Bound::Main_ii_bound, p)) return v;
  v.applies = true;
  if (p.k >= 5) {
    Set common = ground_set(p.n);
    for (Set a : t.traces[2]) common = common & a;
    if (common.empty()) {
      v.ok = false;
      v.detail = "A_2 is not a star";
      return v;
    }
  }
  const bool j3 = isomorphic_to(g, TemplateKind::J, 3).has_value();
  const bool g4 = p.k == 5 && isomorphic_to(g, TemplateKind::G, 4).has_value();
  if (!j3 && !g4) {
    v.ok = false;
    v.detail = p.k == 5 ? "extremal family is neither J_3 nor G_4" : "extremal family is not J_3";
  }
  return v;
}

}  // namespace ekr
