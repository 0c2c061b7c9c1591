#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ekr/classification.hpp"
#include "ekr/core.hpp"

namespace ekr {

inline void require_shift_pair(const Family& f, int x, int y) {
  if (x >= y) throw std::invalid_argument("shift needs x < y, got x=" + std::to_string(x) + " y=" + std::to_string(y));
  if (x < 1 || y > f.n()) throw std::out_of_range("shift pair outside [n]");
}

/// Image of one member under S_xy, ignoring the collision rule.
inline Set shift_image(Set s, int x, int y) {
  if (s.contains(y) && !s.contains(x)) return s.without(y).with(x);
  return s;
}

/// Number of members S_xy would move.
inline int shift_changes(const Family& f, int x, int y) {
  int c = 0;
  for (Set s : f) {
    if (s.contains(y) && !s.contains(x) && !f.contains(s.without(y).with(x))) ++c;
  }
  return c;
}

inline Family shift(const Family& f, int x, int y) {
  require_shift_pair(f, x, y);
  std::vector<Set> out;
  out.reserve(f.size());
  for (Set s : f) {
    const Set img = shift_image(s, x, y);
    out.push_back(img != s && !f.contains(img) ? img : s);
  }
  return Family(f.params(), std::move(out));
}

struct ShiftStep {
  int x = 0;
  int y = 0;
  int changed = 0;
};

struct CaseEvent {
  int x = 0;
  int y = 0;
  int case_id = 0;
  Set frozen;
  /// Sub-case letter used to choose the frozen set, 0 if none applies.
  char sub = 0;
  /// Mid-procedure revisions of the frozen set charged to this event.
  int revisions = 0;
};

struct ShiftLog {
  std::vector<ShiftStep> steps;
  std::vector<CaseEvent> case_events;
  int sweeps = 0;

  std::string str() const {
    std::string out;
    // Steps and events are interleaved in the order they happened.
    for (const auto& line : lines_) out += line + "\n";
    return out;
  }

  void add_step(ShiftStep s) {
    steps.push_back(s);
    lines_.push_back("SHIFT " + std::to_string(s.x) + " " + std::to_string(s.y) + " changed=" + std::to_string(s.changed));
  }
  void add_event(const CaseEvent& e) {
    case_events.push_back(e);
    lines_.push_back("CASE " + std::to_string(e.case_id) + " " + std::to_string(e.x) + " " + std::to_string(e.y) +
                     " X=" + e.frozen.str());
  }

 private:
  std::vector<std::string> lines_;
};

struct FrozenSet {
  Set elements;
  int origin_case = 0;
};

/// Reapplies the logged steps to `initial`.
inline Family replay(const Family& initial, const ShiftLog& log) {
  Family f = initial;
  for (const auto& s : log.steps) f = shift(f, s.x, s.y);
  return f;
}

struct StabilizeResult {
  Family family;
  ShiftLog log;
};

/// Lexicographic sweeps over unfrozen pairs, restarting after every
/// effective shift, until nothing moves.
inline StabilizeResult stabilize(const Family& f, const FrozenSet& frozen = {}) {
  StabilizeResult r{f, {}};
  const int n = f.n();
  bool moved = true;
  while (moved) {
    moved = false;
    ++r.log.sweeps;
    for (int x = 1; x <= n && !moved; ++x) {
      if (frozen.elements.contains(x)) continue;
      for (int y = x + 1; y <= n && !moved; ++y) {
        if (frozen.elements.contains(y)) continue;
        const int c = shift_changes(r.family, x, y);
        if (c == 0) continue;
        r.family = shift(r.family, x, y);
        r.log.add_step({x, y, c});
        moved = true;
      }
    }
  }
  return r;
}

inline bool is_stable(const Family& f, Set frozen = {}) {
  for (int x = 1; x <= f.n(); ++x) {
    if (frozen.contains(x)) continue;
    for (int y = x + 1; y <= f.n(); ++y) {
      if (!frozen.contains(y) && shift_changes(f, x, y) != 0) return false;
    }
  }
  return true;
}

/// What the shifted family turned out to be, with the witness that
/// localizes it at x where one exists.
struct CaseDetection {
  int case_id = 0;
  Family shifted;
  std::optional<HmWitness> hm;
  std::optional<J2Witness> j2;
  std::optional<G2Witness> g2;
  std::optional<G3Witness> g3;
  /// False when the family is in the case but no witness puts x where the
  /// localization facts say it must be.
  bool localized = true;
};

/// Classifies S_xy(F) against cases 1..5 in that order (4 and 5 for k = 4
/// only).
inline std::optional<CaseDetection> detect_case_detail(const Family& f, int x, int y) {
  require_shift_pair(f, x, y);
  CaseDetection d;
  d.shifted = shift(f, x, y);
  const Family& s = d.shifted;
  if (find_star_center(s)) {
    d.case_id = 1;
    d.localized = std::all_of(s.begin(), s.end(), [&](Set m) { return m.contains(x); });
    return d;
  }
  if (find_hm(s)) {
    d.case_id = 2;
    d.hm = find_hm(s, x);
    d.localized = d.hm.has_value();
    return d;
  }
  if (find_j2(s)) {
    d.case_id = 3;
    d.j2 = find_j2(s, x);
    d.localized = d.j2.has_value();
    return d;
  }
  if (f.k() != 4) return std::nullopt;
  if (find_g2(s)) {
    d.case_id = 4;
    d.g2 = find_g2(s, x);
    d.localized = d.g2.has_value();
    return d;
  }
  auto g3s = all_g3_witnesses(s);
  if (!g3s.empty()) {
    d.case_id = 5;
    for (const auto& w : g3s) {
      if (w.center == x) {
        d.g3 = w;
        break;
      }
    }
    if (!d.g3) {
      for (const auto& w : g3s) {
        if (w.core.contains(x)) {
          d.g3 = w;
          break;
        }
      }
    }
    d.localized = d.g3.has_value();
    return d;
  }
  return std::nullopt;
}

inline std::optional<int> detect_case(const Family& f, int x, int y) {
  auto d = detect_case_detail(f, x, y);
  if (!d) return std::nullopt;
  return d->case_id;
}

struct GuardOptions {
  /// The input lies in the stability theorem's scope: assert
  /// min_missing_degree >= 3 and that every member meets X on the output,
  /// and treat an unlocalized case as a failure. When false, an unlocalized
  /// case only freezes {x, y}.
  bool require_floor = true;
  int max_events = 3;
};

struct GuardedResult {
  Family family;
  FrozenSet frozen;
  ShiftLog log;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

inline Set smallest(Set s, int count) {
  Set out;
  s.for_each([&](int e) {
    if (out.size() < count) out.insert(e);
  });
  return out;
}

/// Hypotheses of the stability theorem, as violated-condition strings.
inline std::vector<std::string> hypothesis_failures(const Family& g, bool require_floor) {
  std::vector<std::string> out;
  if (!is_intersecting(g)) {
    out.push_back("family is not intersecting");
    return out;
  }
  const auto r = classify(g);
  if (r.is_ekr) out.push_back("family is EKR at " + std::to_string(r.ekr_center));
  if (r.hm) out.push_back("family is HM at " + std::to_string(r.hm->center));
  if (r.j2) out.push_back("family is inside J_2 at " + std::to_string(r.j2->center));
  if (g.k() == 4 && r.g2) out.push_back("family is inside G_2 with core " + r.g2->core.str());
  if (g.k() == 4 && r.g3) {
    out.push_back("family is inside G_3 with center " + std::to_string(r.g3->center) + " core " + r.g3->core.str());
  }
  if (require_floor && r.min_missing_degree < 3) {
    out.push_back("min missing degree " + std::to_string(r.min_missing_degree) + " < 3");
  }
  return out;
}

}  // namespace detail

/// Stabilizes while steering clear of the structured cases: before each
/// effective shift the image is classified, and on a hit the shift is
/// skipped and a small set X is frozen instead. Guarantees are checked at
/// the fixpoint and reported in `violations` rather than thrown.
inline GuardedResult guarded_stabilize(const Family& input, const GuardOptions& opts = {}) {
  GuardedResult r{input, {}, {}, {}};
  const int n = input.n();
  const int k = input.k();
  Family& h = r.family;
  Set& frozen = r.frozen.elements;

  // Case 1 at k = 4 starts with X = {x, y} and may be widened once a later
  // case 4 or 5 shows up; these track that.
  bool case1_open = false;
  bool case1_widened = false;
  int c1x = 0;
  int c1y = 0;
  int c1_revisions = 0;
  // Guarantee bookkeeping for the last freezing event.
  int guard_case = 0;
  char guard_sub = 0;
  Set guard_set;  // member required in the output (case 1 widened, case 4)
  Set guard_core;  // case 2: three elements of the exceptional set

  auto fail = [&](const std::string& what) { r.violations.push_back(what); };

  auto freeze_for = [&](const CaseDetection& d, int x, int y, CaseEvent& ev) -> std::optional<Set> {
    if (!d.localized && !opts.require_floor) {
      // Outside the floor hypothesis localization is not promised; block
      // just this shift.
      ev.sub = 'u';
      return Set{x, y};
    }
    if (!d.localized) {
      fail("case " + std::to_string(d.case_id) + " at (" + std::to_string(x) + "," + std::to_string(y) +
           ") is not localized at x");
      return std::nullopt;
    }
    const Set xy{x, y};
    switch (d.case_id) {
      case 1:
        return xy;
      case 2: {
        const Set g0 = d.hm->exceptional;
        if (k >= 5) return xy.with((g0.without(y)).min());
        guard_core = detail::smallest(g0.without(y), 3);
        return xy | guard_core;
      }
      case 3: {
        const Set e = d.j2->kernel;
        if (k >= 5) return xy.with(e.without(y).min());
        if (e.contains(y)) {
          ev.sub = 'a';
          return xy | e | Set{d.j2->pages.min()};
        }
        ev.sub = d.j2->pages.contains(y) ? 'b' : 'c';
        return xy | e;
      }
      case 4: {
        const Set pair = d.g2->core.without(x);
        std::optional<Set> g;
        for (Set m : h) {
          if (xy.subset_of(m) && (m & pair).size() == 1) {
            g = m;
            break;
          }
        }
        if (!g) {
          fail("case 4: no member contains {x,y} and exactly one of " + pair.str());
          return xy | pair;
        }
        guard_set = *g;
        return xy | pair | *g;
      }
      case 5: {
        const auto& w = *d.g3;
        const Set b = w.core.with(w.center);
        if (w.center == x && w.core.contains(y)) {
          ev.sub = 'a';
          const Set rest = w.core.without(y);
          for (Set m : d.shifted) {
            if (w.core.subset_of(m) && !m.contains(x)) return xy | rest | (m - w.core);
          }
          fail("case 5(a): no shifted member contains the core and avoids x");
          return xy | rest;
        }
        if (w.center == x) {
          ev.sub = 'b';
          return xy | w.core;
        }
        ev.sub = 'c';
        return b.with(y);
      }
      default:
        return std::nullopt;
    }
  };

  // Widening of a k = 4 case-1 freeze on a later case 4/5 at (x', y').
  auto widen_case1 = [&](const CaseDetection& d, int xp, int yp, CaseEvent& ev) -> std::optional<Set> {
    const Set xy{c1x, c1y};
    std::optional<Set> with_y;
    std::optional<Set> with_x;
    for (Set m : h) {
      if (!m.contains(yp) || m.contains(xp) || (m & xy).size() != 1) continue;
      if (h.contains(m.without(yp).with(xp))) continue;
      if (m.contains(c1y) && !with_y) with_y = m;
      if (m.contains(c1x) && !with_x) with_x = m;
    }
    if (!case1_widened) {
      const auto pick = with_y ? with_y : with_x;
      if (!pick) {
        fail("case 1: no moved member with y' meets {x,y} once");
        return std::nullopt;
      }
      case1_widened = true;
      guard_set = *pick;
      ev.sub = with_y ? 'a' : 'b';
      return xy | *pick;
    }
    if (d.case_id == 5 && c1_revisions == 0) {
      // Switch to the member through x (and y') that avoids y.
      std::optional<Set> alt;
      const int yprime = (guard_set - xy).min();
      for (Set m : h) {
        if (m.contains(c1x) && m.contains(yprime) && !m.contains(c1y)) {
          alt = m;
          break;
        }
      }
      if (!alt) {
        fail("case 1(c): no member through x and y' avoiding y");
        return std::nullopt;
      }
      ++c1_revisions;
      ev.sub = 'c';
      ev.revisions = c1_revisions;
      guard_set = *alt;
      return xy | *alt;
    }
    return std::nullopt;
  };

  bool progress = true;
  while (progress && r.ok()) {
    progress = false;
    ++r.log.sweeps;
    for (int x = 1; x <= n && !progress; ++x) {
      if (frozen.contains(x)) continue;
      for (int y = x + 1; y <= n && !progress; ++y) {
        if (frozen.contains(y)) continue;
        const int c = shift_changes(h, x, y);
        if (c == 0) continue;
        auto d = detect_case_detail(h, x, y);
        progress = true;
        if (!d) {
          h = shift(h, x, y);
          r.log.add_step({x, y, c});
          continue;
        }
        CaseEvent ev{x, y, d->case_id, {}, 0, 0};
        if (static_cast<int>(r.log.case_events.size()) >= opts.max_events) {
          fail("more than " + std::to_string(opts.max_events) + " case events");
          break;
        }
        std::optional<Set> next;
        if (k == 4 && case1_open && (d->case_id == 4 || d->case_id == 5)) {
          next = widen_case1(*d, x, y, ev);
          if (next) {
            frozen = *next;
            guard_case = 1;
            guard_sub = ev.sub;
          }
        } else {
          next = freeze_for(*d, x, y, ev);
          if (next) {
            if (!frozen.empty()) case1_open = false;
            frozen = frozen | *next;
            guard_case = ev.sub == 'u' ? 0 : d->case_id;
            guard_sub = ev.sub;
            if (k == 4 && d->case_id == 1 && r.log.case_events.empty()) {
              case1_open = true;
              c1x = x;
              c1y = y;
            }
          }
        }
        if (!next) {
          if (r.ok()) fail("case " + std::to_string(d->case_id) + " at (" + std::to_string(x) + "," +
                           std::to_string(y) + ") could not be frozen");
          ev.frozen = frozen;
          r.log.add_event(ev);
          break;
        }
        r.frozen.origin_case = guard_case;
        ev.frozen = frozen;
        r.log.add_event(ev);
        if (frozen.size() > 5) fail("frozen set " + frozen.str() + " has more than 5 elements");
        if (k >= 5 && d->case_id <= 3 && r.log.case_events.size() == 1 && frozen.size() > 3) {
          fail("frozen set " + frozen.str() + " exceeds 3 elements for k >= 5");
        }
      }
    }
  }
  if (!r.ok()) return r;

  if (!is_stable(h, frozen)) fail("result is not stable outside X");
  for (const auto& s : detail::hypothesis_failures(h, opts.require_floor)) fail(s);
  if (opts.require_floor && !frozen.empty()) {
    for (Set m : h) {
      if (!m.intersects(frozen)) fail("member " + m.str() + " misses X=" + frozen.str());
    }
  }
  if (k == 4 && guard_case != 0) {
    const auto& ev = r.log.case_events.back();
    switch (guard_case) {
      case 1: {
        const Set cxy{c1x, c1y};
        for (Set m : h) {
          if (!m.intersects(cxy)) fail("case 1: member " + m.str() + " misses {x,y}");
        }
        if (case1_widened && !(h.contains(frozen.without(c1x)) || h.contains(frozen.without(c1y)))) {
          fail("case 1: neither X\\{x} nor X\\{y} is a member");
        }
        break;
      }
      case 2: {
        bool found = false;
        for (Set m : h) found = found || (guard_core.subset_of(m) && !m.contains(ev.x));
        if (!found) fail("case 2: no member contains " + guard_core.str() + " and avoids x");
        break;
      }
      case 3: {
        bool all_two = true;
        for (Set m : h) all_two = all_two && (m & frozen).size() >= 2;
        if (!all_two) {
          for (Set a : h) {
            if ((a & frozen) != Set{ev.x}) continue;
            for (Set b : h) {
              if ((b & frozen) == Set{ev.y} && (a & b).size() < 2) {
                fail("case 3: " + a.str() + " and " + b.str() + " share fewer than 2 elements");
              }
            }
          }
        }
        break;
      }
      case 4:
        if (!h.contains(guard_set)) fail("case 4: member " + guard_set.str() + " was lost");
        break;
      case 5:
        for (Set m : h) {
          if ((m & frozen).size() < 2) fail("case 5: member " + m.str() + " meets X in fewer than 2 elements");
        }
        break;
      default:
        break;
    }
    (void)guard_sub;
  }
  return r;
}

}  // namespace ekr
