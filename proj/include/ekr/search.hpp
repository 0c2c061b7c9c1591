#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <initializer_list>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ekr/binomial.hpp"
#include "ekr/classification.hpp"
#include "ekr/constructions.hpp"
#include "ekr/core.hpp"

namespace ekr {

enum class Exclusion : unsigned { EKR = 1, HM = 2, J2 = 4, G2 = 8, G3 = 16 };

inline constexpr std::array<Exclusion, 5> kAllExclusions = {Exclusion::EKR, Exclusion::HM, Exclusion::J2,
                                                            Exclusion::G2, Exclusion::G3};

inline const char* exclusion_name(Exclusion e) {
  switch (e) {
    case Exclusion::EKR: return "EKR";
    case Exclusion::HM: return "HM";
    case Exclusion::J2: return "J2";
    case Exclusion::G2: return "G2";
    case Exclusion::G3: return "G3";
  }
  return "?";
}

inline Exclusion parse_exclusion(const std::string& s) {
  for (Exclusion e : kAllExclusions) {
    if (s == exclusion_name(e)) return e;
  }
  throw std::invalid_argument("unknown exclusion '" + s + "'");
}

class ExclusionSet {
 public:
  constexpr ExclusionSet() = default;
  ExclusionSet(std::initializer_list<Exclusion> xs) {
    for (Exclusion e : xs) add(e);
  }

  bool has(Exclusion e) const { return (mask_ & static_cast<unsigned>(e)) != 0; }
  void add(Exclusion e) { mask_ |= static_cast<unsigned>(e); }
  bool subset_of(ExclusionSet o) const { return (mask_ & ~o.mask_) == 0; }
  bool empty() const { return mask_ == 0; }
  unsigned mask() const { return mask_; }

  /// Comma-separated names, "-" when empty.
  std::string str() const {
    std::string out;
    for (Exclusion e : kAllExclusions) {
      if (!has(e)) continue;
      if (!out.empty()) out += ',';
      out += exclusion_name(e);
    }
    return out.empty() ? "-" : out;
  }

  friend bool operator==(ExclusionSet, ExclusionSet) = default;

 private:
  unsigned mask_ = 0;
};

enum class OptimumMode { SizeOnly, AllWitnesses };
enum class SearchStatus { ProvedOptimal, BudgetExhausted };

inline const char* status_name(SearchStatus s) {
  return s == SearchStatus::ProvedOptimal ? "proved_optimal" : "budget_exhausted";
}

struct SearchProblem {
  Params params;
  /// Every element must be missed by at least this many members.
  int missing_degree_floor = 0;
  ExclusionSet exclusions;
  OptimumMode mode = OptimumMode::AllWitnesses;
  /// Wall-clock limit in seconds; 0 means none.
  double budget_seconds = 0.0;
  int workers = 1;
  std::size_t max_witnesses = 10;
};

struct SearchResult {
  /// -1 when no family satisfies the constraints.
  std::int64_t optimum = -1;
  /// Pairwise non-isomorphic, lexicographically least representative first.
  std::vector<Family> witnesses;
  std::uint64_t nodes = 0;
  std::uint64_t cuts = 0;
  double seconds = 0.0;
  SearchStatus status = SearchStatus::ProvedOptimal;
};

struct Violation {
  std::string what;
  /// The template containing the family, for structural exclusions.
  std::optional<TemplateDescriptor> cover;
};

/// First violated constraint, checked in the order intersecting, floor, EKR,
/// HM, J2, G2, G3.
inline std::optional<Violation> find_violation(const Family& f, const SearchProblem& p) {
  if (!is_intersecting(f)) return Violation{"not intersecting", std::nullopt};
  const int m = p.missing_degree_floor;
  if (m > 0) {
    for (int v = 1; v <= f.n(); ++v) {
      if (missing_degree(f, v) < m) {
        return Violation{"element " + std::to_string(v) + " is missed by fewer than " + std::to_string(m) +
                             " members",
                         std::nullopt};
      }
    }
  }
  const auto& ex = p.exclusions;
  if (ex.has(Exclusion::EKR)) {
    if (auto c = find_star_center(f)) return Violation{"EKR", TemplateDescriptor::star(*c)};
  }
  if (ex.has(Exclusion::HM)) {
    if (auto w = find_hm(f)) return Violation{"HM", descriptor(*w)};
  }
  if (ex.has(Exclusion::J2)) {
    if (auto w = find_j2(f)) return Violation{"J2", descriptor(*w)};
  }
  if (ex.has(Exclusion::G2)) {
    if (auto w = find_g2(f)) return Violation{"G2", descriptor(*w)};
  }
  if (ex.has(Exclusion::G3)) {
    if (auto w = find_g3(f)) return Violation{"G3", descriptor(*w)};
  }
  return std::nullopt;
}

inline bool satisfies(const Family& f, const SearchProblem& p) { return !find_violation(f, p).has_value(); }

namespace detail {

inline void check_search_guard(const SearchProblem& p, std::int64_t limit, const char* who) {
  p.params.validate();
  if (p.missing_degree_floor < 0) throw std::invalid_argument("missing-degree floor must be >= 0");
  if (binom(p.params.n, p.params.k) > limit) {
    throw std::invalid_argument(std::string(who) + " needs C(n,k) <= " + std::to_string(limit));
  }
}

/// Fixed-width bitset over at most 64 * W candidates.
template <int W>
struct BitsW {
  static constexpr int kWords = W;
  std::array<std::uint64_t, kWords> w{};

  void set(int i) { w[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w[static_cast<std::size_t>(i >> 6)] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return ((w[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1U) != 0; }
  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  bool any() const {
    for (auto x : w) {
      if (x != 0) return true;
    }
    return false;
  }
  int count_and(const BitsW& o) const {
    int c = 0;
    for (int i = 0; i < kWords; ++i) c += std::popcount(w[static_cast<std::size_t>(i)] & o.w[static_cast<std::size_t>(i)]);
    return c;
  }
  bool subset_of(const BitsW& o) const {
    for (int i = 0; i < kWords; ++i) {
      if ((w[static_cast<std::size_t>(i)] & ~o.w[static_cast<std::size_t>(i)]) != 0) return false;
    }
    return true;
  }
  BitsW operator&(const BitsW& o) const {
    BitsW r;
    for (int i = 0; i < kWords; ++i) r.w[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] & o.w[static_cast<std::size_t>(i)];
    return r;
  }
  BitsW operator|(const BitsW& o) const {
    BitsW r;
    for (int i = 0; i < kWords; ++i) r.w[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] | o.w[static_cast<std::size_t>(i)];
    return r;
  }
  BitsW minus(const BitsW& o) const {
    BitsW r;
    for (int i = 0; i < kWords; ++i) r.w[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] & ~o.w[static_cast<std::size_t>(i)];
    return r;
  }
  template <typename F>
  void for_each(F&& f) const {
    for (int i = 0; i < kWords; ++i) {
      std::uint64_t x = w[static_cast<std::size_t>(i)];
      while (x != 0) {
        f(i * 64 + std::countr_zero(x));
        x &= x - 1;
      }
    }
  }
  friend bool operator==(const BitsW&, const BitsW&) = default;
};

inline bool members_less(const Family& a, const Family& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Branch and bound over families split at a pivot of maximum degree.
///
/// Relabel so that element 1 has maximum degree. Then F = B + {1 + S}, where
/// B collects the members avoiding 1 and the rest are the sets through 1
/// meeting every member of B; taking all of them is optimal because every
/// constraint survives adding sets. The search branches on B only, and if B
/// is nonempty one of its members may be relabelled to {2..k+1}.
template <int W>
class PivotSolver {
 public:
  using Bits = BitsW<W>;

  explicit PivotSolver(const SearchProblem& p) : prob_(p), params_(p.params) {
    for (Set s : k_subsets(params_.n, params_.k)) (s.contains(1) ? through_ : avoid_).push_back(s);
    const auto na = through_.size();
    const auto nb = avoid_.size();
    kill_.assign(nb, {});
    compat_.assign(nb, {});
    disjoint_.assign(nb, {});
    for (std::size_t q = 0; q < nb; ++q) {
      for (std::size_t a = 0; a < na; ++a) {
        if (avoid_[q].disjoint(through_[a])) kill_[q].set(static_cast<int>(a));
      }
      for (std::size_t r = 0; r < nb; ++r) {
        if (r == q) continue;
        (avoid_[q].intersects(avoid_[r]) ? compat_[q] : disjoint_[q]).set(static_cast<int>(r));
      }
    }
    miss_a_.assign(static_cast<std::size_t>(params_.n) + 1, {});
    miss_b_.assign(static_cast<std::size_t>(params_.n) + 1, {});
    for (int v = 2; v <= params_.n; ++v) {
      for (std::size_t a = 0; a < na; ++a) {
        if (!through_[a].contains(v)) miss_a_[static_cast<std::size_t>(v)].set(static_cast<int>(a));
      }
      for (std::size_t b = 0; b < nb; ++b) {
        if (!avoid_[b].contains(v)) miss_b_[static_cast<std::size_t>(v)].set(static_cast<int>(b));
      }
    }
  }

  SearchResult run() {
    start_ = std::chrono::steady_clock::now();
    const int m = prob_.missing_degree_floor;
    Bits all_a;
    for (std::size_t a = 0; a < through_.size(); ++a) all_a.set(static_cast<int>(a));

    Node star;
    star.t = all_a;
    if (m == 0) evaluate(star);

    // avoid_[0] is {2..k+1}.
    Node root;
    root.chosen.set(0);
    root.b = 1;
    root.q = compat_[0];
    root.t = all_a.minus(kill_[0]);

    if (prob_.workers <= 1) {
      Scratch s(through_.size());
      dfs(root, s, nullptr, 0);
    } else {
      std::vector<Node> frontier;
      {
        Scratch s(through_.size());
        dfs(root, s, &frontier, 0);
      }
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (int w = 0; w < prob_.workers; ++w) {
        pool.emplace_back([&] {
          Scratch s(through_.size());
          for (std::size_t i = next++; i < frontier.size(); i = next++) dfs(frontier[i], s, nullptr, 0);
        });
      }
      for (auto& th : pool) th.join();
    }

    SearchResult r;
    r.optimum = incumbent_.load();
    std::sort(classes_.begin(), classes_.end(), members_less);
    if (classes_.size() > prob_.max_witnesses) classes_.resize(prob_.max_witnesses);
    r.witnesses = classes_;
    r.nodes = nodes_.load();
    r.cuts = cut_count_.load();
    r.seconds = elapsed();
    r.status = stop_.load() ? SearchStatus::BudgetExhausted : SearchStatus::ProvedOptimal;
    return r;
  }

 private:
  struct Node {
    Bits chosen;
    int b = 0;
    /// Candidates avoiding 1 that meet every chosen member.
    Bits q;
    /// Sets through 1 meeting every chosen member.
    Bits t;
  };

  struct Scratch {
    explicit Scratch(std::size_t na) : match(na, -1) {}
    std::vector<int> match;
    std::vector<int> touched;
  };

  struct Cut {
    Bits b;
    Bits a;
  };

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  bool beats(std::int64_t bound) const {
    const auto inc = incumbent_.load(std::memory_order_relaxed);
    return prob_.mode == OptimumMode::AllWitnesses ? bound >= inc : bound > inc;
  }

  bool covered_by_cut(const Bits& ub, const Bits& ua) {
    std::lock_guard lock(cut_mutex_);
    for (const auto& c : cuts_) {
      if (ub.subset_of(c.b) && ua.subset_of(c.a)) return true;
    }
    return false;
  }

  void add_cut(const TemplateDescriptor& d) {
    Cut c;
    for (std::size_t i = 0; i < avoid_.size(); ++i) {
      if (template_contains(d, avoid_[i])) c.b.set(static_cast<int>(i));
    }
    for (std::size_t i = 0; i < through_.size(); ++i) {
      if (template_contains(d, through_[i])) c.a.set(static_cast<int>(i));
    }
    std::lock_guard lock(cut_mutex_);
    for (const auto& e : cuts_) {
      if (e.b == c.b && e.a == c.a) return;
    }
    cuts_.push_back(c);
    ++cut_count_;
  }

  bool augment(int qi, const Bits& t, Bits& seen, Scratch& s) const {
    const Bits adj = (kill_[static_cast<std::size_t>(qi)] & t).minus(seen);
    for (int i = 0; i < Bits::kWords; ++i) {
      std::uint64_t x = adj.w[static_cast<std::size_t>(i)];
      for (; x != 0; x &= x - 1) {
        const int a = i * 64 + std::countr_zero(x);
        if (seen.test(a)) continue;
        seen.set(a);
        const auto ai = static_cast<std::size_t>(a);
        const int owner = s.match[ai];
        if (owner < 0 || augment(owner, t, seen, s)) {
          if (owner < 0) s.touched.push_back(a);
          s.match[ai] = qi;
          return true;
        }
      }
    }
    return false;
  }

  /// Size of a maximum matching between q and t, where a candidate may be
  /// matched to a set through 1 that it is disjoint from.
  int matching(const Bits& q, const Bits& t, Scratch& s) const {
    int nu = 0;
    Bits seen;
    q.for_each([&](int qi) {
      seen = Bits{};
      if (augment(qi, t, seen, s)) ++nu;
    });
    for (int a : s.touched) s.match[static_cast<std::size_t>(a)] = -1;
    s.touched.clear();
    return nu;
  }

  void evaluate(const Node& node) {
    const std::int64_t size = node.b + node.t.count();
    if (!beats(size)) return;
    const int m = prob_.missing_degree_floor;
    if (node.b < m) return;
    for (int v = 2; v <= params_.n; ++v) {
      const auto vi = static_cast<std::size_t>(v);
      if (node.chosen.count_and(miss_b_[vi]) + node.t.count_and(miss_a_[vi]) < m) return;
    }
    std::vector<Set> members;
    node.chosen.for_each([&](int i) { members.push_back(avoid_[static_cast<std::size_t>(i)]); });
    node.t.for_each([&](int i) { members.push_back(through_[static_cast<std::size_t>(i)]); });
    Family f(params_, std::move(members));
    if (auto v = find_violation(f, prob_)) {
      if (v->cover) add_cut(*v->cover);
      return;
    }
    record(std::move(f));
  }

  void record(Family f) {
    std::lock_guard lock(witness_mutex_);
    const auto size = static_cast<std::int64_t>(f.size());
    const auto inc = incumbent_.load();
    if (size < inc) return;
    if (size > inc) {
      incumbent_.store(size);
      classes_.clear();
    }
    if (prob_.mode == OptimumMode::SizeOnly && !classes_.empty()) return;
    for (auto& rep : classes_) {
      if (find_isomorphism(f, rep, IsoMode::Equal)) {
        if (members_less(f, rep)) rep = std::move(f);
        return;
      }
    }
    classes_.push_back(std::move(f));
  }

  void dfs(const Node& node, Scratch& s, std::vector<Node>* frontier, int depth) {
    if (stop_.load(std::memory_order_relaxed)) return;
    const auto count = ++nodes_;
    if (prob_.budget_seconds > 0 && (count & 1023U) == 0 && elapsed() > prob_.budget_seconds) {
      stop_.store(true);
      return;
    }
    const int m = prob_.missing_degree_floor;
    const int nq = node.q.count();
    const int nt = node.t.count();
    if (node.b + nq < m) return;

    // Element 1 has maximum degree, so every other element is missed by at
    // least as many members as 1 is.
    int bmax = node.b + nq;
    for (int v = 2; v <= params_.n; ++v) {
      const auto vi = static_cast<std::size_t>(v);
      const int mu = node.chosen.count_and(miss_b_[vi]) + node.q.count_and(miss_b_[vi]) + node.t.count_and(miss_a_[vi]);
      if (mu < m) return;
      bmax = std::min(bmax, mu);
    }
    if (bmax < std::max(node.b, m)) return;
    std::int64_t bound = static_cast<std::int64_t>(bmax) + nt;
    bound = std::min<std::int64_t>(bound, static_cast<std::int64_t>(params_.n) * nt / params_.k);
    if (!beats(bound)) return;
    if (covered_by_cut(node.chosen | node.q, node.t)) return;

    evaluate(node);
    if (nq == 0) return;

    const int deficiency = nq - matching(node.q, node.t, s);
    if (!beats(std::min<std::int64_t>(bound, node.b + nt + deficiency))) return;

    if (frontier != nullptr && depth >= kSplitDepth) {
      frontier->push_back(node);
      return;
    }

    int pick = -1;
    int best = -1;
    node.q.for_each([&](int qi) {
      const int d = disjoint_[static_cast<std::size_t>(qi)].count_and(node.q);
      if (d > best) {
        best = d;
        pick = qi;
      }
    });
    const auto pi = static_cast<std::size_t>(pick);

    Node in = node;
    in.chosen.set(pick);
    ++in.b;
    in.q = node.q & compat_[pi];
    in.t = node.t.minus(kill_[pi]);
    dfs(in, s, frontier, depth + 1);

    Node out = node;
    out.q.reset(pick);
    dfs(out, s, frontier, depth + 1);
  }

  static constexpr int kSplitDepth = 12;

  SearchProblem prob_;
  Params params_;
  std::vector<Set> through_;
  std::vector<Set> avoid_;
  std::vector<Bits> kill_;
  std::vector<Bits> compat_;
  std::vector<Bits> disjoint_;
  std::vector<Bits> miss_a_;
  std::vector<Bits> miss_b_;

  std::chrono::steady_clock::time_point start_;
  std::atomic<std::int64_t> incumbent_{-1};
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<std::uint64_t> cut_count_{0};
  std::atomic<bool> stop_{false};
  std::mutex cut_mutex_;
  std::vector<Cut> cuts_;
  std::mutex witness_mutex_;
  std::vector<Family> classes_;
};

}  // namespace detail

/// Exact maximum of |F| over intersecting k-uniform F on [n] meeting the
/// floor and avoiding every excluded class. C(n,k) <= 1000.
inline SearchResult solve(const SearchProblem& p) {
  detail::check_search_guard(p, 1000, "solve");
  if (p.params.k == p.params.n) {
    // A single set is the only nonempty family.
    SearchResult r;
    Family f(p.params, {ground_set(p.params.n)});
    if (satisfies(f, p)) {
      r.optimum = 1;
      r.witnesses.push_back(f);
    } else if (satisfies(Family(p.params), p)) {
      r.optimum = 0;
      r.witnesses.emplace_back(p.params);
    }
    return r;
  }
  const auto words = (std::max(binom(p.params.n - 1, p.params.k), binom(p.params.n - 1, p.params.k - 1)) + 63) / 64;
  auto r = words <= 1   ? detail::PivotSolver<1>(p).run()
           : words <= 2 ? detail::PivotSolver<2>(p).run()
           : words <= 4 ? detail::PivotSolver<4>(p).run()
           : words <= 8 ? detail::PivotSolver<8>(p).run()
                        : detail::PivotSolver<16>(p).run();
  if (r.optimum == 0 && r.witnesses.empty() && satisfies(Family(p.params), p)) r.witnesses.emplace_back(p.params);
  for (const auto& w : r.witnesses) {
    if (auto v = find_violation(w, p)) throw std::logic_error("solver returned an infeasible witness: " + v->what);
  }
  return r;
}

namespace detail {

/// Masks (over the index of each k-set) of every placement of the excluded
/// templates, enumerated directly rather than via the classifier.
inline std::vector<std::uint64_t> placement_masks(const SearchProblem& p, const std::vector<Set>& universe) {
  const Params pr = p.params;
  std::vector<std::uint64_t> out;
  auto push = [&](const TemplateDescriptor& d) {
    try {
      validate(d, pr);
    } catch (const std::invalid_argument&) {
      return;
    }
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (template_contains(d, universe[i])) mask |= std::uint64_t{1} << i;
    }
    out.push_back(mask);
  };
  const Set ground = ground_set(pr.n);
  const auto& ex = p.exclusions;
  for (int x = 1; x <= pr.n; ++x) {
    const Set rest = ground.without(x);
    if (ex.has(Exclusion::EKR)) push(TemplateDescriptor::star(x));
    if (ex.has(Exclusion::HM)) {
      for (Set e : k_subsets(rest, pr.k)) push(TemplateDescriptor::hm(x, e));
    }
    if (ex.has(Exclusion::J2) && pr.k >= 2) {
      for (Set e : k_subsets(rest, pr.k - 1)) {
        for (Set j : k_subsets(rest - e, 2)) push(TemplateDescriptor::j(2, x, e, j));
      }
    }
    if (ex.has(Exclusion::G3)) {
      for (Set e : k_subsets(rest, 3)) push(TemplateDescriptor::g(3, x, e));
    }
  }
  if (ex.has(Exclusion::G2)) {
    for (Set c : k_subsets(pr.n, 3)) push(TemplateDescriptor::g(2, c.min(), c.without(c.min())));
  }
  return out;
}

}  // namespace detail

/// Exhaustive reference: enumerates every intersecting family, pruning only
/// on pairwise intersection. C(n,k) <= 40. -1 when nothing is feasible.
inline std::int64_t brute_oracle(const SearchProblem& p) {
  detail::check_search_guard(p, 40, "brute_oracle");
  const Params pr = p.params;
  const auto universe = k_subsets(pr.n, pr.k);
  const int size = static_cast<int>(universe.size());
  std::vector<std::uint64_t> compat(universe.size(), 0);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      if (universe[static_cast<std::size_t>(i)].intersects(universe[static_cast<std::size_t>(j)])) {
        compat[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
      }
    }
  }
  std::vector<std::uint64_t> contains(static_cast<std::size_t>(pr.n) + 1, 0);
  for (int i = 0; i < size; ++i) {
    universe[static_cast<std::size_t>(i)].for_each(
        [&](int e) { contains[static_cast<std::size_t>(e)] |= std::uint64_t{1} << i; });
  }
  const auto placements = detail::placement_masks(p, universe);
  const int m = p.missing_degree_floor;

  auto feasible = [&](std::uint64_t fam, int count) {
    for (int v = 1; v <= pr.n; ++v) {
      if (count - std::popcount(fam & contains[static_cast<std::size_t>(v)]) < m) return false;
    }
    for (auto pl : placements) {
      if ((fam & ~pl) == 0) return false;
    }
    return true;
  };

  std::int64_t best = feasible(0, 0) ? 0 : -1;
  auto rec = [&](auto&& self, int from, std::uint64_t fam, std::uint64_t allowed, int count) -> void {
    if (count > best && feasible(fam, count)) best = count;
    for (int i = from; i < size; ++i) {
      if (((allowed >> i) & 1U) == 0) continue;
      self(self, i + 1, fam | (std::uint64_t{1} << i), allowed & compat[static_cast<std::size_t>(i)], count + 1);
    }
  };
  const std::uint64_t everything = size == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1;
  rec(rec, 0, 0, everything, 0);
  return best;
}

enum class Preset { EKR, HM, HK, Main, Stable };

inline constexpr std::array<Preset, 5> kAllPresets = {Preset::EKR, Preset::HM, Preset::HK, Preset::Main, Preset::Stable};

inline const char* preset_name(Preset p) {
  switch (p) {
    case Preset::EKR: return "EKR";
    case Preset::HM: return "HM";
    case Preset::HK: return "HK";
    case Preset::Main: return "Main";
    case Preset::Stable: return "Stable";
  }
  return "?";
}

inline Preset parse_preset(const std::string& s) {
  for (Preset p : kAllPresets) {
    if (s == preset_name(p)) return p;
  }
  throw std::invalid_argument("unknown preset '" + s + "'");
}

/// Smallest k the preset's theorem covers.
inline int preset_min_k(Preset p) {
  switch (p) {
    case Preset::EKR:
    case Preset::HM: return 2;
    case Preset::HK: return 3;
    case Preset::Main:
    case Preset::Stable: return 4;
  }
  return 2;
}

inline bool preset_applies(Preset preset, Params p) {
  return p.k >= preset_min_k(preset) && p.n >= 2 * p.k + 1;
}

inline SearchProblem preset_problem(Preset preset, Params p) {
  p.require_theorem_range();
  if (!preset_applies(preset, p)) {
    throw std::invalid_argument(std::string("preset ") + preset_name(preset) + " needs k >= " +
                                std::to_string(preset_min_k(preset)));
  }
  SearchProblem s;
  s.params = p;
  switch (preset) {
    case Preset::EKR:
      break;
    case Preset::HM:
      s.missing_degree_floor = 1;
      s.exclusions = {Exclusion::EKR};
      break;
    case Preset::HK:
      s.missing_degree_floor = 1;
      s.exclusions = {Exclusion::EKR, Exclusion::HM};
      if (p.k == 3) s.exclusions.add(Exclusion::G2);
      break;
    case Preset::Main:
    case Preset::Stable:
      s.missing_degree_floor = preset == Preset::Stable ? 3 : 1;
      s.exclusions = {Exclusion::EKR, Exclusion::HM, Exclusion::J2};
      if (p.k == 4) {
        s.exclusions.add(Exclusion::G2);
        s.exclusions.add(Exclusion::G3);
      }
      break;
  }
  return s;
}

inline Bound preset_bound(Preset preset, Params p) {
  switch (preset) {
    case Preset::EKR: return Bound::EKR_max;
    case Preset::HM: return Bound::HM_bound;
    case Preset::HK: return Bound::HK_bound;
    case Preset::Main: return p.n <= 3 * p.k - 3 ? Bound::Main_i_bound : Bound::Main_ii_bound;
    case Preset::Stable: return Bound::Main_ii_bound;
  }
  return Bound::EKR_max;
}

/// Templates allowed at equality.
inline std::vector<TemplateDescriptor> extremal_classes(Preset preset, Params p) {
  using K = TemplateKind;
  auto c = [&](K kind, int i = 0) { return TemplateDescriptor::canonical(kind, p, i); };
  switch (preset) {
    case Preset::EKR: return {c(K::Star)};
    case Preset::HM:
      if (p.k == 3) return {c(K::HM), c(K::T3)};
      return {c(K::HM)};
    case Preset::HK:
      if (p.k == 4) return {c(K::J, 2), c(K::G, 2), c(K::G, 3)};
      return {c(K::J, 2)};
    case Preset::Main:
      if (p.n <= 3 * p.k - 3) {
        if (p.k == 4) return {c(K::K2), c(K::J, 3)};
        return {c(K::K2)};
      }
      [[fallthrough]];
    case Preset::Stable:
      if (p.k == 5) return {c(K::J, 3), c(K::G, 4)};
      return {c(K::J, 3)};
  }
  return {};
}

struct WitnessVerdict {
  Family family;
  /// Name of the allowed template it is isomorphic to, or "none".
  std::string matched;
};

struct TheoremReport {
  Preset preset = Preset::EKR;
  Params params;
  Bound bound = Bound::EKR_max;
  std::int64_t expected = 0;
  SearchResult result;
  std::vector<std::string> allowed;
  std::vector<WitnessVerdict> witnesses;
  /// Allowed templates attaining the bound that no witness matched.
  std::vector<std::string> absent;
  bool ok = false;
  std::string message;
};

inline TheoremReport verify_theorem(Preset preset, Params p, double budget_seconds = 0.0, int workers = 1) {
  TheoremReport r;
  r.preset = preset;
  r.params = p;
  r.bound = preset_bound(preset, p);
  r.expected = formula_value(r.bound, p);
  auto prob = preset_problem(preset, p);
  prob.budget_seconds = budget_seconds;
  prob.workers = workers;
  r.result = solve(prob);

  const auto classes = extremal_classes(preset, p);
  std::vector<bool> seen(classes.size(), false);
  for (const auto& d : classes) r.allowed.push_back(d.name());
  bool all_matched = true;
  for (const auto& w : r.result.witnesses) {
    WitnessVerdict v{w, "none"};
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (isomorphic_to(w, classes[i], IsoMode::Equal)) {
        v.matched = classes[i].name();
        seen[i] = true;
        break;
      }
    }
    if (v.matched == "none") all_matched = false;
    r.witnesses.push_back(v);
  }
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (!seen[i] && static_cast<std::int64_t>(build(classes[i], p).size()) == r.expected) r.absent.push_back(r.allowed[i]);
  }

  if (r.result.status != SearchStatus::ProvedOptimal) {
    r.message = "budget exhausted with incumbent " + std::to_string(r.result.optimum);
  } else if (r.result.optimum != r.expected) {
    r.message = "optimum " + std::to_string(r.result.optimum) + " differs from " + bound_name(r.bound) + " = " +
                std::to_string(r.expected);
  } else if (!all_matched) {
    r.message = "a witness matches no allowed extremal family";
  } else if (!r.absent.empty()) {
    r.message = "no witness isomorphic to " + r.absent.front();
  } else {
    r.ok = true;
    r.message = "ok";
  }
  if (!r.ok) {
    for (const auto& w : r.witnesses) r.message += "\n  " + w.matched + " " + w.family.str();
  }
  return r;
}

}  // namespace ekr
