#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ekr {

inline constexpr int kMaxGround = 64;

/// Ground-set size and uniformity of a family on [n].
struct Params {
  int n = 0;
  int k = 0;

  friend bool operator==(const Params&, const Params&) = default;

  void validate() const {
    if (n < 1 || n > kMaxGround) {
      throw std::invalid_argument("n must lie in [1," + std::to_string(kMaxGround) + "], got " +
                                  std::to_string(n));
    }
    if (k < 1 || k > n) {
      throw std::invalid_argument("k must lie in [1,n], got k=" + std::to_string(k) +
                                  " n=" + std::to_string(n));
    }
  }

  /// Theorem-level entry points call this: n >= 2k+1.
  void require_theorem_range() const {
    validate();
    if (n < 2 * k + 1) {
      throw std::invalid_argument("requires n >= 2k+1, got n=" + std::to_string(n) +
                                  " k=" + std::to_string(k));
    }
  }
};

/// A subset of [1..64] stored as a bit mask (element e <-> bit e-1).
///
/// Ordering is lexicographic on the ascending element list, so sorting a
/// vector of Sets gives the same order as sorting their element lists.
class Set {
 public:
  constexpr Set() = default;
  constexpr explicit Set(std::uint64_t mask) : mask_(mask) {}
  Set(std::initializer_list<int> elements) {
    for (int e : elements) insert(e);
  }
  template <typename Range>
  static Set from_elements(const Range& elements) {
    Set s;
    for (int e : elements) s.insert(e);
    return s;
  }
  /// {lo, lo+1, ..., hi}; empty when hi < lo.
  static Set interval(int lo, int hi) {
    Set s;
    for (int e = lo; e <= hi; ++e) s.insert(e);
    return s;
  }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }

  constexpr bool contains(int e) const {
    return e >= 1 && e <= kMaxGround && ((mask_ >> (e - 1)) & 1U) != 0;
  }
  void insert(int e) {
    if (e < 1 || e > kMaxGround) throw std::out_of_range("element out of range: " + std::to_string(e));
    mask_ |= bit(e);
  }
  void erase(int e) {
    if (e >= 1 && e <= kMaxGround) mask_ &= ~bit(e);
  }
  constexpr Set with(int e) const { return Set(mask_ | bit(e)); }
  constexpr Set without(int e) const { return Set(mask_ & ~bit(e)); }

  constexpr bool intersects(Set o) const { return (mask_ & o.mask_) != 0; }
  constexpr bool disjoint(Set o) const { return (mask_ & o.mask_) == 0; }
  constexpr bool subset_of(Set o) const { return (mask_ & ~o.mask_) == 0; }

  constexpr Set operator&(Set o) const { return Set(mask_ & o.mask_); }
  constexpr Set operator|(Set o) const { return Set(mask_ | o.mask_); }
  constexpr Set operator-(Set o) const { return Set(mask_ & ~o.mask_); }

  /// Smallest element, 0 if empty.
  constexpr int min() const { return mask_ == 0 ? 0 : std::countr_zero(mask_) + 1; }
  /// Largest element, 0 if empty.
  constexpr int max() const { return mask_ == 0 ? 0 : 64 - std::countl_zero(mask_); }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
    return out;
  }

  /// Calls f(e) for every element in ascending order.
  template <typename F>
  constexpr void for_each(F&& f) const {
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) f(std::countr_zero(m) + 1);
  }

  /// Sum of the elements; the shifting potential is built from this.
  constexpr std::int64_t element_sum() const {
    std::int64_t s = 0;
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) s += std::countr_zero(m) + 1;
    return s;
  }

  std::string str() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for_each([&](int e) {
      if (!first) os << ',';
      os << e;
      first = false;
    });
    os << '}';
    return os.str();
  }

  friend constexpr bool operator==(Set a, Set b) { return a.mask_ == b.mask_; }

  friend constexpr bool operator<(Set a, Set b) {
    const std::uint64_t d = a.mask_ ^ b.mask_;
    if (d == 0) return false;
    const std::uint64_t low = d & (~d + 1);
    const std::uint64_t above = ~(low | (low - 1));
    // Both agree below `low`; whichever holds `low` is smaller unless the
    // other one has run out of elements (then the other is a prefix).
    if ((a.mask_ & low) != 0) return (b.mask_ & above) != 0;
    return (a.mask_ & above) == 0;
  }
  friend constexpr bool operator>(Set a, Set b) { return b < a; }

 private:
  static constexpr std::uint64_t bit(int e) { return std::uint64_t{1} << (e - 1); }
  std::uint64_t mask_ = 0;
};

/// k-sets are plain Sets whose cardinality the owning
/// Family enforces.
using KSet = Set;

inline Set ground_set(int n) { return Set::interval(1, n); }

/// All k-subsets of `from`, in lexicographic order.
inline std::vector<Set> k_subsets(Set from, int k) {
  std::vector<Set> out;
  const std::vector<int> el = from.elements();
  const int m = static_cast<int>(el.size());
  if (k < 0 || k > m) return out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    Set s;
    for (int i : idx) s.insert(el[static_cast<std::size_t>(i)]);
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

inline std::vector<Set> k_subsets(int n, int k) { return k_subsets(ground_set(n), k); }

/// A bijection of [n], stored 1-indexed.
class Permutation {
 public:
  Permutation() = default;

  /// `image[i]` is the image of element i+1.
  explicit Permutation(std::vector<int> image) : image_(std::move(image)) {
    const int n = static_cast<int>(image_.size());
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int v : image_) {
      if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
        throw std::invalid_argument("permutation is not a bijection on [" + std::to_string(n) + "]");
      }
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> im(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) im[static_cast<std::size_t>(i)] = i + 1;
    return Permutation(std::move(im));
  }

  static Permutation transposition(int n, int a, int b) {
    auto p = identity(n);
    std::swap(p.image_[static_cast<std::size_t>(a - 1)], p.image_[static_cast<std::size_t>(b - 1)]);
    return p;
  }

  int n() const { return static_cast<int>(image_.size()); }
  int operator()(int e) const { return image_.at(static_cast<std::size_t>(e - 1)); }

  Set apply(Set s) const {
    Set out;
    s.for_each([&](int e) { out.insert((*this)(e)); });
    return out;
  }

  Permutation inverse() const {
    std::vector<int> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) {
      inv[static_cast<std::size_t>(image_[i] - 1)] = static_cast<int>(i) + 1;
    }
    return Permutation(std::move(inv));
  }

  const std::vector<int>& image() const { return image_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
};

/// A duplicate-free k-uniform family on [n], kept in lexicographic order.
class Family {
 public:
  Family() = default;
  explicit Family(Params p) : params_(p) { params_.validate(); }

  Family(Params p, std::vector<Set> members) : params_(p), members_(std::move(members)) {
    params_.validate();
    const Set ground = ground_set(p.n);
    for (Set s : members_) {
      if (s.size() != p.k) {
        throw std::invalid_argument("set " + s.str() + " does not have " + std::to_string(p.k) +
                                    " elements");
      }
      if (!s.subset_of(ground)) {
        throw std::invalid_argument("set " + s.str() + " is not a subset of [" + std::to_string(p.n) +
                                    "]");
      }
    }
    std::sort(members_.begin(), members_.end());
    auto dup = std::adjacent_find(members_.begin(), members_.end());
    if (dup != members_.end()) throw std::invalid_argument("duplicate set " + dup->str());
  }

  const Params& params() const { return params_; }
  int n() const { return params_.n; }
  int k() const { return params_.k; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::span<const Set> members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  Set operator[](std::size_t i) const { return members_[i]; }

  bool contains(Set s) const { return std::binary_search(members_.begin(), members_.end(), s); }

  /// Members satisfying `pred`, as a family over the same parameters.
  template <typename Pred>
  Family filter(Pred&& pred) const {
    Family out(params_);
    for (Set s : members_) {
      if (pred(s)) out.members_.push_back(s);
    }
    return out;
  }

  friend bool operator==(const Family& a, const Family& b) {
    return a.params_ == b.params_ && a.members_ == b.members_;
  }

  std::string str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i != 0) out += ' ';
      out += members_[i].str();
    }
    return out + "]";
  }

 private:
  Params params_;
  std::vector<Set> members_;
};

inline bool is_intersecting(std::span<const Set> sets) {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (sets[i].disjoint(sets[j])) return false;
    }
  }
  return true;
}

inline bool is_intersecting(const Family& f) { return is_intersecting(f.members()); }

inline bool are_cross_intersecting(std::span<const Set> a, std::span<const Set> b) {
  for (Set x : a) {
    for (Set y : b) {
      if (x.disjoint(y)) return false;
    }
  }
  return true;
}

inline bool are_cross_intersecting(const Family& f, const Family& g) {
  if (f.params() != g.params()) throw std::invalid_argument("cross-intersection needs equal (n,k)");
  return are_cross_intersecting(f.members(), g.members());
}

/// Number of members that do not contain v.
inline int missing_degree(const Family& f, int v) {
  if (v < 1 || v > f.n()) throw std::out_of_range("element " + std::to_string(v) + " outside [n]");
  int c = 0;
  for (Set s : f) c += s.contains(v) ? 0 : 1;
  return c;
}

/// Number of members containing every element of s.
inline int subset_degree(const Family& f, Set s) {
  if (s.empty() || s.size() > f.k() || !s.subset_of(ground_set(f.n()))) {
    throw std::invalid_argument("subset_degree needs 1 <= |S| <= k inside [n], got " + s.str());
  }
  int c = 0;
  for (Set m : f) c += s.subset_of(m) ? 1 : 0;
  return c;
}

inline int min_missing_degree(const Family& f) {
  int best = std::numeric_limits<int>::max();
  for (int v = 1; v <= f.n(); ++v) best = std::min(best, missing_degree(f, v));
  return best;
}

namespace detail {

// Can `sets` be hit by at most `budget` elements drawn from `allowed`?
// Branches on the elements of the first unhit set; `chosen` receives a
// hitting set on success.
inline bool hit_within(std::span<const Set> sets, Set allowed, int budget, Set& chosen) {
  const Set* unhit = nullptr;
  for (const Set& s : sets) {
    if (!s.intersects(chosen)) {
      unhit = &s;
      break;
    }
  }
  if (unhit == nullptr) return true;
  if (budget == 0) return false;
  const Set options = *unhit & allowed;
  bool found = false;
  options.for_each([&](int e) {
    if (found) return;
    const Set saved = chosen;
    chosen.insert(e);
    if (hit_within(sets, allowed, budget - 1, chosen)) {
      found = true;
      return;
    }
    chosen = saved;
  });
  return found;
}

}  // namespace detail

/// Smallest set of at most `max_size` elements of `allowed` meeting every
/// member of `sets`, if one exists. Iterative deepening keeps it minimal.
inline std::optional<Set> find_hitting_set(std::span<const Set> sets, Set allowed, int max_size) {
  for (int b = 0; b <= max_size; ++b) {
    Set chosen;
    if (detail::hit_within(sets, allowed, b, chosen)) return chosen;
  }
  return std::nullopt;
}

/// Covering number: least |T| with T meeting every member. 0 for the empty
/// family. For an intersecting family any member is a cover, so the depth
/// stays at most k there.
inline int covering_number(const Family& f) {
  if (f.empty()) return 0;
  auto hs = find_hitting_set(f.members(), ground_set(f.n()), f.n());
  return hs->size();
}

inline Family relabel(const Family& f, const Permutation& pi) {
  if (pi.n() != f.n()) throw std::invalid_argument("permutation size does not match n");
  std::vector<Set> out;
  out.reserve(f.size());
  for (Set s : f) out.push_back(pi.apply(s));
  return Family(f.params(), std::move(out));
}

/// Sum over members of the sum of their elements.
inline std::int64_t element_sum(const Family& f) {
  std::int64_t s = 0;
  for (Set m : f) s += m.element_sum();
  return s;
}

}  // namespace ekr
