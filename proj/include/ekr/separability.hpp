#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ekr/constructions.hpp"
#include "ekr/core.hpp"

namespace ekr {

struct DisjointnessGraph {
  std::vector<Set> vertices;
  std::vector<std::vector<int>> adjacency;
  std::vector<int> component;
  int components = 0;
};

inline DisjointnessGraph disjointness_graph(std::span<const Set> sets) {
  DisjointnessGraph g;
  g.vertices.assign(sets.begin(), sets.end());
  const int m = static_cast<int>(sets.size());
  g.adjacency.assign(sets.size(), {});
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      if (sets[static_cast<std::size_t>(a)].disjoint(sets[static_cast<std::size_t>(b)])) {
        g.adjacency[static_cast<std::size_t>(a)].push_back(b);
        g.adjacency[static_cast<std::size_t>(b)].push_back(a);
      }
    }
  }
  g.component.assign(sets.size(), -1);
  std::vector<int> stack;
  for (int s = 0; s < m; ++s) {
    if (g.component[static_cast<std::size_t>(s)] != -1) continue;
    const int label = g.components++;
    g.component[static_cast<std::size_t>(s)] = label;
    stack.push_back(s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : g.adjacency[static_cast<std::size_t>(v)]) {
        if (g.component[static_cast<std::size_t>(w)] == -1) {
          g.component[static_cast<std::size_t>(w)] = label;
          stack.push_back(w);
        }
      }
    }
  }
  return g;
}

/// Non-separable iff the disjointness graph is connected. Families with at
/// most one member count as non-separable.
inline bool is_non_separable(std::span<const Set> sets) {
  if (sets.size() <= 1) return true;
  return disjointness_graph(sets).components == 1;
}

inline bool is_non_separable(const Family& f) { return is_non_separable(f.members()); }

/// A split into two nonempty cross-intersecting parts: the first component
/// against everything else.
inline std::optional<std::pair<std::vector<Set>, std::vector<Set>>> find_separation(std::span<const Set> sets) {
  if (sets.size() <= 1) return std::nullopt;
  const auto g = disjointness_graph(sets);
  if (g.components == 1) return std::nullopt;
  std::pair<std::vector<Set>, std::vector<Set>> out;
  for (std::size_t i = 0; i < sets.size(); ++i) (g.component[i] == 0 ? out.first : out.second).push_back(sets[i]);
  return out;
}

/// The family {B subset of Z : 0 < |B & A| < |A|} of r-sets on Z = [m].
inline std::vector<Set> boundary_family(int m, int r, Set a) {
  std::vector<Set> out;
  const int size = a.size();
  for (Set b : k_subsets(m, r)) {
    const int c = (b & a).size();
    if (c > 0 && c < size) out.push_back(b);
  }
  return out;
}

struct ShiftBoundary {
  /// Members G with x in G, y not in G, and (G - x) + y outside the family.
  std::vector<Set> b_x;
  /// b_x with x removed.
  std::vector<Set> b_prime;
  /// Split of b_x by membership in the reference family, when given.
  std::vector<Set> c_x;
  std::vector<Set> d_x;
};

inline ShiftBoundary shift_boundary(const Family& f, int x, int y, const Family* reference = nullptr) {
  if (x == y) throw std::invalid_argument("shift boundary needs x != y");
  if (x < 1 || y < 1 || x > f.n() || y > f.n()) throw std::out_of_range("shift boundary pair outside [n]");
  ShiftBoundary b;
  for (Set g : f) {
    if (!g.contains(x) || g.contains(y)) continue;
    if (f.contains(g.without(x).with(y))) continue;
    b.b_x.push_back(g);
    b.b_prime.push_back(g.without(x));
    if (reference != nullptr) (reference->contains(g) ? b.c_x : b.d_x).push_back(g);
  }
  return b;
}

/// Block index 1..4 of an element under the template's role partition:
/// center, kernel/core, pages, rest. G_2 is symmetric in its 3-set core,
/// which forms a single block.
inline int template_block(const TemplateDescriptor& d, int e) {
  switch (d.kind) {
    case TemplateKind::J:
      if (e == d.center) return 1;
      if (d.core.contains(e)) return 2;
      if (d.pages.contains(e)) return 3;
      return 4;
    case TemplateKind::G:
      if (d.index == 2) return d.core.with(d.center).contains(e) ? 1 : 4;
      if (e == d.center) return 1;
      if (d.core.contains(e)) return 2;
      return 4;
    default:
      throw std::invalid_argument("rigidity blocks are defined for J and G templates only");
  }
}

struct RigidityRow {
  int x = 0;
  int y = 0;
  int block_x = 0;
  int block_y = 0;
  std::size_t boundary_size = 0;
  bool trivial = false;
  bool non_separable = false;
  /// Lower-to-higher block pairs must give a non-separable B'; all others
  /// must be trivial (empty B).
  bool pass = false;
};

inline std::vector<RigidityRow> check_rigidity(const TemplateDescriptor& d, Params p) {
  const bool allowed = (d.kind == TemplateKind::J && (d.index == 2 || d.index == 3)) ||
                       (d.kind == TemplateKind::G && (d.index == 2 || d.index == p.k - 1));
  if (!allowed) throw std::invalid_argument("rigidity table supports j2, j3, g2 and g(k-1)");
  const Family f = build(d, p);
  std::vector<RigidityRow> rows;
  for (int x = 1; x <= p.n; ++x) {
    for (int y = 1; y <= p.n; ++y) {
      if (x == y) continue;
      RigidityRow r;
      r.x = x;
      r.y = y;
      r.block_x = template_block(d, x);
      r.block_y = template_block(d, y);
      const auto b = shift_boundary(f, x, y);
      r.boundary_size = b.b_prime.size();
      r.trivial = b.b_x.empty();
      r.non_separable = is_non_separable(b.b_prime);
      r.pass = r.block_x < r.block_y ? (!r.trivial && r.non_separable) : r.trivial;
      rows.push_back(r);
    }
  }
  return rows;
}

}  // namespace ekr
