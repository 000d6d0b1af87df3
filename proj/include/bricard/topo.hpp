#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "bricard/errors.hpp"

namespace bricard::topo {

// ---------------------------------------------------------------------------
// Mobility and loop counting
// ---------------------------------------------------------------------------

/// Inputs of the modified Grubler-Kutzbach count.
struct MobilityInput {
  int links = 0;             // n, total link count
  int pairs = 0;             // g, kinematic pair count
  int pair_freedom_sum = 0;  // sum of per-pair freedoms
  int passive = 0;           // passive degrees of freedom
  int redundant = 0;         // redundant constraints
};

/// M = 6 (n - g - 1) + sum f_i + redundant - passive.
///
/// Redundant constraints add mobility back: that sign convention is what
/// makes the overconstrained single loop (n = g = sum f = 6, one redundant
/// constraint) come out with mobility 1, and it reproduces the planar
/// four-bar when the three planar constraints are counted as redundant.
inline int mobility(const MobilityInput& in) {
  if (in.links < 0 || in.pairs < 0 || in.pair_freedom_sum < 0 || in.passive < 0 ||
      in.redundant < 0)
    throw OutOfRange("mobility counts must be non-negative");
  if (in.pair_freedom_sum < in.pairs)
    throw OutOfRange("each kinematic pair has at least one freedom");
  return 6 * (in.links - in.pairs - 1) + in.pair_freedom_sum + in.redundant - in.passive;
}

/// Independent loop count from Euler's formula: V = (n3 + 2 n4 + 3 n5)/2 + 1.
inline int loop_count(int n3, int n4, int n5) {
  if (n3 < 0 || n4 < 0 || n5 < 0) throw OutOfRange("link counts must be non-negative");
  if ((n3 + 3 * n5) % 2 != 0)
    throw NonIntegralLoopCount("no integral loop count for (n3, n4, n5) = (" +
                               std::to_string(n3) + ", " + std::to_string(n4) + ", " +
                               std::to_string(n5) + ")");
  return (n3 + 2 * n4 + 3 * n5) / 2 + 1;
}

/// Base count of binary links, before the symbolic Phi term: 5 V - (n3+n4+n5).
inline int binary_link_base(int v_loops, int n3, int n4, int n5) {
  if (v_loops < 1) throw OutOfRange("loop count must be at least 1");
  return 5 * v_loops - (n3 + n4 + n5);
}

/// One feasible combination of basic links. The binary-link count is carried
/// symbolically as "base + Phi" because Phi depends on downstream mobility
/// choices.
struct LinkComposition {
  int v_loops = 1;
  int n3 = 0;
  int n4 = 0;
  int n5 = 0;
  int n2_base = 5;

  std::string n2_label() const { return std::to_string(n2_base) + "+Phi"; }

  friend bool operator==(const LinkComposition&, const LinkComposition&) = default;
};

/// All loop-consistent combinations with V <= v_max and each count bounded by
/// max_links_per_kind, in lexicographic (V, n3, n4, n5) order.
inline std::vector<LinkComposition> enumerate_compositions(int v_max,
                                                           int max_links_per_kind = 8) {
  if (v_max < 1) throw OutOfRange("v_max must be at least 1");
  if (max_links_per_kind < 0) throw OutOfRange("max_links_per_kind must be non-negative");

  std::vector<LinkComposition> out;
  for (int v = 1; v <= v_max; ++v) {
    const int target = 2 * (v - 1);  // required n3 + 2 n4 + 3 n5
    for (int n3 = 0; n3 <= std::min(target, max_links_per_kind); ++n3)
      for (int n4 = 0; 2 * n4 <= target - n3 && n4 <= max_links_per_kind; ++n4) {
        const int rest = target - n3 - 2 * n4;
        if (rest % 3 != 0) continue;
        const int n5 = rest / 3;
        if (n5 > max_links_per_kind) continue;
        out.push_back({v, n3, n4, n5, binary_link_base(v, n3, n4, n5)});
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Published combination catalog and its consistency report
// ---------------------------------------------------------------------------

/// A catalog row as printed in the published combination table for V <= 4.
struct CatalogRow {
  int no;
  int printed_v;
  int printed_n2_base;  // printed as "base + Phi"
  int n3, n4, n5;
};

/// The printed catalog, verbatim. Several rows are internally inconsistent;
/// see validate_catalog().
inline const std::array<CatalogRow, 17>& composition_catalog() {
  static const std::array<CatalogRow, 17> rows = {{
      {1, 1, 5, 0, 0, 0},
      {2, 2, 8, 2, 0, 0},
      {3, 2, 9, 0, 1, 0},
      {4, 2, 11, 4, 0, 0},
      {5, 2, 12, 2, 1, 0},
      {6, 2, 13, 1, 0, 1},
      {7, 3, 13, 0, 2, 0},
      {8, 3, 14, 0, 0, 1},
      {9, 1, 14, 6, 0, 0},
      {10, 2, 15, 4, 1, 0},
      {11, 2, 16, 3, 0, 1},
      {12, 2, 16, 2, 2, 0},
      {13, 2, 17, 2, 0, 1},
      {14, 3, 17, 1, 1, 0},
      {15, 3, 17, 0, 3, 0},
      {16, 3, 18, 0, 1, 1},
      {17, 4, 18, 0, 0, 2},
  }};
  return rows;
}

/// Re-derivation of one catalog row. When the parity precondition of
/// loop_count fails no loop count exists and the recomputed fields are -1.
struct CatalogCheck {
  CatalogRow row;
  bool parity_ok = false;
  int recomputed_v = -1;
  int recomputed_n2_base = -1;
  bool v_consistent = false;
  bool n2_consistent = false;
};

/// Re-derives V and the binary-link base for every catalog row instead of
/// trusting the printed loop-count column.
inline std::vector<CatalogCheck> validate_catalog() {
  std::vector<CatalogCheck> checks;
  for (const CatalogRow& row : composition_catalog()) {
    CatalogCheck c;
    c.row = row;
    c.parity_ok = (row.n3 + 3 * row.n5) % 2 == 0;
    if (c.parity_ok) {
      c.recomputed_v = loop_count(row.n3, row.n4, row.n5);
      c.recomputed_n2_base = binary_link_base(c.recomputed_v, row.n3, row.n4, row.n5);
      c.v_consistent = c.recomputed_v == row.printed_v;
      c.n2_consistent = c.recomputed_n2_base == row.printed_n2_base;
    }
    checks.push_back(c);
  }
  return checks;
}

// ---------------------------------------------------------------------------
// Topological graphs
// ---------------------------------------------------------------------------

/// One basic link. The arity is its kinematic-pair count and must equal its
/// degree in the graph.
struct GraphNode {
  int id;
  int arity;
};

/// One connection between basic links: a serial chain of binary_links binary
/// links. Parallel edges are allowed; self loops are not.
struct GraphEdge {
  int a, b;
  int binary_links;
};

struct TopologyGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
};

inline bool has_node(const TopologyGraph& g, int id) {
  return std::any_of(g.nodes.begin(), g.nodes.end(),
                     [id](const GraphNode& n) { return n.id == id; });
}

inline int degree(const TopologyGraph& g, int id) {
  int d = 0;
  for (const GraphEdge& e : g.edges) d += (e.a == id) + (e.b == id);
  return d;
}

inline int binary_link_total(const TopologyGraph& g) {
  return std::accumulate(g.edges.begin(), g.edges.end(), 0,
                         [](int s, const GraphEdge& e) { return s + e.binary_links; });
}

/// Structural validity: unique node ids, edge endpoints present, no self
/// loops, non-negative chain lengths, and degree equal to declared arity.
inline bool is_well_formed(const TopologyGraph& g) {
  for (size_t i = 0; i < g.nodes.size(); ++i)
    for (size_t j = i + 1; j < g.nodes.size(); ++j)
      if (g.nodes[i].id == g.nodes[j].id) return false;
  for (const GraphEdge& e : g.edges)
    if (e.a == e.b || e.binary_links < 0 || !has_node(g, e.a) || !has_node(g, e.b))
      return false;
  for (const GraphNode& n : g.nodes)
    if (degree(g, n.id) != n.arity) return false;
  return true;
}

/// Nodes sorted by id, edges normalized (a <= b) and sorted.
inline TopologyGraph canonical(const TopologyGraph& g) {
  TopologyGraph out = g;
  std::sort(out.nodes.begin(), out.nodes.end(),
            [](const GraphNode& x, const GraphNode& y) { return x.id < y.id; });
  for (GraphEdge& e : out.edges)
    if (e.a > e.b) std::swap(e.a, e.b);
  std::sort(out.edges.begin(), out.edges.end(), [](const GraphEdge& x, const GraphEdge& y) {
    return std::tie(x.a, x.b, x.binary_links) < std::tie(y.a, y.b, y.binary_links);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Node response signatures and isomorphism
// ---------------------------------------------------------------------------

namespace detail {

inline void hash_mix(std::uint64_t& h, std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ULL;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  h ^= (v ^ (v >> 31)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

/// Relabel-invariant per-node descriptor: arity followed by the sorted
/// multiset of incident chain lengths.
inline std::vector<int> node_descriptor(const TopologyGraph& g, int id) {
  std::vector<int> weights;
  int arity = 0;
  for (const GraphNode& n : g.nodes)
    if (n.id == id) arity = n.arity;
  for (const GraphEdge& e : g.edges) {
    if (e.a == id) weights.push_back(e.binary_links);
    if (e.b == id) weights.push_back(e.binary_links);
  }
  std::sort(weights.begin(), weights.end());
  std::vector<int> desc{arity, static_cast<int>(weights.size())};
  desc.insert(desc.end(), weights.begin(), weights.end());
  return desc;
}

inline std::int64_t layer_value(size_t layer_size, std::vector<std::vector<int>> descriptors) {
  std::sort(descriptors.begin(), descriptors.end());
  std::uint64_t h = 1469598103934665603ULL;
  hash_mix(h, layer_size);
  for (const std::vector<int>& d : descriptors) {
    for (int v : d) hash_mix(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
    hash_mix(h, 0xd1d1d1d1ULL);  // descriptor separator
  }
  return static_cast<std::int64_t>(h);
}

}  // namespace detail

/// Layer-response signature from one start node: one value per breadth layer,
/// each condensing the layer size and the sorted multiset of per-node
/// (arity, incident chain lengths) descriptors. Isomorphic graphs yield equal
/// signature multisets over matching start nodes; the converse does not hold,
/// so this is a pre-filter, not a decision procedure.
inline std::vector<std::int64_t> node_response_signature(const TopologyGraph& g, int start) {
  if (!has_node(g, start)) throw UnknownNode("node " + std::to_string(start) + " not in graph");

  std::vector<std::int64_t> signature;
  std::vector<int> frontier{start};
  std::vector<int> visited{start};
  const auto seen = [&](int id) {
    return std::find(visited.begin(), visited.end(), id) != visited.end();
  };

  while (!frontier.empty()) {
    std::vector<std::vector<int>> descriptors;
    descriptors.reserve(frontier.size());
    for (int id : frontier) descriptors.push_back(detail::node_descriptor(g, id));
    signature.push_back(detail::layer_value(frontier.size(), std::move(descriptors)));

    std::vector<int> next;
    for (int id : frontier)
      for (const GraphEdge& e : g.edges) {
        const int other = e.a == id ? e.b : (e.b == id ? e.a : -1);
        if (other >= 0 && !seen(other) &&
            std::find(next.begin(), next.end(), other) == next.end())
          next.push_back(other);
      }
    visited.insert(visited.end(), next.begin(), next.end());
    frontier = std::move(next);
  }

  if (visited.size() != g.nodes.size()) {
    // Disconnected remainder, folded into one terminal value.
    std::vector<std::vector<int>> rest;
    for (const GraphNode& n : g.nodes)
      if (!seen(n.id)) rest.push_back(detail::node_descriptor(g, n.id));
    signature.push_back(detail::layer_value(rest.size(), std::move(rest)));
  }
  return signature;
}

namespace detail {

inline std::vector<std::vector<std::int64_t>> signature_multiset(const TopologyGraph& g) {
  std::vector<std::vector<std::int64_t>> sigs;
  sigs.reserve(g.nodes.size());
  for (const GraphNode& n : g.nodes) sigs.push_back(node_response_signature(g, n.id));
  std::sort(sigs.begin(), sigs.end());
  return sigs;
}

/// Exhaustive relabeling search; the final arbiter for graphs this small.
inline bool brute_force_isomorphic(const TopologyGraph& a, const TopologyGraph& b) {
  const TopologyGraph ca = canonical(a), cb = canonical(b);
  const size_t n = ca.nodes.size();
  if (n != cb.nodes.size() || ca.edges.size() != cb.edges.size()) return false;

  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const auto edge_key = [](int a_, int b_, int w) {
    if (a_ > b_) std::swap(a_, b_);
    return std::tuple<int, int, int>(a_, b_, w);
  };
  std::vector<std::tuple<int, int, int>> target;
  target.reserve(cb.edges.size());
  for (const GraphEdge& e : cb.edges) target.push_back(edge_key(e.a, e.b, e.binary_links));
  std::sort(target.begin(), target.end());

  do {
    bool arity_ok = true;
    for (size_t i = 0; i < n && arity_ok; ++i)
      arity_ok = ca.nodes[i].arity == cb.nodes[perm[i]].arity;
    if (!arity_ok) continue;

    // Map a's node ids to b's through the permutation of sorted positions.
    const auto mapped = [&](int id) {
      for (size_t i = 0; i < n; ++i)
        if (ca.nodes[i].id == id) return cb.nodes[perm[i]].id;
      return -1;
    };
    std::vector<std::tuple<int, int, int>> image;
    image.reserve(ca.edges.size());
    for (const GraphEdge& e : ca.edges)
      image.push_back(edge_key(mapped(e.a), mapped(e.b), e.binary_links));
    std::sort(image.begin(), image.end());
    if (image == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace detail

/// True iff some relabeling maps a onto b preserving edge multiplicities and
/// chain lengths. Signature comparison rejects early; exhaustive relabeling
/// decides the rest.
inline bool are_isomorphic(const TopologyGraph& a, const TopologyGraph& b) {
  if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size()) return false;
  if (detail::signature_multiset(a) != detail::signature_multiset(b)) return false;
  return detail::brute_force_isomorphic(a, b);
}

// ---------------------------------------------------------------------------
// The four-ternary instance
// ---------------------------------------------------------------------------

/// Connected degree-3 multigraphs on four ternary links arranged on a fixed
/// ring, with eleven binary links distributed over the connections.
///
/// The ring 1-2-3-4-1 uses two pairs at every node; the third pair is closed
/// by one of the three perfect matchings of {1,2,3,4}. Ring connections carry
/// two binary links each; the matching pair carries two and one, assigned in
/// edge order. The three graphs fall into two isomorphism classes: the
/// all-distinct-pairs form and the doubled-ring form.
inline std::vector<TopologyGraph> enumerate_ternary_quad_topologies() {
  const std::vector<GraphNode> nodes{{1, 3}, {2, 3}, {3, 3}, {4, 3}};
  const std::array<std::array<std::pair<int, int>, 2>, 3> matchings = {{
      {{{1, 2}, {3, 4}}},
      {{{1, 3}, {2, 4}}},
      {{{1, 4}, {2, 3}}},
  }};

  std::vector<TopologyGraph> out;
  for (const auto& matching : matchings) {
    TopologyGraph g;
    g.nodes = nodes;
    g.edges = {{1, 2, 2}, {2, 3, 2}, {3, 4, 2}, {1, 4, 2}};
    g.edges.push_back({matching[0].first, matching[0].second, 2});
    g.edges.push_back({matching[1].first, matching[1].second, 1});
    out.push_back(canonical(g));
  }
  return out;
}

/// Indices of one representative per isomorphism class, in input order.
inline std::vector<size_t> isomorphism_class_representatives(
    const std::vector<TopologyGraph>& graphs) {
  std::vector<size_t> reps;
  for (size_t i = 0; i < graphs.size(); ++i) {
    bool fresh = true;
    for (size_t r : reps)
      if (are_isomorphic(graphs[r], graphs[i])) {
        fresh = false;
        break;
      }
    if (fresh) reps.push_back(i);
  }
  return reps;
}

}  // namespace bricard::topo
