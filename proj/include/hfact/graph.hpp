#pragma once

// Finite graphs and the exhaustive graph-level oracles used to validate every
// graph-to-algebra reduction. All searches branch on vertices in index order
// and try target vertices in increasing order, so the witness returned is the
// lexicographically least one.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hfact/algebra.hpp"

namespace hfact {

using Edge = std::pair<int, int>;

/// Directed graph on {0..n-1}. Undirected graphs are stored as symmetric
/// directed graphs: adding {u,v} records both (u,v) and (v,u).
class Graph {
 public:
  Graph() = default;
  /// Throws Error when an endpoint is out of range.
  Graph(bool directed, int n, const std::vector<Edge>& edges);

  static Graph complete(int n);
  static Graph cycle(int n);
  static Graph path(int n);
  static Graph empty(int n, bool directed = false);

  [[nodiscard]] bool directed() const noexcept { return directed_; }
  [[nodiscard]] int order() const noexcept { return n_; }
  [[nodiscard]] bool has_edge(int u, int v) const {
    return adj_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v)] != 0;
  }
  /// Every ordered pair (u,v) in the edge relation, lexicographically.
  [[nodiscard]] std::vector<Edge> arcs() const;
  /// Undirected graphs: each edge once with u <= v. Directed: same as arcs().
  [[nodiscard]] std::vector<Edge> edges() const;
  [[nodiscard]] bool loop_free() const;
  /// Connectivity of the underlying undirected graph. The empty graph counts as connected.
  [[nodiscard]] bool connected() const;
  [[nodiscard]] bool symmetric() const;

  /// Same vertex set with one extra isolated vertex (index n).
  [[nodiscard]] Graph with_isolated_vertex() const;
  /// Every edge in both orientations, as a directed graph.
  [[nodiscard]] Graph as_symmetric_digraph() const;
  [[nodiscard]] Graph induced(const std::vector<int>& vertices) const;

  bool operator==(const Graph&) const = default;

 private:
  bool directed_ = false;
  int n_ = 0;
  std::vector<char> adj_;
};

using VertexMap = std::vector<int>;

struct GraphRequirements {
  bool loop_free = false;
  bool connected = false;
  int min_vertices = 0;
};

std::vector<std::string> validate_graph(const Graph& g, const GraphRequirements& req);

bool is_graph_hom(const VertexMap& phi, const Graph& g, const Graph& h);
bool is_strong_graph_hom(const VertexMap& phi, const Graph& g, const Graph& h);

/// Edge-preserving map. Throws Error when directedness differs.
std::optional<VertexMap> graph_hom(const Graph& g, const Graph& h);

/// (u,v) in E_G  <=>  (phi u, phi v) in E_H, for all u, v (including u == v).
/// With `injective`, only one-to-one maps are considered.
std::optional<VertexMap> strong_graph_hom(const Graph& g, const Graph& h, bool injective = false);

/// Injective edge-preserving map; with `induced`, non-edges are reflected too.
std::optional<VertexMap> subgraph_embedding(const Graph& g, const Graph& h, bool induced);

struct GraphRetraction {
  VertexMap g;  // G -> H
  VertexMap h;  // H -> G, with h ∘ g = id_G
};

/// G is a retract of H.
std::optional<GraphRetraction> graph_retract(const Graph& g, const Graph& h);

struct GraphCore {
  Graph core;
  std::vector<int> vertices;  // chosen vertex set in G, increasing
  VertexMap retraction;       // G -> G onto `vertices`
};

/// Minimum-size retract; ties go to the lexicographically least vertex set.
GraphCore graph_core(const Graph& g);

bool graphs_isomorphic(const Graph& g, const Graph& h);

/// All graphs on n vertices (loop-free), one per isomorphism class, in order
/// of their canonical adjacency code.
std::vector<Graph> graph_catalog(int n, bool directed, bool connected_only);

}  // namespace hfact
