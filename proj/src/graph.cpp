#include "hfact/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>

namespace hfact {

Graph::Graph(bool directed, int n, const std::vector<Edge>& edges)
    : directed_(directed), n_(n), adj_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {
  if (n < 0) throw Error("graph order must be non-negative");
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw Error("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    }
    adj_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n) + static_cast<std::size_t>(v)] = 1;
    if (!directed) adj_[static_cast<std::size_t>(v) * static_cast<std::size_t>(n) + static_cast<std::size_t>(u)] = 1;
  }
}

Graph Graph::complete(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  }
  return Graph(false, n, e);
}

Graph Graph::cycle(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u) e.emplace_back(u, (u + 1) % n);
  return Graph(false, n, e);
}

Graph Graph::path(int n) {
  std::vector<Edge> e;
  for (int u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
  return Graph(false, n, e);
}

Graph Graph::empty(int n, bool directed) { return Graph(directed, n, {}); }

std::vector<Edge> Graph::arcs() const {
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      if (has_edge(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<Edge> Graph::edges() const {
  if (directed_) return arcs();
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u) {
    for (int v = u; v < n_; ++v) {
      if (has_edge(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

bool Graph::loop_free() const {
  for (int v = 0; v < n_; ++v) {
    if (has_edge(v, v)) return false;
  }
  return true;
}

bool Graph::connected() const {
  if (n_ == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n_; ++v) {
      if (!seen[static_cast<std::size_t>(v)] && (has_edge(u, v) || has_edge(v, u))) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n_;
}

bool Graph::symmetric() const {
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (has_edge(u, v) != has_edge(v, u)) return false;
    }
  }
  return true;
}

Graph Graph::with_isolated_vertex() const { return Graph(directed_, n_ + 1, arcs()); }

Graph Graph::as_symmetric_digraph() const {
  std::vector<Edge> e;
  for (const auto& [u, v] : arcs()) {
    e.emplace_back(u, v);
    e.emplace_back(v, u);
  }
  return Graph(true, n_, e);
}

Graph Graph::induced(const std::vector<int>& vertices) const {
  std::vector<Edge> e;
  const int m = static_cast<int>(vertices.size());
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (has_edge(vertices[static_cast<std::size_t>(i)], vertices[static_cast<std::size_t>(j)])) e.emplace_back(i, j);
    }
  }
  return Graph(directed_, m, e);
}

std::vector<std::string> validate_graph(const Graph& g, const GraphRequirements& req) {
  std::vector<std::string> report;
  if (req.loop_free && !g.loop_free()) report.emplace_back("graph has a loop");
  if (req.connected && !g.connected()) report.emplace_back("graph is not connected");
  if (g.order() < req.min_vertices) {
    report.push_back("graph has " + std::to_string(g.order()) + " vertices, at least " +
                     std::to_string(req.min_vertices) + " required");
  }
  if (!g.directed() && !g.symmetric()) report.emplace_back("undirected graph is not symmetric");
  return report;
}

namespace {

struct MapSearch {
  const Graph& src;
  const Graph& dst;
  bool injective = false;
  bool strong = false;
  std::vector<int> fixed;     // -1 = free
  std::vector<char> allowed;  // empty = every target vertex allowed

  MapSearch(const Graph& s, const Graph& d) : src(s), dst(d) {}

  // Checks the pairs between v and the already-assigned vertices 0..v.
  [[nodiscard]] bool consistent(const VertexMap& phi, int v) const {
    for (int u = 0; u <= v; ++u) {
      const int pu = phi[static_cast<std::size_t>(u)];
      const int pv = phi[static_cast<std::size_t>(v)];
      const bool e1 = src.has_edge(u, v);
      const bool e2 = src.has_edge(v, u);
      const bool f1 = dst.has_edge(pu, pv);
      const bool f2 = dst.has_edge(pv, pu);
      if (strong) {
        if (e1 != f1 || e2 != f2) return false;
      } else {
        if ((e1 && !f1) || (e2 && !f2)) return false;
      }
    }
    return true;
  }

  // Returns true when on_solution asked to stop.
  bool run(VertexMap& phi, int v, std::vector<char>& used,
           const std::function<bool(const VertexMap&)>& on_solution) const {
    if (v == src.order()) return on_solution(phi);
    const int fix = fixed.empty() ? -1 : fixed[static_cast<std::size_t>(v)];
    const int lo = fix >= 0 ? fix : 0;
    const int hi = fix >= 0 ? fix + 1 : dst.order();
    for (int t = lo; t < hi; ++t) {
      if (!allowed.empty() && !allowed[static_cast<std::size_t>(t)]) continue;
      if (injective && used[static_cast<std::size_t>(t)]) continue;
      phi[static_cast<std::size_t>(v)] = t;
      if (!consistent(phi, v)) continue;
      used[static_cast<std::size_t>(t)] = 1;
      const bool stop = run(phi, v + 1, used, on_solution);
      used[static_cast<std::size_t>(t)] = 0;
      if (stop) return true;
    }
    return false;
  }

  std::optional<VertexMap> first() const {
    VertexMap phi(static_cast<std::size_t>(src.order()), 0);
    std::vector<char> used(static_cast<std::size_t>(dst.order()), 0);
    std::optional<VertexMap> out;
    run(phi, 0, used, [&](const VertexMap& m) {
      out = m;
      return true;
    });
    return out;
  }
};

void require_like_directedness(const Graph& g, const Graph& h) {
  if (g.directed() != h.directed()) throw Error("graphs differ in directedness");
}

}  // namespace

bool is_graph_hom(const VertexMap& phi, const Graph& g, const Graph& h) {
  if (static_cast<int>(phi.size()) != g.order()) return false;
  for (int x : phi) {
    if (x < 0 || x >= h.order()) return false;
  }
  for (const auto& [u, v] : g.arcs()) {
    if (!h.has_edge(phi[static_cast<std::size_t>(u)], phi[static_cast<std::size_t>(v)])) return false;
  }
  return true;
}

bool is_strong_graph_hom(const VertexMap& phi, const Graph& g, const Graph& h) {
  if (!is_graph_hom(phi, g, h)) return false;
  for (int u = 0; u < g.order(); ++u) {
    for (int v = 0; v < g.order(); ++v) {
      if (g.has_edge(u, v) != h.has_edge(phi[static_cast<std::size_t>(u)], phi[static_cast<std::size_t>(v)])) return false;
    }
  }
  return true;
}

std::optional<VertexMap> graph_hom(const Graph& g, const Graph& h) {
  require_like_directedness(g, h);
  return MapSearch{g, h}.first();
}

std::optional<VertexMap> strong_graph_hom(const Graph& g, const Graph& h, bool injective) {
  require_like_directedness(g, h);
  MapSearch s{g, h};
  s.strong = true;
  s.injective = injective;
  return s.first();
}

std::optional<VertexMap> subgraph_embedding(const Graph& g, const Graph& h, bool induced) {
  if (g.directed() != h.directed()) return std::nullopt;
  MapSearch s{g, h};
  s.injective = true;
  s.strong = induced;
  return s.first();
}

std::optional<GraphRetraction> graph_retract(const Graph& g, const Graph& h) {
  if (g.directed() != h.directed()) return std::nullopt;
  // h ∘ g = id forces g to be injective.
  MapSearch outer{g, h};
  outer.injective = true;
  std::optional<GraphRetraction> out;
  VertexMap phi(static_cast<std::size_t>(g.order()), 0);
  std::vector<char> used(static_cast<std::size_t>(h.order()), 0);
  outer.run(phi, 0, used, [&](const VertexMap& gmap) {
    MapSearch inner{h, g};
    inner.fixed.assign(static_cast<std::size_t>(h.order()), -1);
    for (int v = 0; v < g.order(); ++v) inner.fixed[static_cast<std::size_t>(gmap[static_cast<std::size_t>(v)])] = v;
    if (auto hmap = inner.first()) {
      out = GraphRetraction{gmap, *hmap};
      return true;
    }
    return false;
  });
  return out;
}

GraphCore graph_core(const Graph& g) {
  const int n = g.order();
  if (n == 0) return GraphCore{g, {}, {}};
  for (int k = 1; k <= n; ++k) {
    // Combinations of size k in lexicographic order.
    std::vector<int> subset(static_cast<std::size_t>(k));
    std::iota(subset.begin(), subset.end(), 0);
    while (true) {
      MapSearch s{g, g};
      s.fixed.assign(static_cast<std::size_t>(n), -1);
      s.allowed.assign(static_cast<std::size_t>(n), 0);
      for (int v : subset) {
        s.fixed[static_cast<std::size_t>(v)] = v;
        s.allowed[static_cast<std::size_t>(v)] = 1;
      }
      if (auto r = s.first()) return GraphCore{g.induced(subset), subset, *r};

      int i = k - 1;
      while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - k + i) --i;
      if (i < 0) break;
      ++subset[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return GraphCore{g, {}, {}};  // unreachable: the full vertex set always retracts
}

bool graphs_isomorphic(const Graph& g, const Graph& h) {
  if (g.order() != h.order() || g.directed() != h.directed()) return false;
  return subgraph_embedding(g, h, true).has_value();
}

namespace {

std::vector<Edge> pair_slots(int n, bool directed) {
  std::vector<Edge> slots;
  for (int u = 0; u < n; ++u) {
    for (int v = directed ? 0 : u + 1; v < n; ++v) {
      if (u != v) slots.emplace_back(u, v);
    }
  }
  return slots;
}

std::uint64_t canonical_code(const Graph& g, const std::vector<Edge>& slots) {
  std::vector<int> perm(static_cast<std::size_t>(g.order()));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t code = 0;
    for (const auto& [u, v] : slots) {
      code = (code << 1) | (g.has_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]) ? 1u : 0u);
    }
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<Graph> graph_catalog(int n, bool directed, bool connected_only) {
  const auto slots = pair_slots(n, directed);
  if (slots.size() > 62) throw Error("graph catalog too large");
  std::set<std::uint64_t> seen;
  std::vector<std::pair<std::uint64_t, Graph>> found;
  const std::uint64_t total = std::uint64_t{1} << slots.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) e.push_back(slots[i]);
    }
    Graph g(directed, n, e);
    if (connected_only && !g.connected()) continue;
    const auto code = canonical_code(g, slots);
    if (seen.insert(code).second) found.emplace_back(code, std::move(g));
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Graph> out;
  out.reserve(found.size());
  for (auto& [code, g] : found) out.push_back(std::move(g));
  return out;
}

}  // namespace hfact
