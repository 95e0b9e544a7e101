#include "hfact/encodings.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace hfact {

namespace {

constexpr std::array<const char*, 5> kLegendKinds = {"unary-dagger", "magma-star", "semigroup-XG", "semilattice-Xn",
                                                     "gadget"};
constexpr std::array<const char*, 6> kRoles = {"vertex", "edge-a", "edge-b", "chi", "dist", "chain"};

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

LegendEntry dist(const std::string& name) { return LegendEntry{Role::dist, name, {}}; }

// Arcs in lexicographic order and a lookup from (u,v) to the arc index.
struct ArcLayout {
  std::vector<Edge> arcs;
  std::vector<int> index;  // n*n, -1 when absent
  int n = 0;

  explicit ArcLayout(const Graph& g) : arcs(g.arcs()), index(sz(g.order() * g.order()), -1), n(g.order()) {
    for (std::size_t i = 0; i < arcs.size(); ++i) index[sz(arcs[i].first * n + arcs[i].second)] = static_cast<int>(i);
  }
  [[nodiscard]] int at(int u, int v) const { return index[sz(u * n + v)]; }
  [[nodiscard]] int a(int arc) const { return 2 * n + 2 * arc; }
  [[nodiscard]] int b(int arc) const { return 2 * n + 2 * arc + 1; }
};

// Semigroup element indices: 0 b b2 c, vertices, self-chi, then pair-chi.
struct SemigroupLayout {
  static constexpr int zero = 0, b = 1, b2 = 2, c = 3;
  int n = 0;
  int size = 0;
  std::vector<int> chi;  // n*n symmetric, -1 for edges
  std::vector<Edge> chi_pairs;

  explicit SemigroupLayout(const Graph& g) : n(g.order()), chi(sz(n * n), -1) {
    int next = 4 + 2 * n;
    for (int v = 0; v < n; ++v) {
      chi[sz(v * n + v)] = 4 + n + v;
      chi_pairs.emplace_back(v, v);
    }
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (g.has_edge(u, v)) continue;
        chi[sz(u * n + v)] = chi[sz(v * n + u)] = next++;
        chi_pairs.emplace_back(u, v);
      }
    }
    size = next;
  }
  [[nodiscard]] int vertex(int v) const { return 4 + v; }
  [[nodiscard]] int chi_of(int u, int v) const { return chi[sz(u * n + v)]; }
};

void require_undirected(const Graph& g, const char* who) {
  if (g.directed() && !g.symmetric()) throw Error(std::string(who) + ": graph must be undirected");
  if (!g.loop_free()) throw Error(std::string(who) + ": graph has a loop");
}

Encoded semilattice_gadget() {
  // 0 a b c: x ∧ x = x, distinct elements meet at 0.
  const int n = 4;
  std::vector<Element> t(sz(n * n), 0);
  for (int x = 0; x < n; ++x) t[sz(x * n + x)] = x;
  Encoded e;
  e.algebra = FiniteAlgebra(Signature({{"meet", 2}}), n, {t}, {"0", "a", "b", "c"});
  e.legend = Legend{LegendKind::gadget, {dist("0"), dist("a"), dist("b"), dist("c")}};
  return e;
}

}  // namespace

std::string to_string(LegendKind k) { return kLegendKinds[static_cast<std::size_t>(k)]; }
std::string to_string(Role r) { return kRoles[static_cast<std::size_t>(r)]; }

std::optional<LegendKind> parse_legend_kind(const std::string& s) {
  for (std::size_t i = 0; i < kLegendKinds.size(); ++i) {
    if (s == kLegendKinds[i]) return static_cast<LegendKind>(i);
  }
  return std::nullopt;
}

std::optional<Role> parse_role(const std::string& s) {
  for (std::size_t i = 0; i < kRoles.size(); ++i) {
    if (s == kRoles[i]) return static_cast<Role>(i);
  }
  return std::nullopt;
}

std::vector<std::string> validate_legend(const Legend& legend) {
  std::vector<std::string> report;
  for (std::size_t i = 0; i < legend.entries.size(); ++i) {
    const auto& e = legend.entries[i];
    bool ok = false;
    std::size_t params = 0;
    switch (legend.kind) {
      case LegendKind::unary_dagger:
        ok = e.role == Role::vertex || e.role == Role::edge_a || e.role == Role::edge_b;
        params = 2;
        break;
      case LegendKind::magma_star:
        ok = e.role == Role::vertex || e.role == Role::dist;
        params = e.role == Role::vertex ? 2 : 0;
        break;
      case LegendKind::semigroup:
        ok = e.role == Role::vertex || e.role == Role::chi || e.role == Role::dist;
        params = e.role == Role::vertex ? 1 : (e.role == Role::chi ? 2 : 0);
        break;
      case LegendKind::semilattice:
        ok = e.role == Role::chain || e.role == Role::dist;
        params = e.role == Role::chain ? 1 : 0;
        break;
      case LegendKind::gadget:
        ok = e.role == Role::dist;
        break;
    }
    if (!ok) {
      report.push_back("element " + std::to_string(i) + ": role " + to_string(e.role) + " not allowed in " +
                       to_string(legend.kind));
    } else if (e.params.size() != params) {
      report.push_back("element " + std::to_string(i) + ": expected " + std::to_string(params) + " parameters");
    }
  }
  return report;
}

Encoded encode_unary(const Graph& g, bool theorem_grade) {
  if (!g.loop_free()) throw Error("encode_unary: graph has a loop");
  if (theorem_grade) {
    const auto report = validate_graph(g, GraphRequirements{true, true, 2});
    if (!report.empty()) throw Error("encode_unary: " + report.front());
  }
  const int n = g.order();
  const ArcLayout layout(g);
  const int size = 2 * n + 2 * static_cast<int>(layout.arcs.size());
  std::vector<Element> f(sz(size)), gg(sz(size));
  std::vector<std::string> labels(sz(size));
  Legend legend{LegendKind::unary_dagger, std::vector<LegendEntry>(sz(size))};

  for (int v = 0; v < n; ++v) {
    const int v1 = 2 * v, v2 = 2 * v + 1;
    f[sz(v1)] = v1;
    f[sz(v2)] = v1;
    gg[sz(v1)] = v2;
    gg[sz(v2)] = v2;
    labels[sz(v1)] = "v" + std::to_string(v) + "_1";
    labels[sz(v2)] = "v" + std::to_string(v) + "_2";
    legend.entries[sz(v1)] = LegendEntry{Role::vertex, {}, {v, 1}};
    legend.entries[sz(v2)] = LegendEntry{Role::vertex, {}, {v, 2}};
  }
  for (std::size_t i = 0; i < layout.arcs.size(); ++i) {
    const auto [u, v] = layout.arcs[i];
    const int a = layout.a(static_cast<int>(i)), b = layout.b(static_cast<int>(i));
    f[sz(a)] = 2 * u;
    f[sz(b)] = 2 * v + 1;
    gg[sz(a)] = b;
    gg[sz(b)] = a;
    const std::string suffix = "_" + std::to_string(u) + "_" + std::to_string(v);
    labels[sz(a)] = "a" + suffix;
    labels[sz(b)] = "b" + suffix;
    legend.entries[sz(a)] = LegendEntry{Role::edge_a, {}, {u, v}};
    legend.entries[sz(b)] = LegendEntry{Role::edge_b, {}, {u, v}};
  }
  return Encoded{FiniteAlgebra(Signature({{"f", 1}, {"g", 1}}), size, {f, gg}, labels), legend};
}

Encoded encode_magma(const Graph& g) {
  require_undirected(g, "encode_magma");
  const int n = g.order();
  if (n < 2) throw Error("encode_magma: graph needs at least two vertices");
  const int size = 2 * n + 4;
  enum { A = 0, B = 1, C = 2, D = 3 };
  // Products among a, b, c, d.
  constexpr int kDist[4][4] = {{B, A, A, A}, {A, C, A, A}, {A, A, D, A}, {A, A, A, A}};
  auto copy = [](int v, int i) { return 4 + 2 * v + (i - 1); };

  std::vector<Element> t(sz(size * size));
  auto set = [&](int x, int y, int r) { t[sz(x * size + y)] = r; };
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) set(x, y, kDist[x][y]);
  }
  for (int w = 4; w < size; ++w) {
    for (int x = 0; x < 4; ++x) {
      set(x, w, w);
      set(w, x, w);
    }
  }
  for (int u = 0; u < n; ++u) {
    set(copy(u, 1), copy(u, 1), D);
    set(copy(u, 1), copy(u, 2), C);
    set(copy(u, 2), copy(u, 1), C);
    set(copy(u, 2), copy(u, 2), D);
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      set(copy(u, 1), copy(v, 1), g.has_edge(u, v) ? A : D);
      set(copy(u, 1), copy(v, 2), D);
      set(copy(u, 2), copy(v, 1), D);
      set(copy(u, 2), copy(v, 2), B);
    }
  }

  std::vector<std::string> labels = {"a", "b", "c", "d"};
  Legend legend{LegendKind::magma_star, {dist("a"), dist("b"), dist("c"), dist("d")}};
  for (int v = 0; v < n; ++v) {
    for (int i = 1; i <= 2; ++i) {
      labels.push_back("v" + std::to_string(v) + "_" + std::to_string(i));
      legend.entries.push_back(LegendEntry{Role::vertex, {}, {v, i}});
    }
  }
  return Encoded{FiniteAlgebra(Signature({{"mul", 2}}), size, {t}, labels), legend};
}

Encoded encode_semigroup(const Graph& g) {
  require_undirected(g, "encode_semigroup");
  const SemigroupLayout L(g);
  const int n = L.n, size = L.size;
  std::vector<Element> t(sz(size * size), SemigroupLayout::zero);
  auto set = [&](int x, int y, int r) { t[sz(x * size + y)] = r; };
  set(L.b, L.b, L.b2);
  for (int u = 0; u < n; ++u) {
    set(L.b, L.vertex(u), L.c);
    set(L.vertex(u), L.b, L.c);
    for (int v = 0; v < n; ++v) set(L.vertex(u), L.vertex(v), g.has_edge(u, v) ? L.c : L.chi_of(u, v));
  }

  std::vector<std::string> labels = {"0", "b", "b2", "c"};
  Legend legend{LegendKind::semigroup, {dist("0"), dist("b"), dist("b2"), dist("c")}};
  for (int v = 0; v < n; ++v) {
    labels.push_back("v" + std::to_string(v));
    legend.entries.push_back(LegendEntry{Role::vertex, {}, {v}});
  }
  for (const auto& [u, v] : L.chi_pairs) {
    labels.push_back("chi_" + std::to_string(u) + "_" + std::to_string(v));
    legend.entries.push_back(LegendEntry{Role::chi, {}, {u, v}});
  }
  return Encoded{FiniteAlgebra(Signature({{"mul", 2}}), size, {t}, labels), legend};
}

Gadgets make_gadgets() {
  Gadgets out;
  {
    // 0 a b b2 c
    const int n = 5;
    std::vector<Element> t(sz(n * n), 0);
    t[1 * n + 1] = 4;
    t[1 * n + 2] = 4;
    t[2 * n + 1] = 4;
    t[2 * n + 2] = 3;
    out.z.algebra = FiniteAlgebra(Signature({{"mul", 2}}), n, {t}, {"0", "a", "b", "b2", "c"});
    out.z.legend = Legend{LegendKind::gadget, {dist("0"), dist("a"), dist("b"), dist("b2"), dist("c")}};
  }
  {
    // 0 a a2 b b2 c
    const int n = 6;
    std::vector<Element> t(sz(n * n), 0);
    t[1 * n + 1] = 2;
    t[1 * n + 3] = 5;
    t[3 * n + 1] = 5;
    t[3 * n + 3] = 4;
    out.z_prime.algebra = FiniteAlgebra(Signature({{"mul", 2}}), n, {t}, {"0", "a", "a2", "b", "b2", "c"});
    out.z_prime.legend =
        Legend{LegendKind::gadget, {dist("0"), dist("a"), dist("a2"), dist("b"), dist("b2"), dist("c")}};
  }
  out.semilattice_z = semilattice_gadget();
  out.x2.algebra = FiniteAlgebra(Signature({{"f", 1}, {"g", 1}}), 2, {{0, 0}, {1, 1}}, {"v1", "v2"});
  out.x2.legend = Legend{LegendKind::gadget, {dist("v1"), dist("v2")}};
  return out;
}

FiniteAlgebra lift_nary(const FiniteAlgebra& s, int n) {
  if (s.signature().size() != 1 || s.signature()[0].arity != 2) {
    throw Error("lift_nary: algebra must have exactly one binary operation");
  }
  if (n < 3) throw Error("lift_nary: arity must be at least 3");
  std::vector<Element> t;
  for_each_tuple(s.size(), n, [&](std::span<const Element> args) { t.push_back(s.apply(0, args[0], args[1])); });
  return FiniteAlgebra(Signature({{"t", n}}), s.size(), {t}, s.labels());
}

SemilatticeFamily make_semilattice_X(int n) {
  if (n < 1) throw Error("make_semilattice_X: n must be positive");
  const int size = 4 * n + 1;
  auto a = [](int i) { return i - 1; };
  auto c = [n](int i) { return n + i - 1; };
  auto chain = [n](int rank) { return 2 * n + rank; };  // rank 0 = vc1, 1 = va1, 2 = vc2, ...
  const int b = 4 * n;

  // below[x] = the down-set of x.
  std::vector<std::vector<char>> below(sz(size), std::vector<char>(sz(size), 0));
  for (int r = 0; r < 2 * n; ++r) {
    for (int q = 0; q <= r; ++q) below[sz(chain(r))][sz(chain(q))] = 1;
  }
  for (int i = 1; i <= n; ++i) {
    for (int q = 0; q <= 2 * (i - 1) + 1; ++q) below[sz(a(i))][sz(chain(q))] = 1;
    for (int q = 0; q <= 2 * (i - 1); ++q) below[sz(c(i))][sz(chain(q))] = 1;
    for (int j = 1; j <= i; ++j) {
      below[sz(a(i))][sz(a(j))] = 1;
      below[sz(c(i))][sz(c(j))] = 1;
    }
  }
  for (int q = 0; q < 2 * n; ++q) below[sz(b)][sz(chain(q))] = 1;
  below[sz(b)][sz(b)] = 1;

  std::vector<Element> t(sz(size * size));
  for (int x = 0; x < size; ++x) {
    for (int y = 0; y < size; ++y) {
      int meet = -1;
      for (int z = 0; z < size && meet < 0; ++z) {
        if (!below[sz(x)][sz(z)] || !below[sz(y)][sz(z)]) continue;
        bool greatest = true;
        for (int w = 0; w < size && greatest; ++w) {
          if (below[sz(x)][sz(w)] && below[sz(y)][sz(w)] && !below[sz(z)][sz(w)]) greatest = false;
        }
        if (greatest) meet = z;
      }
      if (meet < 0) throw Error("make_semilattice_X: order has no meet");
      t[sz(x * size + y)] = meet;
    }
  }

  std::vector<std::string> labels(sz(size));
  Legend legend{LegendKind::semilattice, std::vector<LegendEntry>(sz(size))};
  std::vector<Element> f(sz(size));
  for (int i = 1; i <= n; ++i) {
    const std::string k = std::to_string(i);
    labels[sz(a(i))] = "a" + k;
    labels[sz(c(i))] = "c" + k;
    labels[sz(chain(2 * (i - 1)))] = "vc" + k;
    labels[sz(chain(2 * (i - 1) + 1))] = "va" + k;
    legend.entries[sz(a(i))] = LegendEntry{Role::chain, "a", {i}};
    legend.entries[sz(c(i))] = LegendEntry{Role::chain, "c", {i}};
    legend.entries[sz(chain(2 * (i - 1)))] = LegendEntry{Role::chain, "vc", {i}};
    legend.entries[sz(chain(2 * (i - 1) + 1))] = LegendEntry{Role::chain, "va", {i}};
    f[sz(a(i))] = 1;
    f[sz(c(i))] = 3;
  }
  labels[sz(b)] = "b";
  legend.entries[sz(b)] = dist("b");
  f[sz(b)] = 2;

  SemilatticeFamily out;
  out.x = Encoded{FiniteAlgebra(Signature({{"meet", 2}}), size, {t}, labels), legend};
  out.z = semilattice_gadget().algebra;
  out.f = Mapping(4, f);
  return out;
}

namespace {

// 0 -> 0, b -> b, b2 -> b2, vertices -> a, everything else -> c (Z order 0 a b b2 c).
Mapping semigroup_to_z(const Graph& g) {
  const SemigroupLayout L(g);
  std::vector<Element> v(sz(L.size), 4);
  v[sz(L.zero)] = 0;
  v[sz(L.b)] = 2;
  v[sz(L.b2)] = 3;
  for (int u = 0; u < L.n; ++u) v[sz(L.vertex(u))] = 1;
  return Mapping(5, v);
}

}  // namespace

FCoreInstance make_fcore_instance(const Graph& g) {
  FCoreInstance out;
  out.x = encode_semigroup(g);
  out.z = make_gadgets().z.algebra;
  out.f = semigroup_to_z(g);
  return out;
}

FactorizationInstance make_rf_instance(const Graph& g, const Graph& h) {
  FactorizationInstance inst;
  inst.kind = ProblemKind::right_factor;
  inst.x = encode_semigroup(g).algebra;
  inst.y = encode_semigroup(h).algebra;
  inst.z = make_gadgets().z.algebra;
  inst.f = semigroup_to_z(g);
  inst.h = semigroup_to_z(h);
  return inst;
}

FactorizationInstance make_lf_instance(const Graph& g, const Graph& h) {
  for (const Graph* gr : {&g, &h}) {
    require_undirected(*gr, "make_lf_instance");
    const auto report = validate_graph(*gr, GraphRequirements{true, true, 2});
    if (!report.empty()) throw Error("make_lf_instance: " + report.front());
  }
  const Graph gw = g.with_isolated_vertex();
  const Graph hw = h.with_isolated_vertex();
  const SemigroupLayout LG(gw), LH(hw);

  // Z' order: 0 a a2 b b2 c.
  auto from_z_prime = [](const SemigroupLayout& L, int w) {
    return Mapping(L.size, {L.zero, L.vertex(w), L.chi_of(w, w), L.b, L.b2, L.c});
  };
  FactorizationInstance inst;
  inst.kind = ProblemKind::left_factor;
  inst.x = make_gadgets().z_prime.algebra;
  inst.y = encode_semigroup(hw).algebra;
  inst.z = encode_semigroup(gw).algebra;
  inst.f = from_z_prime(LG, g.order());
  inst.g = from_z_prime(LH, h.order());
  return inst;
}

FactorizationInstance make_unary_lf_instance(const Graph& h, const Graph& j) {
  for (const Graph* gr : {&h, &j}) {
    if (!gr->directed()) throw Error("make_unary_lf_instance: graphs must be directed");
    const auto report = validate_graph(*gr, GraphRequirements{true, true, 2});
    if (!report.empty()) throw Error("make_unary_lf_instance: " + report.front());
  }
  FactorizationInstance inst;
  inst.kind = ProblemKind::left_factor;
  inst.x = make_gadgets().x2.algebra;
  inst.y = encode_unary(h.with_isolated_vertex()).algebra;
  inst.z = encode_unary(j.with_isolated_vertex()).algebra;
  // v1 -> v'_1, v2 -> v'_2; v' is the last vertex, so its copies sit at 2n, 2n+1.
  inst.f = Mapping(inst.z->size(), {2 * j.order(), 2 * j.order() + 1});
  inst.g = Mapping(inst.y.size(), {2 * h.order(), 2 * h.order() + 1});
  return inst;
}

VertexMap decode_hom(const Mapping& psi, const Encoded& a, const Encoded& b) {
  const LegendKind kind = a.legend.kind;
  if (kind != b.legend.kind) throw Error("decode_hom: legend kinds differ");
  if (kind != LegendKind::unary_dagger && kind != LegendKind::magma_star && kind != LegendKind::semigroup) {
    throw Error("decode_hom: legend kind " + to_string(kind) + " does not encode a graph");
  }
  if (psi.dom_size() != a.algebra.size() || psi.cod_size() != b.algebra.size()) {
    throw Error("decode_hom: mapping has wrong size");
  }
  if (!is_homomorphism(psi, a.algebra, b.algebra)) throw Error("decode_hom: mapping is not a homomorphism");

  std::map<int, int> phi;
  for (Element x = 0; x < a.algebra.size(); ++x) {
    const auto& src = a.legend.entries[sz(x)];
    if (src.role != Role::vertex) continue;
    const auto& dst = b.legend.entries[sz(psi(x))];
    if (dst.role != Role::vertex) {
      throw Error("decode_hom: vertex element " + a.algebra.label(x) + " maps to non-vertex " +
                  b.algebra.label(psi(x)));
    }
    if (src.params.size() == 2 && dst.params[1] != src.params[1]) {
      throw Error("decode_hom: copy index not preserved at " + a.algebra.label(x));
    }
    const auto [it, fresh] = phi.emplace(src.params[0], dst.params[0]);
    if (!fresh && it->second != dst.params[0]) {
      throw Error("decode_hom: copies of vertex " + std::to_string(src.params[0]) + " disagree");
    }
  }
  VertexMap out(phi.size());
  for (const auto& [v, w] : phi) out[sz(v)] = w;
  return out;
}

Mapping induced_hom(const VertexMap& phi, const Graph& g, const Graph& h, LegendKind kind) {
  if (static_cast<int>(phi.size()) != g.order()) throw Error("induced_hom: vertex map has wrong size");
  auto p = [&](int v) { return phi[sz(v)]; };
  switch (kind) {
    case LegendKind::unary_dagger: {
      if (!is_graph_hom(phi, g, h)) throw Error("induced_hom: not a graph homomorphism");
      const ArcLayout LG(g), LH(h);
      std::vector<Element> v(sz(2 * g.order() + 2 * static_cast<int>(LG.arcs.size())));
      for (int u = 0; u < g.order(); ++u) {
        v[sz(2 * u)] = 2 * p(u);
        v[sz(2 * u + 1)] = 2 * p(u) + 1;
      }
      for (std::size_t i = 0; i < LG.arcs.size(); ++i) {
        const int arc = LH.at(p(LG.arcs[i].first), p(LG.arcs[i].second));
        v[sz(LG.a(static_cast<int>(i)))] = LH.a(arc);
        v[sz(LG.b(static_cast<int>(i)))] = LH.b(arc);
      }
      return Mapping(2 * h.order() + 2 * static_cast<int>(LH.arcs.size()), v);
    }
    case LegendKind::magma_star: {
      // A non-injective map would send u1·v2 = d to u1·u2 = c.
      if (!is_strong_graph_hom(phi, g, h) || std::set<int>(phi.begin(), phi.end()).size() != phi.size()) {
        throw Error("induced_hom: not an injective strong graph homomorphism");
      }
      std::vector<Element> v = {0, 1, 2, 3};
      for (int u = 0; u < g.order(); ++u) {
        v.push_back(4 + 2 * p(u));
        v.push_back(5 + 2 * p(u));
      }
      return Mapping(2 * h.order() + 4, v);
    }
    case LegendKind::semigroup: {
      if (!is_graph_hom(phi, g, h)) throw Error("induced_hom: not a graph homomorphism");
      const SemigroupLayout LG(g), LH(h);
      std::vector<Element> v(sz(LG.size));
      for (int x : {LG.zero, LG.b, LG.b2, LG.c}) v[sz(x)] = x;
      for (int u = 0; u < g.order(); ++u) v[sz(LG.vertex(u))] = LH.vertex(p(u));
      for (const auto& [s, t] : LG.chi_pairs) {
        const int ps = p(s), pt = p(t);
        v[sz(LG.chi_of(s, t))] = h.has_edge(ps, pt) ? LH.c : LH.chi_of(ps, pt);
      }
      return Mapping(LH.size, v);
    }
    default: throw Error("induced_hom: legend kind " + to_string(kind) + " does not encode a graph");
  }
}

}  // namespace hfact
