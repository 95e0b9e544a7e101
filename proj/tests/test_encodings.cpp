#include <doctest.h>

#include "hfact/encodings.hpp"
#include "oracles.hpp"

using namespace hfact;

namespace {

Element mul(const FiniteAlgebra& a, Element x, Element y) { return a.apply(*a.find_op("mul"), x, y); }

std::vector<Graph> undirected(int lo, int hi, bool connected = false) {
  std::vector<Graph> out;
  for (int n = lo; n <= hi; ++n) {
    for (auto& g : graph_catalog(n, false, connected)) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

TEST_CASE("unary encoding follows the operation table") {
  const Graph g(true, 3, {{0, 1}, {2, 1}});
  const auto enc = encode_unary(g, true);
  const auto& a = enc.algebra;
  REQUIRE(a.size() == 2 * 3 + 2 * 2);
  const auto f = *a.find_op("f");
  const auto gg = *a.find_op("g");
  for (int v = 0; v < 3; ++v) {
    CHECK(a.apply(f, 2 * v) == 2 * v);
    CHECK(a.apply(gg, 2 * v) == 2 * v + 1);
    CHECK(a.apply(f, 2 * v + 1) == 2 * v);
    CHECK(a.apply(gg, 2 * v + 1) == 2 * v + 1);
  }
  const auto arcs = g.arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto [u, v] = arcs[i];
    const int ai = 6 + 2 * static_cast<int>(i), bi = ai + 1;
    CHECK(a.apply(f, ai) == 2 * u);
    CHECK(a.apply(gg, ai) == bi);
    CHECK(a.apply(f, bi) == 2 * v + 1);
    CHECK(a.apply(gg, bi) == ai);
    CHECK(enc.legend.entries[static_cast<std::size_t>(ai)].role == Role::edge_a);
    CHECK(enc.legend.entries[static_cast<std::size_t>(bi)].params == std::vector<int>{u, v});
  }
  CHECK(enc.legend.kind == LegendKind::unary_dagger);
  CHECK(validate_legend(enc.legend).empty());
  CHECK(validate_algebra(a).empty());
}

TEST_CASE("unary encoding input checks") {
  CHECK_THROWS_AS(encode_unary(Graph(true, 2, {{0, 0}})), Error);
  CHECK_THROWS_AS(encode_unary(Graph::empty(2, true), true), Error);
  CHECK_THROWS_AS(encode_unary(Graph(true, 1, {}), true), Error);
  CHECK_NOTHROW(encode_unary(Graph::empty(2, true)));
  // undirected input is its symmetric digraph
  CHECK(encode_unary(Graph::path(2)).algebra.size() == 4 + 4);
}

TEST_CASE("magma encoding follows the operation table") {
  const Graph g = Graph::path(3);  // 0-1-2
  const auto enc = encode_magma(g);
  const auto& m = enc.algebra;
  REQUIRE(m.size() == 4 + 6);
  enum { a, b, c, d };
  const int expect_abcd[4][4] = {{b, a, a, a}, {a, c, a, a}, {a, a, d, a}, {a, a, a, a}};
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) CHECK(mul(m, x, y) == expect_abcd[x][y]);
    for (int w = 4; w < m.size(); ++w) {
      CHECK(mul(m, x, w) == w);
      CHECK(mul(m, w, x) == w);
    }
  }
  auto v1 = [](int v) { return 4 + 2 * v; };
  auto v2 = [](int v) { return 5 + 2 * v; };
  for (int u = 0; u < 3; ++u) {
    CHECK(mul(m, v1(u), v1(u)) == d);
    CHECK(mul(m, v1(u), v2(u)) == c);
    CHECK(mul(m, v2(u), v1(u)) == c);
    CHECK(mul(m, v2(u), v2(u)) == d);
    for (int v = 0; v < 3; ++v) {
      if (u == v) continue;
      CHECK(mul(m, v1(u), v1(v)) == (g.has_edge(u, v) ? a : d));
      CHECK(mul(m, v1(u), v2(v)) == d);
      CHECK(mul(m, v2(u), v1(v)) == d);
      CHECK(mul(m, v2(u), v2(v)) == b);
    }
  }
  CHECK(enc.legend.kind == LegendKind::magma_star);
  CHECK_THROWS_AS(encode_magma(Graph(false, 1, {})), Error);
  CHECK_THROWS_AS(encode_magma(Graph(true, 2, {{0, 1}})), Error);
}

TEST_CASE("semigroup encoding follows the operation table") {
  const Graph g = Graph::path(3);
  const auto enc = encode_semigroup(g);
  const auto& s = enc.algebra;
  // 0 b b2 c, 3 vertices, 3 self chi, one non-adjacent pair {0,2}
  REQUIRE(s.size() == 4 + 3 + 3 + 1);
  const int zero = 0, b = 1, c = 3;
  const int b2 = 2;
  CHECK(mul(s, b, b) == b2);
  for (int v = 0; v < 3; ++v) {
    CHECK(mul(s, b, 4 + v) == c);
    CHECK(mul(s, 4 + v, b) == c);
    CHECK(mul(s, 4 + v, 4 + v) == 7 + v);  // chi_(v,v)
  }
  CHECK(mul(s, 4, 5) == c);
  CHECK(mul(s, 5, 6) == c);
  CHECK(mul(s, 4, 6) == 10);
  CHECK(mul(s, 6, 4) == 10);
  for (int x : {zero, b2, c, 7, 8, 9, 10}) {
    for (int y = 0; y < s.size(); ++y) {
      CHECK(mul(s, x, y) == zero);
      CHECK(mul(s, y, x) == zero);
    }
  }
  const auto p = check_properties(s, "mul");
  CHECK(p.associative);
  CHECK(p.commutative);
  CHECK(enc.legend.entries[10].role == Role::chi);
  CHECK(enc.legend.entries[10].params == std::vector<int>{0, 2});
}

TEST_CASE("gadget tables") {
  const auto gd = make_gadgets();
  {
    const auto& z = gd.z.algebra;  // 0 a b b2 c
    REQUIRE(z.size() == 5);
    const int expect[5][5] = {{0, 0, 0, 0, 0}, {0, 4, 4, 0, 0}, {0, 4, 3, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}};
    for (int x = 0; x < 5; ++x) {
      for (int y = 0; y < 5; ++y) CHECK(mul(z, x, y) == expect[x][y]);
    }
    CHECK(check_properties(z, "mul").associative);
  }
  {
    const auto& z = gd.z_prime.algebra;  // 0 a a2 b b2 c
    REQUIRE(z.size() == 6);
    const int expect[6][6] = {{0, 0, 0, 0, 0, 0}, {0, 2, 0, 5, 0, 0}, {0, 0, 0, 0, 0, 0},
                              {0, 5, 0, 4, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}};
    for (int x = 0; x < 6; ++x) {
      for (int y = 0; y < 6; ++y) CHECK(mul(z, x, y) == expect[x][y]);
    }
    CHECK(check_properties(z, "mul").associative);
  }
  {
    const auto& s = gd.semilattice_z.algebra;
    REQUIRE(s.size() == 4);
    CHECK(check_properties(s, "meet").meet_semilattice);
  }
  {
    const auto& x = gd.x2.algebra;
    REQUIRE(x.size() == 2);
    CHECK(x.table(*x.find_op("f")) == std::vector<Element>{0, 0});
    CHECK(x.table(*x.find_op("g")) == std::vector<Element>{1, 1});
  }
}

TEST_CASE("n-ary lift") {
  const auto s = encode_semigroup(Graph::cycle(4)).algebra;
  for (int n : {3, 4}) {
    const auto t = lift_nary(s, n);
    REQUIRE(t.signature().size() == 1);
    CHECK(t.signature()[0].arity == n);
    oracle::for_each_map(n, s.size(), [&](const std::vector<Element>& args) {
      CHECK(t.apply(0, args) == mul(s, args[0], args[1]));
      return true;
    });
  }
  CHECK_THROWS_AS(lift_nary(s, 2), Error);
  CHECK_THROWS_AS(lift_nary(make_gadgets().x2.algebra, 3), Error);
}

TEST_CASE("semilattice family") {
  for (int n = 1; n <= 4; ++n) {
    const auto fam = make_semilattice_X(n);
    const auto& x = fam.x.algebra;
    CHECK(x.size() == 4 * n + 1);
    CHECK(check_properties(x, "meet").meet_semilattice);
    CHECK(is_homomorphism(fam.f, x, fam.z));
    CHECK(fam.z.same_structure(make_gadgets().semilattice_z.algebra));
    CHECK(validate_legend(fam.x.legend).empty());
  }
  CHECK_THROWS_AS(make_semilattice_X(0), Error);
}

TEST_CASE("f-core instances map into Z") {
  for (const auto& g : undirected(1, 4)) {
    const auto inst = make_fcore_instance(g);
    REQUIRE(is_homomorphism(inst.f, inst.x.algebra, inst.z));
    CHECK(inst.f(0) == 0);
    CHECK(inst.f(1) == 2);
    CHECK(inst.f(2) == 3);
    for (int v = 0; v < g.order(); ++v) CHECK(inst.f(4 + v) == 1);
  }
}

TEST_CASE("reduction instances are well formed") {
  const auto gs = undirected(1, 3);
  for (const auto& g : gs) {
    for (const auto& h : gs) {
      const auto rf = make_rf_instance(g, h);
      CHECK(rf.kind == ProblemKind::right_factor);
      CHECK(validate_instance(rf).empty());
    }
  }
  const auto cs = undirected(2, 4, true);
  for (const auto& g : cs) {
    for (const auto& h : cs) {
      const auto lf = make_lf_instance(g, h);
      CHECK(lf.kind == ProblemKind::left_factor);
      CHECK(validate_instance(lf).empty());
    }
  }
  CHECK_THROWS_AS(make_lf_instance(Graph::empty(2), Graph::path(2)), Error);
  const auto ds = graph_catalog(3, true, true);
  for (const auto& h : ds) {
    for (const auto& j : ds) CHECK(validate_instance(make_unary_lf_instance(h, j)).empty());
  }
}

TEST_CASE("induced homomorphisms decode back to the graph map") {
  const auto gs = undirected(2, 4);
  for (const auto& g : gs) {
    for (const auto& h : gs) {
      if (const auto phi = graph_hom(g, h)) {
        for (auto kind : {LegendKind::unary_dagger, LegendKind::semigroup}) {
          const Encoded eg = kind == LegendKind::semigroup ? encode_semigroup(g) : encode_unary(g);
          const Encoded eh = kind == LegendKind::semigroup ? encode_semigroup(h) : encode_unary(h);
          const Mapping psi = induced_hom(*phi, g, h, kind);
          CHECK(is_homomorphism(psi, eg.algebra, eh.algebra));
          CHECK(decode_hom(psi, eg, eh) == *phi);
        }
      }
      if (const auto phi = strong_graph_hom(g, h, true)) {
        const Mapping psi = induced_hom(*phi, g, h, LegendKind::magma_star);
        const auto eg = encode_magma(g), eh = encode_magma(h);
        CHECK(is_homomorphism(psi, eg.algebra, eh.algebra));
        CHECK(decode_hom(psi, eg, eh) == *phi);
      }
    }
  }
  CHECK_THROWS_AS(induced_hom({0, 0}, Graph::path(2), Graph::path(2), LegendKind::semigroup), Error);
  CHECK_THROWS_AS(
      decode_hom(Mapping::identity(8), encode_unary(Graph::path(2)), encode_semigroup(Graph::path(2))), Error);
}

TEST_CASE("legend validation") {
  Legend bad;
  bad.kind = LegendKind::semigroup;
  bad.entries.push_back({Role::edge_a, "", {0, 1}});
  CHECK_FALSE(validate_legend(bad).empty());
  CHECK(parse_legend_kind(to_string(LegendKind::magma_star)) == LegendKind::magma_star);
  CHECK(parse_role(to_string(Role::chain)) == Role::chain);
  CHECK_FALSE(parse_role("nope").has_value());
}
