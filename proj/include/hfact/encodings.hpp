#pragma once

// Graph-to-algebra constructions, the fixed gadget algebras, reduction
// instance builders and decoders back to graph maps.
//
// Element orders are fixed so that files and witnesses are reproducible:
//   unary    v0_1 v0_2 v1_1 v1_2 ... then a_u_v b_u_v per arc, arcs in lexicographic order
//   magma    a b c d, then v0_1 v0_2 v1_1 ...
//   semigroup 0 b b2 c, vertices, chi_v_v per vertex, chi_u_v for non-adjacent u < v

#include <optional>
#include <string>
#include <vector>

#include "hfact/algebra.hpp"
#include "hfact/graph.hpp"
#include "hfact/solver.hpp"

namespace hfact {

enum class LegendKind { unary_dagger, magma_star, semigroup, semilattice, gadget };
enum class Role { vertex, edge_a, edge_b, chi, dist, chain };

std::string to_string(LegendKind k);
std::string to_string(Role r);
std::optional<LegendKind> parse_legend_kind(const std::string& s);
std::optional<Role> parse_role(const std::string& s);

/// What one algebra element stands for.
///   vertex  params {v} (semigroup) or {v, copy} (unary, magma)
///   edge_a, edge_b, chi  params {u, v}
///   dist    name in {0, a, a2, b, b2, c, d, w}
///   chain   name in {a, c, va, vc}, params {i}
struct LegendEntry {
  Role role = Role::dist;
  std::string name;
  std::vector<int> params;

  bool operator==(const LegendEntry&) const = default;
};

struct Legend {
  LegendKind kind = LegendKind::gadget;
  std::vector<LegendEntry> entries;

  bool operator==(const Legend&) const = default;
};

/// Empty iff every entry's role is allowed for the legend's kind.
std::vector<std::string> validate_legend(const Legend& legend);

struct Encoded {
  FiniteAlgebra algebra;
  Legend legend;
};

/// Two unary operations f, g. Undirected input is read as its symmetric
/// digraph. With `theorem_grade`, connectivity and at least two vertices are
/// required as well. Throws Error on loops.
Encoded encode_unary(const Graph& g, bool theorem_grade = false);

/// One non-associative binary operation. Undirected, loop-free, n >= 2.
Encoded encode_magma(const Graph& g);

/// The commutative semigroup X_G. Undirected and loop-free.
Encoded encode_semigroup(const Graph& g);

struct Gadgets {
  Encoded z;             // 0 a b b2 c
  Encoded z_prime;       // 0 a a2 b b2 c
  Encoded semilattice_z; // 0 a b c under meet
  Encoded x2;            // v1 v2 with unary f, g
};

Gadgets make_gadgets();

/// Single n-ary operation t(x1, ..., xn) = x1 · x2 over the sole binary
/// operation of s. Requires n >= 3.
FiniteAlgebra lift_nary(const FiniteAlgebra& s, int n);

struct SemilatticeFamily {
  Encoded x;
  FiniteAlgebra z;  // the four-element semilattice gadget
  Mapping f;
};

/// The expanded semilattice X_n: chains a1..an, c1..cn, the 2n-element chain
/// vc1 < va1 < vc2 < ... < van, and b above the whole V chain. Meets are
/// greatest common lower bounds in that order.
SemilatticeFamily make_semilattice_X(int n);

struct FCoreInstance {
  Encoded x;
  FiniteAlgebra z;
  Mapping f;
};

/// X_G over the gadget Z: 0, b, b2 fixed, vertices to a, everything else to c.
FCoreInstance make_fcore_instance(const Graph& g);

/// Right-factor instance X = X_G, Y = Y_H over Z. Solvable iff G -> H.
FactorizationInstance make_rf_instance(const Graph& g, const Graph& h);

/// Left-factor instance with X = Z', Y = Y_{H+w}, Z = X_{G+w}; the unknown h
/// goes Y -> Z. Solvable iff H -> G. Both graphs connected, n >= 2.
FactorizationInstance make_lf_instance(const Graph& g, const Graph& h);

/// Left-factor instance over the two-element unary algebra with
/// Y = (H + v')†, Z = (J + v')†. Solvable iff H† -> J†.
FactorizationInstance make_unary_lf_instance(const Graph& h, const Graph& j);

/// Reads a graph map off an algebra homomorphism between two encodings of the
/// same kind. Throws Error on a kind mismatch, when psi is not a
/// homomorphism, or when a vertex element lands outside the vertex elements.
VertexMap decode_hom(const Mapping& psi, const Encoded& a, const Encoded& b);

/// The algebra homomorphism a graph map induces between two encodings
/// (ordinary hom for unary and semigroup, injective strong hom for magma).
/// Throws Error when phi does not have the required property.
Mapping induced_hom(const VertexMap& phi, const Graph& g, const Graph& h, LegendKind kind);

}  // namespace hfact
