#pragma once

// Presentations of the four varieties with specialized f-core procedures,
// their exhaustive membership checks and small constructors.
//
// Operation names:
//   abelian group   add/2, neg/1, zero/0
//   vector space    add/2, neg/1, zero/0, s0/1 ... s{p-1}/1 (scalar multiplication)
//   Boolean algebra meet/2, join/2, not/1, bot/0, top/0
//   G-set           one unary operation per group element, in the group's element order;
//                   the group itself is an algebra with a single binary "mul"

#include <string>
#include <vector>

#include "hfact/algebra.hpp"

namespace hfact {

/// Each returns every violated axiom; empty iff the algebra is in the variety.
std::vector<std::string> validate_abelian_group(const FiniteAlgebra& a);
std::vector<std::string> validate_vector_space(const FiniteAlgebra& a);
std::vector<std::string> validate_boolean_algebra(const FiniteAlgebra& a);
std::vector<std::string> validate_group(const FiniteAlgebra& group);
std::vector<std::string> validate_gset(const FiniteAlgebra& x, const FiniteAlgebra& group);

/// Field size of a vector space presentation (number of scalar operations).
int vector_space_prime(const FiniteAlgebra& a);

/// Z_{n1} x ... x Z_{nk}; elements are coordinate tuples in lexicographic order.
FiniteAlgebra cyclic_product(const std::vector<int>& orders);

/// F_p^d with coordinate tuples in lexicographic order. p must be prime.
FiniteAlgebra vector_space(int p, int d);

/// Subsets of {0..atoms-1}; element i is the subset with bitmask i.
FiniteAlgebra boolean_algebra(int atoms);

/// Z_m under "mul" (addition mod m).
FiniteAlgebra cyclic_group(int m);

/// Z_m acting by rotation on disjoint cycles of the given lengths, each of
/// which must divide m. Elements are numbered orbit by orbit.
FiniteAlgebra cyclic_gset(int m, const std::vector<int>& orbit_sizes);

/// Orbits of a G-set, each sorted, ordered by least element.
std::vector<std::vector<Element>> gset_orbits(const FiniteAlgebra& x);

}  // namespace hfact
