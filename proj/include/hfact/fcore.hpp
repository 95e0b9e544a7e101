#pragma once

// f-cores: minimal images of idempotent endomorphisms r with f∘r = f.
//
// brute_fcore works for any algebra. The specialized procedures use the
// structure of their variety and run in polynomial time; each validates
// variety membership itself. f only needs to be a homomorphism out of X
// (its kernel a congruence); no codomain algebra is required.

#include <optional>
#include <string>
#include <vector>

#include "hfact/algebra.hpp"
#include "hfact/solver.hpp"

namespace hfact {

enum class FCoreMethod { brute, gset, vspace, boolean, abelian };

std::string to_string(FCoreMethod m);
std::optional<FCoreMethod> parse_fcore_method(const std::string& s);

struct FCoreResult {
  Mapping retraction;           // X -> X, idempotent, f∘r = f
  std::vector<Element> image;   // fixed points of the retraction, increasing
  FiniteAlgebra core_algebra;   // induced on `image`
  bool certified_minimal = false;
  FCoreMethod method = FCoreMethod::brute;
  /// False when the specialized construction did not apply; the other
  /// fields then hold the brute-force result.
  bool applicable = true;
  std::string detail;
};

/// Repeatedly removes a non-trivial f-respecting retraction until none is
/// left. With a node limit the result may stop early; certified_minimal is
/// then false. Throws Error when f is not a homomorphism out of x.
FCoreResult brute_fcore(const FiniteAlgebra& x, const Mapping& f, const SearchConfig& cfg = {});

/// No retraction other than the identity respects f. Throws Error if the
/// search hits the node limit.
bool is_fcore(const FiniteAlgebra& x, const Mapping& f, const SearchConfig& cfg = {});

/// Orbit-level search: an orbit may be folded onto another exactly when an
/// equivariant map between them commutes with f.
FCoreResult gset_fcore(const FiniteAlgebra& x, const FiniteAlgebra& group, const Mapping& f);

/// Projection onto a complement of ker f.
FCoreResult vspace_fcore(const FiniteAlgebra& x, const Mapping& f);

/// Atom-level retraction keeping the atoms f does not send to the bottom.
FCoreResult boolean_fcore(const FiniteAlgebra& x, const Mapping& f);

/// r = s∘f for a homomorphic section s of f onto its image. When f does not
/// split, returns applicable = false carrying the brute-force result.
FCoreResult abelian_fcore(const FiniteAlgebra& x, const Mapping& f);

/// Dispatches on method; `group` is required for gset.
FCoreResult compute_fcore(FCoreMethod method, const FiniteAlgebra& x, const Mapping& f,
                          const FiniteAlgebra* group = nullptr, const SearchConfig& cfg = {});

/// Right-factor search through the f-core: check im f ⊆ im h, shrink X to
/// its f-core X' with retraction r, solve for g': X' -> Y, return g = g'∘r.
SolveResult fixed_z_right_factor(const FactorizationInstance& inst, FCoreMethod method,
                                 const FiniteAlgebra* group = nullptr, const SearchConfig& cfg = {});

}  // namespace hfact
