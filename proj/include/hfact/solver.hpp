#pragma once

// Backtracking search with constraint propagation deciding the homomorphism
// factorization variants over finite algebras.
//
// Variables are the elements of each source algebra; the value of variable x
// is its image. Propagation:
//   * unary operations are kept arc consistent in both directions;
//   * for an operation tuple whose arguments are all assigned, the result
//     variable collapses to the single consistent value; with exactly one
//     unassigned argument, that argument is filtered against the result;
//   * composition constraints h(g(x)) = f(x) and idempotence r(r(x)) = r(x)
//     are propagated on assignment and on removal;
//   * injectivity removes an assigned value from the other variables.
// "unknown" (node limit reached) is never reported as "no".

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hfact/algebra.hpp"

namespace hfact {

enum class VariableOrder { mrv, lexicographic };
enum class FactorStrategy { combined, enumerate_left };

struct SearchConfig {
  VariableOrder order = VariableOrder::mrv;
  std::optional<std::uint64_t> node_limit;
  std::size_t witness_limit = 1;
  /// full-factor only: one joint search, or enumerate h then solve for g.
  FactorStrategy strategy = FactorStrategy::combined;
};

enum class Outcome { yes, no, unknown };

std::string to_string(Outcome o);

struct SolveResult {
  Outcome outcome = Outcome::no;
  std::optional<Mapping> g;  // X -> Y
  std::optional<Mapping> h;  // Y -> Z
  std::uint64_t nodes = 0;

  [[nodiscard]] bool found() const noexcept { return outcome == Outcome::yes; }
};

enum class ProblemKind { hom, right_factor, left_factor, full_factor, retraction, isomorphism };

std::string to_string(ProblemKind k);
std::optional<ProblemKind> parse_problem_kind(const std::string& s);

/// One decision problem over X, Y, Z with the given maps. Which maps are
/// present depends on the kind:
///   hom          X, Y              -> find g
///   right_factor X, Y, Z, f, h     -> find g with h∘g = f
///   left_factor  X, Y, Z, f, g     -> find h with h∘g = f
///   full_factor  X, Y, Z, f        -> find g, h with h∘g = f
///   retraction   X, Y (Z = X, f = id) -> find g, h with h∘g = id_X
///   isomorphism  X, Y              -> find bijective g
struct FactorizationInstance {
  ProblemKind kind = ProblemKind::hom;
  FiniteAlgebra x;
  FiniteAlgebra y;
  std::optional<FiniteAlgebra> z;
  std::optional<Mapping> f;
  std::optional<Mapping> g;
  std::optional<Mapping> h;
};

FactorizationInstance make_retraction_instance(const FiniteAlgebra& x, const FiniteAlgebra& y);

/// Every problem with the instance; empty iff it is well-formed.
std::vector<std::string> validate_instance(const FactorizationInstance& inst);

/// Checks a candidate answer: supplied unknowns must be homomorphisms and the
/// kind's composition identity must hold. Throws Error on size mismatches.
bool verify_witness(const FactorizationInstance& inst, const std::optional<Mapping>& g,
                    const std::optional<Mapping>& h);

SolveResult find_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const SearchConfig& cfg = {});
SolveResult find_right_factor(const FactorizationInstance& inst, const SearchConfig& cfg = {});
SolveResult find_left_factor(const FactorizationInstance& inst, const SearchConfig& cfg = {});
SolveResult find_factorization(const FactorizationInstance& inst, const SearchConfig& cfg = {});
SolveResult decide_retraction(const FiniteAlgebra& x, const FiniteAlgebra& y, const SearchConfig& cfg = {});
SolveResult decide_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const SearchConfig& cfg = {});

/// Dispatches on inst.kind. Throws Error when the instance is invalid.
SolveResult solve(const FactorizationInstance& inst, const SearchConfig& cfg = {});

/// Distinct homomorphisms a -> b in lexicographic order, at most `limit`.
std::vector<Mapping> enumerate_homomorphisms(const FiniteAlgebra& a, const FiniteAlgebra& b, std::size_t limit);

/// Searches for an idempotent endomorphism r of x with f∘r = f and r != id.
/// Candidates moving the smallest element are preferred (x = 0, 1, ... in turn).
SolveResult find_nontrivial_retraction(const FiniteAlgebra& x, const Mapping& f, const SearchConfig& cfg = {});

}  // namespace hfact
