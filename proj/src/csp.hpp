#pragma once

// Internal constraint engine shared by the solver and the f-core search.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hfact/algebra.hpp"
#include "hfact/solver.hpp"

namespace hfact::detail {

class Csp {
 public:
  /// Adds one variable per element of `src`, each ranging over `dst`.
  /// Both algebras must outlive the Csp and share a signature.
  int add_block(const FiniteAlgebra& src, const FiniteAlgebra& dst);

  /// Domain of element x of block b becomes dom ∩ allowed.
  void restrict(int block, Element x, const std::vector<Element>& allowed);
  void fix(int block, Element x, Element value) { restrict(block, x, {value}); }
  void forbid(int block, Element x, Element value);

  /// h[g[x]] == target[x] for every x of block g.
  void add_channel(int g_block, int h_block, std::vector<Element> target);
  /// r[r[x]] == r[x].
  void add_idempotent(int block);
  void add_injective(int block);

  struct Stats {
    std::uint64_t nodes = 0;
    bool aborted = false;
  };

  /// Calls on_solution(values of block 0, values of block 1, ...) for each
  /// solution until it returns true. Lexicographic order forces the first
  /// variable with a non-singleton domain to be branched on, so solutions
  /// arrive in lexicographic order of the concatenated assignment.
  Stats solve(const SearchConfig& cfg,
              const std::function<bool(const std::vector<std::vector<Element>>&)>& on_solution) const;

 private:
  struct TupleRef {
    int op;
    std::uint32_t tuple;
  };
  struct Block {
    const FiniteAlgebra* src;
    const FiniteAlgebra* dst;
    int offset = 0;
    std::vector<int> unary_ops;
    std::vector<std::vector<std::vector<Element>>> unary_inverse;  // per unary op, per element
    std::vector<std::vector<TupleRef>> occurrences;                // per element, k >= 2 tuples
    bool idempotent = false;
    bool injective = false;
  };
  struct Channel {
    int g_block;
    int h_block;
    std::vector<Element> target;
  };

  friend class Propagation;

  std::vector<Block> blocks_;
  std::vector<Channel> channels_;
  std::vector<int> var_block_;
  std::vector<std::vector<Element>> restrictions_;  // per variable; empty = unrestricted
  std::vector<std::vector<Element>> forbidden_;
  int words_ = 1;
};

}  // namespace hfact::detail
