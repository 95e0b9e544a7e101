#pragma once

// Finite algebras presented by dense operation tables, and the mapping-level
// primitives every other module is built on.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hfact {

using Element = int;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OpSymbol {
  std::string name;
  int arity = 0;

  bool operator==(const OpSymbol&) const = default;
};

/// Ordered list of operation symbols shared by every algebra of a problem.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<OpSymbol> ops) : ops_(std::move(ops)) {}

  [[nodiscard]] const std::vector<OpSymbol>& ops() const noexcept { return ops_; }
  [[nodiscard]] std::size_t size() const noexcept { return ops_.size(); }
  [[nodiscard]] const OpSymbol& operator[](std::size_t i) const { return ops_[i]; }
  [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;

  /// At least one operation of arity >= 2, or at least two unary operations.
  [[nodiscard]] bool is_rich() const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<OpSymbol> ops_;
};

/// Carrier {0..n-1}; the table for an operation of arity k holds n^k entries
/// in lexicographic argument order (first argument most significant).
///
/// Construction does not validate; use validate_algebra() on untrusted input.
class FiniteAlgebra {
 public:
  FiniteAlgebra() = default;
  FiniteAlgebra(Signature signature, int size, std::vector<std::vector<Element>> tables,
                std::vector<std::string> labels = {});

  [[nodiscard]] const Signature& signature() const noexcept { return signature_; }
  [[nodiscard]] int size() const noexcept { return size_; }
  [[nodiscard]] const std::vector<Element>& table(std::size_t op) const { return tables_[op]; }
  [[nodiscard]] const std::vector<std::vector<Element>>& tables() const noexcept { return tables_; }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] std::string label(Element x) const;
  [[nodiscard]] std::optional<std::size_t> find_op(std::string_view name) const {
    return signature_.find(name);
  }

  [[nodiscard]] std::size_t tuple_index(std::span<const Element> args) const;
  [[nodiscard]] Element apply(std::size_t op, std::span<const Element> args) const {
    return tables_[op][tuple_index(args)];
  }
  [[nodiscard]] Element apply(std::size_t op) const { return tables_[op][0]; }
  [[nodiscard]] Element apply(std::size_t op, Element x) const {
    return tables_[op][static_cast<std::size_t>(x)];
  }
  [[nodiscard]] Element apply(std::size_t op, Element x, Element y) const {
    return tables_[op][static_cast<std::size_t>(x) * static_cast<std::size_t>(size_) +
                       static_cast<std::size_t>(y)];
  }

  /// Structural equality: same signature, size and tables. Labels are ignored.
  [[nodiscard]] bool same_structure(const FiniteAlgebra& other) const;

 private:
  Signature signature_;
  int size_ = 0;
  std::vector<std::vector<Element>> tables_;
  std::vector<std::string> labels_;
};

/// Total function {0..dom-1} -> {0..cod-1}.
class Mapping {
 public:
  Mapping() = default;
  /// Throws Error when a value falls outside [0, cod).
  Mapping(int cod_size, std::vector<Element> values);

  static Mapping identity(int n);
  static Mapping constant(int dom, int cod, Element value);

  [[nodiscard]] int dom_size() const noexcept { return static_cast<int>(values_.size()); }
  [[nodiscard]] int cod_size() const noexcept { return cod_; }
  [[nodiscard]] const std::vector<Element>& values() const noexcept { return values_; }
  [[nodiscard]] Element operator()(Element x) const { return values_[static_cast<std::size_t>(x)]; }

  [[nodiscard]] bool is_injective() const;
  [[nodiscard]] bool is_surjective() const;
  [[nodiscard]] bool is_identity() const;
  /// Distinct values in increasing order.
  [[nodiscard]] std::vector<Element> image() const;

  bool operator==(const Mapping&) const = default;

 private:
  int cod_ = 0;
  std::vector<Element> values_;
};

/// Every violated FiniteAlgebra invariant, one message each. Empty iff well-formed.
std::vector<std::string> validate_algebra(const FiniteAlgebra& alg);

/// Calls visit(args) for every argument tuple of the given arity, in
/// lexicographic order. The span is only valid during the call.
template <typename Visit>
void for_each_tuple(int n, int arity, Visit&& visit) {
  std::vector<Element> args(static_cast<std::size_t>(arity), 0);
  if (arity > 0 && n == 0) return;
  while (true) {
    visit(std::span<const Element>(args));
    int pos = arity - 1;
    while (pos >= 0 && ++args[static_cast<std::size_t>(pos)] == n) {
      args[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return;
  }
}

/// m(op_A(x...)) == op_B(m(x)...) for every operation and tuple.
/// Throws Error on signature or size mismatch.
bool is_homomorphism(const Mapping& m, const FiniteAlgebra& a, const FiniteAlgebra& b);

/// outer ∘ inner. Throws Error when inner.cod_size != outer.dom_size.
Mapping compose(const Mapping& outer, const Mapping& inner);

/// r is an endomorphism of x with r∘r = r and f∘r = f.
bool is_retraction_respecting(const Mapping& r, const FiniteAlgebra& x, const Mapping& f);

struct Subalgebra {
  FiniteAlgebra algebra;
  std::vector<Element> old_to_new;  // -1 for elements outside the subset
  std::vector<Element> new_to_old;

  /// Inclusion of the subalgebra into the parent.
  [[nodiscard]] Mapping inclusion(int parent_size) const {
    return Mapping(parent_size, new_to_old);
  }
};

class ClosureError : public Error {
 public:
  ClosureError(std::string op, std::vector<Element> args, Element result);
  [[nodiscard]] const std::string& op() const noexcept { return op_; }
  [[nodiscard]] const std::vector<Element>& args() const noexcept { return args_; }
  [[nodiscard]] Element result() const noexcept { return result_; }

 private:
  std::string op_;
  std::vector<Element> args_;
  Element result_;
};

/// Restricts every table to `subset` (re-indexed in increasing order).
/// Throws ClosureError naming the first operation and tuple leaving the subset.
Subalgebra induced_subalgebra(const FiniteAlgebra& a, std::span<const Element> subset);

struct PropertyReport {
  bool associative = false;
  bool commutative = false;
  bool idempotent = false;
  bool meet_semilattice = false;
};

/// Exhaustive equational checks of a named binary operation.
PropertyReport check_properties(const FiniteAlgebra& a, std::string_view op_name);

/// The algebra induced on im(f) by transporting X's operations along f,
/// together with f re-targeted onto it. Empty when ker f is not a congruence
/// of X (so f cannot be a homomorphism into anything).
struct ImageAlgebra {
  FiniteAlgebra algebra;
  Mapping onto;                    // X -> image, surjective
  std::vector<Element> image_to_cod;  // image element -> original codomain value
};
std::optional<ImageAlgebra> image_algebra(const FiniteAlgebra& x, const Mapping& f);

/// Restriction of f to the listed domain elements.
Mapping restrict_domain(const Mapping& f, std::span<const Element> elements);

}  // namespace hfact
