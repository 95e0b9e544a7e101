#include <doctest.h>

#include <random>

#include "hfact/algebra.hpp"
#include "oracles.hpp"

using namespace hfact;

namespace {

const Signature kBinary({{"mul", 2}});

FiniteAlgebra z_mod(int n) {
  std::vector<Element> t;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) t.push_back((a + b) % n);
  }
  return FiniteAlgebra(kBinary, n, {t});
}

}  // namespace

TEST_CASE("mapping basics") {
  CHECK_THROWS_AS(Mapping(2, {0, 2}), Error);
  CHECK_THROWS_AS(Mapping(2, {-1}), Error);
  const Mapping id = Mapping::identity(3);
  CHECK(id.is_identity());
  CHECK(id.is_injective());
  CHECK(id.is_surjective());
  const Mapping c = Mapping::constant(3, 2, 1);
  CHECK(c.image() == std::vector<Element>{1});
  CHECK_FALSE(c.is_surjective());
  CHECK(compose(c, id) == c);
  CHECK_THROWS_AS(compose(id, c), Error);
  const Mapping m(4, {3, 1, 3, 0});
  CHECK(m.image() == std::vector<Element>{0, 1, 3});
  CHECK(restrict_domain(m, std::vector<Element>{2, 3}).values() == std::vector<Element>{3, 0});
}

TEST_CASE("tuple indexing is first-argument major") {
  const Signature sig({{"t", 3}});
  std::vector<Element> table(27);
  for (int i = 0; i < 27; ++i) table[static_cast<std::size_t>(i)] = i / 9;  // projection onto x
  const FiniteAlgebra a(sig, 3, {table});
  CHECK(a.apply(0, std::vector<Element>{2, 0, 1}) == 2);
  CHECK(a.tuple_index(std::vector<Element>{1, 2, 0}) == 15);
  int count = 0;
  std::vector<Element> last;
  for_each_tuple(3, 3, [&](std::span<const Element> args) {
    ++count;
    last.assign(args.begin(), args.end());
  });
  CHECK(count == 27);
  CHECK(last == std::vector<Element>{2, 2, 2});
  int nullary = 0;
  for_each_tuple(5, 0, [&](std::span<const Element>) { ++nullary; });
  CHECK(nullary == 1);
}

TEST_CASE("validate_algebra reports malformed tables") {
  CHECK(validate_algebra(z_mod(3)).empty());
  CHECK_FALSE(validate_algebra(FiniteAlgebra(kBinary, 2, {{0, 1, 1}})).empty());
  CHECK_FALSE(validate_algebra(FiniteAlgebra(kBinary, 2, {{0, 1, 1, 2}})).empty());
  CHECK_FALSE(validate_algebra(FiniteAlgebra(kBinary, 2, {})).empty());
  CHECK_FALSE(validate_algebra(FiniteAlgebra(Signature({{"u", 1}, {"u", 1}}), 1, {{0}, {0}})).empty());
  CHECK_FALSE(validate_algebra(FiniteAlgebra(kBinary, 2, {{0, 1, 1, 0}}, {"x"})).empty());
}

TEST_CASE("signature richness") {
  CHECK(kBinary.is_rich());
  CHECK(Signature({{"f", 1}, {"g", 1}}).is_rich());
  CHECK_FALSE(Signature({{"f", 1}, {"e", 0}}).is_rich());
  CHECK(kBinary.find("mul") == std::size_t{0});
  CHECK_FALSE(kBinary.find("add").has_value());
}

TEST_CASE("is_homomorphism agrees with the table oracle") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 3;
    const int m = 1 + (trial / 3) % 3;
    const auto a = oracle::random_algebra(rng, n, {{"mul", 2}, {"u", 1}});
    const auto b = oracle::random_algebra(rng, m, {{"mul", 2}, {"u", 1}});
    oracle::for_each_map(n, m, [&](const std::vector<Element>& v) {
      CHECK(is_homomorphism(Mapping(m, v), a, b) == oracle::is_hom(v, a, b));
      return true;
    });
  }
  CHECK_THROWS_AS(is_homomorphism(Mapping::identity(2), z_mod(2), z_mod(3)), Error);
  CHECK_THROWS_AS(is_homomorphism(Mapping::identity(2), z_mod(2), FiniteAlgebra(Signature({{"u", 1}}), 2, {{0, 1}})),
                  Error);
}

TEST_CASE("check_properties on known operations") {
  const auto z3 = check_properties(z_mod(3), "mul");
  CHECK(z3.associative);
  CHECK(z3.commutative);
  CHECK_FALSE(z3.idempotent);
  CHECK_FALSE(z3.meet_semilattice);
  // min on a chain
  std::vector<Element> t;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) t.push_back(std::min(a, b));
  }
  const auto chain = check_properties(FiniteAlgebra(kBinary, 3, {t}), "mul");
  CHECK(chain.meet_semilattice);
  // x - y mod 3
  std::vector<Element> d;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) d.push_back((a - b + 3) % 3);
  }
  const auto minus = check_properties(FiniteAlgebra(kBinary, 3, {d}), "mul");
  CHECK_FALSE(minus.associative);
  CHECK_FALSE(minus.commutative);
  CHECK_THROWS_AS(check_properties(z_mod(2), "nope"), Error);
}

TEST_CASE("induced subalgebras and closure errors") {
  const auto z4 = z_mod(4);
  const auto sub = induced_subalgebra(z4, std::vector<Element>{0, 2});
  CHECK(sub.algebra.size() == 2);
  CHECK(sub.algebra.apply(0, 1, 1) == 0);
  CHECK(sub.new_to_old == std::vector<Element>{0, 2});
  CHECK(sub.old_to_new == std::vector<Element>{0, -1, 1, -1});
  CHECK(is_homomorphism(sub.inclusion(4), sub.algebra, z4));
  try {
    (void)induced_subalgebra(z4, std::vector<Element>{0, 1});
    FAIL("expected a closure error");
  } catch (const ClosureError& e) {
    CHECK(e.op() == "mul");
    CHECK(e.args() == std::vector<Element>{1, 1});
    CHECK(e.result() == 2);
  }
}

TEST_CASE("retractions and image algebras") {
  const auto z4 = z_mod(4);
  const Mapping to_z2(2, {0, 1, 0, 1});
  CHECK(is_retraction_respecting(Mapping::identity(4), z4, to_z2));
  CHECK_FALSE(is_retraction_respecting(Mapping::constant(4, 4, 0), z4, to_z2));
  const auto img = image_algebra(z4, to_z2);
  REQUIRE(img.has_value());
  CHECK(img->algebra.size() == 2);
  CHECK(img->onto.is_surjective());
  CHECK(is_homomorphism(img->onto, z4, img->algebra));
  // ker is not a congruence: {0,1} | {2,3} under addition mod 4
  CHECK_FALSE(image_algebra(z4, Mapping(2, {0, 0, 1, 1})).has_value());
}

TEST_CASE("same_structure ignores labels") {
  const FiniteAlgebra a(kBinary, 2, {{0, 1, 1, 0}}, {"p", "q"});
  const FiniteAlgebra b(kBinary, 2, {{0, 1, 1, 0}});
  CHECK(a.same_structure(b));
  CHECK(a.label(1) == "q");
  CHECK_FALSE(a.same_structure(z_mod(3)));
}
