#include <doctest.h>

#include <random>

#include "hfact/encodings.hpp"
#include "hfact/fcore.hpp"
#include "hfact/varieties.hpp"
#include "oracles.hpp"
#include "variety_instances.hpp"

using namespace hfact;

namespace {

void check_result_shape(const FCoreResult& r, const FiniteAlgebra& x, const Mapping& f) {
  CHECK(is_retraction_respecting(r.retraction, x, f));
  CHECK(r.image == r.retraction.image());
  CHECK(r.core_algebra.size() == static_cast<int>(r.image.size()));
  for (Element e : r.image) CHECK(r.retraction(e) == e);
}

}  // namespace

TEST_CASE("variety constructors pass their validators") {
  for (const auto& orders : std::vector<std::vector<int>>{{1}, {2}, {6}, {2, 3}, {2, 2, 2}, {4, 4}}) {
    CHECK(validate_abelian_group(cyclic_product(orders)).empty());
  }
  for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 0}, {2, 3}, {3, 2}, {5, 1}, {7, 1}}) {
    const auto v = vector_space(p, d);
    CHECK(validate_vector_space(v).empty());
    CHECK(vector_space_prime(v) == p);
    CHECK(validate_abelian_group(v).empty() == false);  // extra scalar operations change the signature
  }
  for (int a = 0; a <= 4; ++a) CHECK(validate_boolean_algebra(boolean_algebra(a)).empty());
  for (int m : {1, 2, 3, 4, 6}) {
    const auto g = cyclic_group(m);
    CHECK(validate_group(g).empty());
    CHECK(validate_gset(cyclic_gset(m, {1, m}), g).empty());
  }
  CHECK_THROWS_AS(vector_space(4, 1), Error);
  CHECK_THROWS_AS(cyclic_gset(4, {3}), Error);
}

TEST_CASE("validators reject non-members") {
  CHECK_FALSE(validate_boolean_algebra(make_semilattice_X(1).x.algebra).empty());
  CHECK_FALSE(validate_abelian_group(boolean_algebra(2)).empty());
  // Z_4 under subtraction in place of addition
  std::vector<Element> sub, neg, zero = {0};
  for (int a = 0; a < 4; ++a) {
    neg.push_back((4 - a) % 4);
    for (int b = 0; b < 4; ++b) sub.push_back((a - b + 4) % 4);
  }
  const FiniteAlgebra bad(Signature({{"add", 2}, {"neg", 1}, {"zero", 0}}), 4, {sub, neg, zero});
  CHECK_FALSE(validate_abelian_group(bad).empty());
  // a non-associative "group"
  const FiniteAlgebra g(Signature({{"mul", 2}}), 3, {{0, 1, 2, 1, 0, 0, 2, 0, 0}});
  CHECK_FALSE(validate_group(g).empty());
  // a gset whose action is not a group action
  const FiniteAlgebra x(Signature({{"g0", 1}, {"g1", 1}}), 2, {{1, 0}, {1, 0}});
  CHECK_FALSE(validate_gset(x, cyclic_group(2)).empty());
}

TEST_CASE("gset orbits") {
  const auto x = cyclic_gset(4, {2, 4, 1});
  const auto orbits = gset_orbits(x);
  REQUIRE(orbits.size() == 3);
  CHECK(orbits[0].size() == 2);
  CHECK(orbits[1].size() == 4);
  CHECK(orbits[2] == std::vector<Element>{6});
}

TEST_CASE("brute-force f-core matches the minimum over all retractions") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 150; ++trial) {
    const auto x = oracle::random_algebra(rng, 2 + trial % 4, {{"f", 1}, {"g", 1}});
    const auto z = oracle::random_algebra(rng, 1 + trial % 2, {{"f", 1}, {"g", 1}});
    const auto homs = oracle::all_homs(x, z);
    if (homs.empty()) continue;
    const Mapping f(z.size(), oracle::choose(rng, homs));
    const auto r = brute_fcore(x, f);
    check_result_shape(r, x, f);
    CHECK(r.certified_minimal);
    CHECK(static_cast<int>(r.image.size()) == oracle::fcore_size(x, f));
    CHECK(is_fcore(x, f) == (oracle::fcore_size(x, f) == x.size()));
  }
  // {bot} | {a, b, top} is not a congruence: a ~ b but a∧a = a, a∧b = bot
  CHECK_THROWS_AS(brute_fcore(boolean_algebra(2), Mapping(2, {0, 1, 1, 1})), Error);
}

TEST_CASE("specialized f-cores have the brute-force size") {
  std::mt19937 rng(22);
  for (const auto& family : oracle::variety_families()) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto inst = oracle::random_variety_instance(rng, family);
      CAPTURE(family);
      CAPTURE(inst.x.size());
      CAPTURE(inst.f.values());
      const auto r = compute_fcore(inst.method, inst.x, inst.f, inst.group ? &*inst.group : nullptr);
      check_result_shape(r, inst.x, inst.f);
      CHECK(r.method == inst.method);
      // only the brute-force fallback certifies minimality
      CHECK(r.certified_minimal == !r.applicable);
      const int expected = oracle::fcore_size(inst.x, inst.f);
      CHECK(static_cast<int>(r.image.size()) == expected);
      if (family != "abelian") CHECK(r.applicable);
    }
  }
}

TEST_CASE("abelian probe: Z4 onto Z2 does not split") {
  const auto x = cyclic_product({4});
  const Mapping f(2, {0, 1, 0, 1});
  REQUIRE(is_homomorphism(f, x, cyclic_product({2})));
  const auto r = abelian_fcore(x, f);
  CHECK_FALSE(r.applicable);
  CHECK(r.image.size() == 4);
  CHECK(oracle::fcore_size(x, f) == 4);
  // Z2 x Z2 onto Z2 splits
  const auto v = cyclic_product({2, 2});
  const Mapping g(2, {0, 1, 0, 1});
  const auto s = abelian_fcore(v, g);
  CHECK(s.applicable);
  CHECK(s.image.size() == 2);
}

TEST_CASE("specialized methods validate their input") {
  const auto b = boolean_algebra(2);
  const Mapping f = Mapping::identity(4);
  CHECK_THROWS_AS(vspace_fcore(b, f), Error);
  CHECK_THROWS_AS(abelian_fcore(b, f), Error);
  CHECK_THROWS_AS(compute_fcore(FCoreMethod::gset, b, f), Error);
  CHECK_THROWS_AS(boolean_fcore(cyclic_product({4}), Mapping::identity(4)), Error);
  CHECK(parse_fcore_method("vspace") == FCoreMethod::vspace);
  CHECK(to_string(FCoreMethod::boolean) == "boolean");
  CHECK_FALSE(parse_fcore_method("fast").has_value());
}

TEST_CASE("right factors through the f-core") {
  std::mt19937 rng(23);
  int yes = 0, no = 0;
  for (const auto& family : oracle::variety_families()) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto base = oracle::random_variety_instance(rng, family, 8);
      const int p = family == "vspace" ? vector_space_prime(base.x) : 2;
      FiniteAlgebra y = family == "vspace" ? vector_space(p, std::uniform_int_distribution<int>(0, 2)(rng))
                                           : oracle::random_member(rng, family, 8, base.group, p);
      if (!oracle::hom_exists(y, base.z)) continue;
      FactorizationInstance inst;
      inst.kind = ProblemKind::right_factor;
      inst.x = base.x;
      inst.y = y;
      inst.z = base.z;
      inst.f = base.f;
      inst.h = oracle::random_hom_of(rng, y, base.z);
      const bool expected = oracle::right_factor(inst);
      const auto r = fixed_z_right_factor(inst, base.method, base.group ? &*base.group : nullptr);
      CHECK(r.found() == expected);
      CHECK(find_right_factor(inst).found() == expected);
      if (r.found()) {
        ++yes;
        CHECK(verify_witness(inst, r.g, std::nullopt));
      } else {
        ++no;
      }
    }
  }
  CHECK(yes > 5);
  CHECK(no > 5);
}

TEST_CASE("semigroup reductions through the brute-force f-core") {
  const std::vector<Graph> gs = {Graph::path(2), Graph::path(3), Graph::cycle(3), Graph::empty(2), Graph::cycle(4)};
  for (const auto& g : gs) {
    for (const auto& h : gs) {
      const auto inst = make_rf_instance(g, h);
      const auto r = fixed_z_right_factor(inst, FCoreMethod::brute);
      CHECK(r.found() == graph_hom(g, h).has_value());
      if (r.found()) CHECK(verify_witness(inst, r.g, std::nullopt));
    }
  }
}
