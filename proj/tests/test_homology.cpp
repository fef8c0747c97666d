#include <random>

#include "doctest.h"
#include "padicreg/homology.hpp"
#include "support.hpp"

using namespace padicreg;
using Perm = PermutationGroup::Elem;

namespace {

Perm ol(std::vector<int> images) { return PermutationGroup::from_one_line(images); }

template <class E>
BarChain<E> random_chain(const std::vector<E>& elems, int degree, int terms, std::mt19937_64& rng) {
  BarChain<E> c{degree, {}};
  for (int t = 0; t < terms; ++t) {
    std::vector<E> tuple;
    for (int k = 0; k < degree; ++k) tuple.push_back(elems[rng() % elems.size()]);
    c.add(tuple, static_cast<std::int64_t>(rng() % 11) - 5);
  }
  return c;
}

}  // namespace

TEST_CASE("permutation conventions") {
  const auto g = PermutationGroup::alternating_in_symmetric(3);
  const Perm s = ol({2, 1, 3}), t = ol({1, 3, 2});
  // (st)(k) = t(s(k)): 1 -> 2 -> 3.
  CHECK(PermutationGroup::to_one_line(g.mul(s, t)) == std::vector<int>{3, 1, 2});
  CHECK(g.subgroup_elements().size() == 3);
  CHECK(PermutationGroup::alternating_in_symmetric(4).subgroup_elements().size() == 12);
  CHECK(PermutationGroup::dihedral_in_s4().subgroup_elements().size() == 8);
  CHECK(g.in_subgroup(ol({2, 3, 1})));
  CHECK_FALSE(g.in_subgroup(s));
  CHECK_THROWS_AS(PermutationGroup(3, {ol({1, 1, 2})}), PreconditionError);
}

TEST_CASE("coset data") {
  const auto g = PermutationGroup::alternating_in_symmetric(3);
  const CosetSystem<PermutationGroup> cs(g, {g.identity(), ol({2, 1, 3})});
  const auto [h, j] = cs.coset_data(0, ol({2, 1, 3}));
  CHECK(h == g.identity());
  CHECK(j == 1);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto [h1, j1] = cs.coset_data(i, g.identity());
    CHECK(h1 == g.identity());
    CHECK(j1 == i);
  }
  CHECK_THROWS_AS(CosetSystem<PermutationGroup>(g, {g.identity(), ol({2, 3, 1})}), PreconditionError);

  for (const auto& group : {PermutationGroup::alternating_in_symmetric(4), PermutationGroup::dihedral_in_s4()}) {
    const auto cosets = right_cosets(group);
    const auto elems = group.elements();
    CHECK(cosets.size() * group.subgroup_elements().size() == elems.size());
    for (const auto& a : elems)
      for (const auto& b : elems)
        for (std::size_t i = 0; i < cosets.size(); ++i) {
          const auto [ha, ja] = cosets.coset_data(i, a);
          const auto [hb, jb] = cosets.coset_data(ja, b);
          const auto [hab, jab] = cosets.coset_data(i, group.mul(a, b));
          CHECK(jab == jb);
          CHECK(group.mul(group.inverse(ha), hab) == hb);
        }
  }
}

TEST_CASE("bar differential") {
  const auto g = PermutationGroup::alternating_in_symmetric(3);
  BarChain<Perm> one{1, {}};
  one.add({ol({2, 3, 1})}, 1);
  CHECK(bar_differential(g, one).is_zero());
  CHECK_THROWS_AS((void)bar_differential(g, BarChain<Perm>{0, {}}), PreconditionError);

  const Perm a = ol({2, 1, 3}), b = ol({1, 3, 2});
  BarChain<Perm> two{2, {}};
  two.add({a, g.mul(a, b)}, 1);
  BarChain<Perm> want{1, {}};
  want.add({b}, 1);
  want.add({g.mul(a, b)}, -1);
  want.add({a}, 1);
  CHECK(bar_differential(g, two) == want);

  std::mt19937_64 rng(21);
  const auto elems = g.elements();
  for (int i = 0; i < 50; ++i) {
    const auto c = random_chain(elems, 2 + static_cast<int>(rng() % 3), 5, rng);
    CHECK(bar_differential(g, bar_differential(g, c)).is_zero());
  }
}

TEST_CASE("transfer") {
  const auto g = PermutationGroup::alternating_in_symmetric(3);
  const auto cosets = right_cosets(g);
  BarChain<Perm> c{1, {}};
  c.add({ol({2, 3, 1})}, 1);
  BarChain<Perm> want{1, {}};
  want.add({ol({2, 3, 1})}, 1);
  want.add({ol({3, 1, 2})}, 1);
  CHECK(transfer(cosets, c) == want);

  BarChain<Perm> ones{3, {}};
  ones.add(std::vector<Perm>(3, g.identity()), 1);
  CHECK(transfer(cosets, ones).terms.at(std::vector<Perm>(3, g.identity())) == 2);

  std::mt19937_64 rng(22);
  const auto elems = g.elements();
  for (int i = 0; i < 30; ++i) {
    const auto r = random_chain(elems, 1 + static_cast<int>(rng() % 3), 4, rng);
    CHECK(check_chain_map(cosets, r));
    CHECK(factorization_check(cosets, r));
  }
}

TEST_CASE("transfer is independent of the representatives up to boundaries") {
  const auto g = PermutationGroup::alternating_in_symmetric(3);
  const auto r1 = right_cosets(g);
  const CosetSystem<PermutationGroup> r2(g, {ol({2, 3, 1}), ol({2, 1, 3})});
  const auto hs = g.subgroup_elements();
  const auto elems = g.elements();
  std::mt19937_64 rng(23);
  for (int i = 0; i < 5; ++i) {
    const auto c = random_chain(elems, 1, 3, rng);
    const auto diff = transfer(r1, c) - transfer(r2, c);
    const auto x = solve_boundary(g, hs, diff);
    REQUIRE(x.has_value());
    CHECK(bar_differential(g, *x) == diff);
  }
  for (int i = 0; i < 3; ++i) {
    const auto c = bar_differential(g, random_chain(elems, 3, 2, rng));
    const auto diff = transfer(r1, c) - transfer(r2, c);
    const auto x = solve_boundary(g, hs, diff);
    REQUIRE(x.has_value());
    CHECK(bar_differential(g, *x) == diff);
  }
  // A non-boundary: (1, g) with g of order 3 generates H_1(A_3) = Z/3.
  BarChain<Perm> gen{1, {}};
  gen.add({ol({2, 3, 1})}, 1);
  CHECK_FALSE(solve_boundary(g, hs, gen).has_value());
}

TEST_CASE("integer systems") {
  using V = std::vector<mpz_class>;
  const std::vector<V> a{{2, 4}, {6, 3}};
  const auto x = solve_integer_system(a, {6, 9});
  REQUIRE(x.has_value());
  CHECK(2 * (*x)[0] + 4 * (*x)[1] == 6);
  CHECK(6 * (*x)[0] + 3 * (*x)[1] == 9);
  CHECK_FALSE(solve_integer_system({{2}}, {3}).has_value());
}

TEST_CASE("matrix cosets") {
  const RingParams r(3, 2);
  const MatrixGroup g(r, 2, 1);
  const auto cosets = right_cosets(g);
  CHECK(cosets.size() == 48);
  CHECK(cosets.reps().front().is_identity());
  std::mt19937_64 rng(24);
  std::vector<OMatrix> elems;
  for (int i = 0; i < 40; ++i) elems.push_back(testsupport::random_invertible(r, 2, rng));
  for (const auto& y : elems) {
    CHECK(g.contains(y));
    const auto [h, j] = cosets.locate(y);
    const auto [h2, j2] = cosets.locate_scan(y);
    CHECK(j == j2);
    CHECK(h == h2);
    CHECK(g.in_subgroup(h));
  }
  for (int i = 0; i < 10; ++i) {
    const auto c = random_chain(elems, 1 + static_cast<int>(rng() % 3), 3, rng);
    CHECK(check_chain_map(cosets, c));
  }
  CHECK_THROWS_AS(MatrixGroup(r, 2, 3), PreconditionError);
}
