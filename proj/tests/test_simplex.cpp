#include <random>

#include "doctest.h"
#include "padicreg/simplex.hpp"

using namespace padicreg::simplex;

TEST_CASE("closed form monomial integrals") {
  CHECK(integrate_monomial({0, 0, 0, 0}, 0, 3) == mpq_class(1, 6));
  CHECK(integrate_monomial({1, 1, 0, 0}, 2, 3) == mpq_class(1, 120));
  CHECK(integrate_monomial({1, 0, 0, 0}, 1, 3) == mpq_class(-1, 24));
  CHECK(integrate_monomial({2, 1, 0}, 0, 2) == integrate_monomial({0, 1, 2}, 0, 2));
  CHECK_THROWS(integrate_monomial({1, 0}, 2, 1));
}

TEST_CASE("iterated integral oracle") {
  CHECK(iterated_integral_oracle({1, 0}, 1, 1) == mpq_class(1, 2));
  CHECK(iterated_integral_oracle({0, 0, 0, 0, 0}, 2, 4) == mpq_class(1, 24));
  for (int n = 1; n <= 3; ++n)
    for (int i = 0; i <= n; ++i) {
      std::vector<int> a(static_cast<std::size_t>(n + 1), 0);
      a[0] = 2;
      a[static_cast<std::size_t>(n)] += 1;
      const mpq_class closed = integrate_monomial(a, i, n);
      CHECK(iterated_integral_oracle(a, i, n) == (i % 2 ? mpq_class(-closed) : closed));
    }
}

TEST_CASE("face restriction and derivative") {
  const auto w = RationalForm::monomial(4, {0, 1, 0, 0, 0}, {2, 3, 4});
  const auto face = face_restrict(w, 0);
  CHECK(face == RationalForm::monomial(3, {1, 0, 0, 0}, {1, 2, 3}));
  CHECK(face_restrict(w, 1).is_zero());
  CHECK(face_restrict(w, 2).is_zero());

  const auto dw = exterior_derivative_exact(RationalForm::monomial(4, {1, 0, 0, 0, 0}, {1, 2, 3}));
  CHECK(dw == RationalForm::monomial(4, {0, 0, 0, 0, 0}, {0, 1, 2, 3}));
  CHECK(exterior_derivative_exact(RationalForm::monomial(2, {3, 1, 1}, {0, 1})).is_zero() == false);
  CHECK(exterior_derivative_exact(RationalForm::monomial(1, {3, 1}, {0, 1})).is_zero());

  std::mt19937_64 rng(6);
  for (int i = 0; i < 30; ++i) {
    RationalForm f(4);
    for (int t = 0; t < 4; ++t) {
      std::vector<int> a(5);
      for (auto& x : a) x = static_cast<int>(rng() % 3);
      std::vector<int> idx;
      for (int j = 0; j < 5; ++j)
        if (rng() % 2) idx.push_back(j);
      f += RationalForm::monomial(4, a, idx, mpq_class(static_cast<long>(rng() % 9) - 4, 1 + rng() % 5));
    }
    CHECK(exterior_derivative_exact(exterior_derivative_exact(f)).is_zero());
  }
}

TEST_CASE("monomial wedge sign") {
  const auto a = RationalForm::monomial(2, {0, 0, 0}, {1});
  const auto b = RationalForm::monomial(2, {0, 0, 0}, {0});
  CHECK(wedge(a, b) == RationalForm::monomial(2, {0, 0, 0}, {0, 1}, -1));
  CHECK(RationalForm::monomial(2, {0, 0, 0}, {1, 0}) == RationalForm::monomial(2, {0, 0, 0}, {0, 1}, -1));
}

TEST_CASE("stokes cases") {
  auto sides = stokes_check({1, 0, 0, 0, 0}, 0, 4);
  CHECK(sides.boundary == mpq_class(1, 24));
  CHECK(sides.interior == mpq_class(1, 24));
  sides = stokes_check({1, 0, 0, 0, 2}, 0, 4);
  CHECK(sides.boundary == 0);
  CHECK(sides.interior == 0);
  sides = stokes_check({0, 0, 0, 0, 0}, 0, 4);
  CHECK(sides.boundary == 0);
  CHECK(sides.interior == 0);
  for (int u = 0; u < 3; ++u)
    for (int v = u + 1; v < 3; ++v)
      for (int k = 0; k < 3; ++k) {
        std::vector<int> a(3, 0);
        a[static_cast<std::size_t>(k)] = 2;
        a[0] += 1;
        sides = stokes_check(a, u, v);
        CHECK(sides.boundary == sides.interior);
      }
}

TEST_CASE("rational printing") {
  CHECK(to_string(mpq_class(1, 120)) == "1/120");
  CHECK(to_string(mpq_class(-3)) == "-3");
}
