#include <random>

#include "doctest.h"
#include "padicreg/kernels.hpp"
#include "padicreg/matforms.hpp"
#include "padicreg/simplex.hpp"
#include "support.hpp"

using namespace padicreg;

namespace {

OMatrix random_matrix(const RingParams& r, int n, std::mt19937_64& rng, u64 bound = 0) {
  OMatrix m(r, n);
  for (auto& c : m.data()) c = bound ? rng() % bound : rng() % r.order();
  return m;
}

/// Random series with terms of x-degree <= max_deg and form degree in `form_degrees`.
FormSeries random_series(int s, const RingParams& r, int n, int cap, int max_deg, std::vector<int> form_degrees,
                         int terms, std::mt19937_64& rng, u64 bound = 0) {
  FormSeries f(s, n, r, cap);
  const int vars = 2 * s;
  for (int t = 0; t < terms; ++t) {
    std::vector<int> a(static_cast<std::size_t>(vars), 0);
    const int deg = static_cast<int>(rng() % static_cast<u64>(max_deg + 1));
    for (int k = 0; k < deg; ++k) ++a[rng() % static_cast<u64>(vars)];
    const int fd = form_degrees[rng() % form_degrees.size()];
    std::vector<int> idx(static_cast<std::size_t>(vars));
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(static_cast<std::size_t>(fd));
    std::sort(idx.begin(), idx.end());
    f.add_term(make_key(a, idx), random_matrix(r, n, rng, bound));
  }
  return f;
}

FormSeries scalar_form(const RingParams& r, int s, int cap, std::vector<int> a, std::vector<int> idx, std::int64_t c) {
  FormSeries f(s, 1, r, cap);
  f.add_term(make_key(a, idx), OMatrix::from_ints(r, 1, std::vector<std::int64_t>{c}));
  return f;
}

}  // namespace

TEST_CASE("matrix operations") {
  const RingParams r(3, 8);
  CHECK(OMatrix::identity(r, 2).trace().coeff(0) == 2);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 30; ++i) {
    const OMatrix a = random_matrix(r, 3, rng), b = random_matrix(r, 3, rng);
    CHECK((a * b).trace() == (b * a).trace());
    const OMatrix g = testsupport::random_congruent(r, 3, 1, rng);
    CHECK((g * g.inverse()).is_identity());
    CHECK(g.congruent_to_identity(1));
    const OMatrix x = random_matrix(r, 3, rng);
    const OMatrix one_plus = OMatrix::identity(r, 3) + x.scaled(3);
    CHECK((one_plus * mat_inverse_one_plus(x, 1)).is_identity());
    const OMatrix u = testsupport::random_invertible(r, 2, rng);
    CHECK((u.inverse() * u).is_identity());
  }
  const RingParams r5(5, 3);
  const OMatrix x = OMatrix::from_ints(r5, 1, std::vector<std::int64_t>{1});
  CHECK(mat_inverse_one_plus(x, 1).at(0, 0).coeff(0) == 21);
  CHECK(mat_inverse_one_plus(OMatrix(r5, 2), 1).is_identity());
  CHECK_THROWS_AS((void)OMatrix::from_ints(r5, 2, std::vector<std::int64_t>{5, 0, 0, 1}).inverse(), PreconditionError);
  CHECK_THROWS_AS((void)(OMatrix(r5, 2) * OMatrix(r5, 3)), PreconditionError);

  const RingParams q9(3, 5, {1, 0, 1});
  for (int i = 0; i < 10; ++i) {
    const OMatrix a = testsupport::random_invertible(q9, 2, rng);
    CHECK((a * a.inverse()).is_identity());
  }
}

TEST_CASE("shuffle sign") {
  CHECK(shuffle_sign(0b01, 0b10) == 1);
  CHECK(shuffle_sign(0b10, 0b01) == -1);
  CHECK(shuffle_sign(0b11, 0b01) == 0);
  CHECK(shuffle_sign(0b101, 0b010) == -1);
}

TEST_CASE("wedge antisymmetry") {
  const RingParams r(5, 4);
  const auto a = scalar_form(r, 1, 3, {0, 0}, {0}, 3);
  const auto b = scalar_form(r, 1, 3, {0, 0}, {1}, 7);
  const auto c = scalar_form(r, 1, 3, {0, 0}, {1}, 3);
  const auto d = scalar_form(r, 1, 3, {0, 0}, {0}, 7);
  CHECK((form_wedge(a, b) + form_wedge(c, d)).empty());
  const auto ab = form_wedge(a, b);
  const auto ba = form_wedge(b, a);
  REQUIRE(ab.terms().size() == 1);
  CHECK(ab.terms().begin()->second.at(0, 0).coeff(0) == 21);
  CHECK(ba.terms().begin()->second.at(0, 0).coeff(0) == r.order() - 21);
  const auto f = scalar_form(r, 1, 3, {1, 0}, {0}, 2) + scalar_form(r, 1, 3, {0, 2}, {1}, 5);
  CHECK(form_wedge(f, f).empty());
  CHECK(form_wedge(scalar_form(r, 1, 3, {2, 0}, {}, 1), scalar_form(r, 1, 3, {0, 2}, {}, 1)).empty());
}

TEST_CASE("exterior derivative") {
  const RingParams r(3, 6);
  CHECK(form_d(scalar_form(r, 2, 4, {0, 0, 0, 0}, {}, 5)).empty());
  const auto w = form_d(scalar_form(r, 2, 4, {1, 0, 0, 0}, {1, 2, 3}, 1));
  REQUIRE(w.terms().size() == 1);
  CHECK(w.terms().begin()->first == make_key(std::vector<int>{0, 0, 0, 0}, std::vector<int>{0, 1, 2, 3}));
  CHECK(w.terms().begin()->second.at(0, 0).is_one());

  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto f = random_series(2, r, 2, 6, 4, {0, 1, 2}, 6, rng);
    CHECK(form_d(form_d(f)).empty());
    for (int fd : {0, 1, 2}) {
      const auto g = random_series(2, r, 2, 6, 3, {fd}, 4, rng);
      const auto h = random_series(2, r, 2, 6, 3, {1}, 4, rng);
      const auto lhs = form_d(form_wedge(g, h));
      const auto rhs = form_wedge(form_d(g), h) + (fd % 2 ? -form_wedge(g, form_d(h)) : form_wedge(g, form_d(h)));
      CHECK((lhs - rhs).empty());
    }
  }
}

TEST_CASE("wedge associativity and kernel agreement") {
  std::mt19937_64 rng(3);
  for (const RingParams& r : {RingParams(3, 10), RingParams(3, 25), RingParams(3, 5, {1, 0, 1})}) {
    for (int i = 0; i < 10; ++i) {
      const int n = 1 + static_cast<int>(rng() % 3);
      const auto f = random_series(2, r, n, 9, 3, {0, 1}, 6, rng);
      const auto g = random_series(2, r, n, 9, 3, {0, 1, 2}, 6, rng);
      const auto h = random_series(2, r, n, 9, 3, {0, 1}, 6, rng);
      CHECK(form_wedge(form_wedge(f, g), h) == form_wedge(f, form_wedge(g, h)));
      CHECK(kernels::wedge_reference(f, g) == kernels::wedge_parallel(f, g));
      CHECK(kernels::wedge_reference(g, h) == kernels::wedge_parallel(g, h));
    }
  }
}

TEST_CASE("monomial index") {
  for (int vars : {1, 2, 4}) {
    const kernels::MonomialIndex idx(vars, 6);
    std::uint8_t e[kMaxVariables]{};
    for (std::size_t r = 0; r < idx.count(); ++r) {
      idx.unrank(r, e);
      int total = 0;
      for (int i = 0; i < vars; ++i) total += e[i];
      CHECK(total <= 6);
      CHECK(idx.rank(e) == r);
    }
    std::size_t expected = 1;
    for (int k = 1; k <= vars; ++k) expected = expected * static_cast<std::size_t>(6 + k) / static_cast<std::size_t>(k);
    CHECK(idx.count() == expected);
  }
}

TEST_CASE("phi values") {
  const RingParams r(3, 8);
  const auto one = scalar_form(r, 2, 4, {0, 0, 0, 0}, {1, 2, 3}, 1);
  const QpElem v = phi(one);
  CHECK(defect_valuation(v, rational_to_qp(mpq_class(1, 6), v.params())) >= 6);
  CHECK(phi_rational(one)[0] == mpq_class(1, 6));
  CHECK(phi(FormSeries(2, 1, r, 4)).is_zero());
  CHECK_THROWS_AS((void)phi(scalar_form(r, 2, 4, {0, 0, 0, 0}, {1, 2}, 1)), PreconditionError);

  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto f = random_series(2, r, 2, 4, 4, {3}, 8, rng, 20);
    mpq_class want = 0;
    for (const auto& [k, c] : f.terms()) {
      std::vector<int> a(k.exponents.begin(), k.exponents.begin() + 4);
      const int u = std::countr_zero(static_cast<unsigned>(0xF ^ k.wedge));
      want += mpq_class(static_cast<long>(c.trace().coeff(0))) * simplex::integrate_monomial(a, u, 3);
    }
    CHECK(phi_rational(f)[0] == want);
    CHECK(defect_valuation(phi(f), rational_to_qp(want, r)) >= 8 - static_cast<int>(factorial_valuation(7, 3)));
  }
}

TEST_CASE("phi annihilates the defining ideal") {
  const RingParams r(3, 30);
  std::mt19937_64 rng(5);
  FormSeries relation = FormSeries::constant(2, 6, OMatrix::identity(r, 2));
  FormSeries dsum(2, 2, r, 6);
  for (int i = 0; i < 4; ++i) {
    std::vector<int> a(4, 0);
    a[static_cast<std::size_t>(i)] = 1;
    relation.add_term(make_key(a, {}), -OMatrix::identity(r, 2));
    dsum.add_term(make_key(std::vector<int>(4, 0), std::vector<int>{i}), OMatrix::identity(r, 2));
  }
  for (int i = 0; i < 20; ++i) {
    const auto h = random_series(2, r, 2, 6, 5, {3}, 6, rng, 10);
    const auto w = random_series(2, r, 2, 6, 6, {2}, 6, rng, 10);
    CHECK(phi_rational(form_wedge(relation, h))[0] == 0);
    CHECK(phi_rational(form_wedge(w, dsum))[0] == 0);
    CHECK(phi(form_wedge(relation, h)).valuation() >= 20);
  }
}
