// One line per acceptance criterion: PASS/FAIL, what was checked, and time.
// Exits 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "padicreg/regulator.hpp"
#include "padicreg/simplex.hpp"
#include "support.hpp"

using namespace padicreg;
using testsupport::random_congruent;
using testsupport::random_tuple;
using testsupport::tuple_precision;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// A 2s-tuple evaluated by criteria 4-7, kept for the truncation check.
struct Evaluated {
  GroupTuple tuple;
  int target;
  QpElem value;
};

std::vector<Evaluated> g_evaluated;

constexpr int kSlack = 5;

QpElem eval_logged(const GroupTuple& t, int target) {
  QpElem v = cocycle_eval(t, target).value;
  g_evaluated.push_back({t, target, v});
  return v;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

mpz_class residue_mpz(const RingElem& x, int i = 0) { return mpz_class(static_cast<unsigned long>(x.coeff(i))); }

// ---------------------------------------------------------------- 1 .. 3

Outcome simplex_oracle() {
  long cases = 0, bad = 0;
  for (int n = 1; n <= 4; ++n) {
    std::vector<int> a(static_cast<std::size_t>(n + 1), 0);
    // Enumerate all a with |a| <= 6 by odometer.
    for (;;) {
      int total = 0;
      for (int x : a) total += x;
      if (total <= 6) {
        for (int i = 0; i <= n; ++i) {
          const mpq_class closed = simplex::integrate_monomial(a, i, n);
          const mpq_class oracle = simplex::iterated_integral_oracle(a, i, n);
          if (oracle != (i % 2 ? mpq_class(-closed) : closed)) ++bad;
          ++cases;
        }
      }
      std::size_t k = 0;
      while (k < a.size() && ++a[k] > 6) a[k++] = 0;
      if (k == a.size()) break;
    }
  }
  return {bad == 0, fmt("%ld (a, i, n) cases, %ld mismatches, exact", cases, bad)};
}

Outcome stokes_suite() {
  long cases = 0, bad = 0;
  std::vector<int> a(5, 0);
  for (;;) {
    int total = 0;
    for (int x : a) total += x;
    if (total <= 5)
      for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) {
          const auto sides = simplex::stokes_check(a, u, v);
          if (sides.boundary != sides.interior) ++bad;
          ++cases;
        }
    std::size_t k = 0;
    while (k < a.size() && ++a[k] > 5) a[k++] = 0;
    if (k == a.size()) break;
  }
  return {bad == 0, fmt("%ld monomial 3-forms on the 4-simplex, %ld mismatches, exact", cases, bad)};
}

Outcome factorial_valuations() {
  long bad = 0;
  for (u64 p : {2, 3, 5, 7, 11, 13})
    for (u64 l = 0; l <= 10000; ++l) {
      const u64 v = factorial_valuation(l, p);
      if (v != oracle::legendre(l, p) || v != (l - digit_sum(l, p)) / (p - 1)) ++bad;
    }
  return {bad == 0, fmt("l <= 10^4, p in {2,3,5,7,11,13}: %ld mismatches", bad)};
}

// ---------------------------------------------------------------- 4 .. 7

Outcome s1_log(std::mt19937_64& rng) {
  const int target = 8;
  long bad = 0, cases = 0;
  for (u64 p : {3, 5, 7, 2}) {
    const int e = p == 2 ? 2 : 1;
    const RingParams r(p, tuple_precision(target, e, 1, p, kSlack));
    const mpz_class mod(static_cast<unsigned long>(r.p_power(target)));
    for (int i = 0; i < 20; ++i) {
      const GroupTuple t = random_tuple(r, 1, e, 1, 2, rng);
      const mpz_class g0 = residue_mpz(t.elems[0].at(0, 0)), g1 = residue_mpz(t.elems[1].at(0, 0));
      mpz_class want = (oracle::log_series({g1}, {}, p, target)[0] - oracle::log_series({g0}, {}, p, target)[0]) % mod;
      if (want < 0) want += mod;
      const QpElem got = eval_logged(t, target);
      if (got.absolute_precision() < target || residue_mpz(got.to_integral()) != want) ++bad;
      ++cases;
    }
  }
  return {bad == 0, fmt("%ld tuples (p = 3, 5, 7 with e = 1; p = 2 with e = 2) vs rational log series mod p^8, %ld mismatches",
                        cases, bad)};
}

QpElem alternating_sum(const std::vector<QpElem>& faces) {
  QpElem sum = QpElem::exact_zero(faces.front().params());
  for (std::size_t i = 0; i < faces.size(); ++i) sum = i % 2 ? sum - faces[i] : sum + faces[i];
  return sum;
}

Outcome cocycle_condition(std::mt19937_64& rng) {
  const int target = 6;
  const RingParams r(3, tuple_precision(target, 1, 2, 3, kSlack));
  std::int64_t worst = kInfiniteValuation;
  for (int i = 0; i < 20; ++i) {
    const GroupTuple t = random_tuple(r, 2, 1, 2, 5, rng);
    std::vector<QpElem> faces;
    for (std::size_t k = 0; k < 5; ++k) faces.push_back(eval_logged(t.without(k), target));
    worst = std::min(worst, alternating_sum(faces).valuation());
  }
  return {worst >= target, fmt("20 random 5-tuples, s = 2, N = 2, p = 3: min defect valuation %lld (need >= %d)",
                               static_cast<long long>(worst), target)};
}

Outcome invariance(std::mt19937_64& rng) {
  const int target = 6;
  const RingParams r(3, tuple_precision(target, 1, 2, 3, kSlack));
  std::int64_t worst[2] = {kInfiniteValuation, kInfiniteValuation};
  for (int mode = 0; mode < 2; ++mode)
    for (int i = 0; i < 20; ++i) {
      const GroupTuple t = random_tuple(r, 2, 1, 2, 4, rng);
      GroupTuple moved = t;
      if (mode == 0) {
        const OMatrix y1 = random_congruent(r, 2, 1, rng), y2 = random_congruent(r, 2, 1, rng);
        for (auto& g : moved.elems) g = y1 * g * y2;
      } else {
        const OMatrix y = testsupport::random_invertible(r, 2, rng);
        const OMatrix yinv = y.inverse();
        for (auto& g : moved.elems) g = y * g * yinv;
      }
      const QpElem a = eval_logged(t, target), b = eval_logged(moved, target);
      worst[mode] = std::min(worst[mode], defect_valuation(a, b));
    }
  return {worst[0] >= target && worst[1] >= target,
          fmt("20 translations y1 g y2, 20 conjugations y g y^-1: min defect valuations %lld, %lld (need >= %d)",
              static_cast<long long>(worst[0]), static_cast<long long>(worst[1]), target)};
}

Outcome galois(std::mt19937_64& rng) {
  const int target = 6;
  std::int64_t worst[2] = {kInfiniteValuation, kInfiniteValuation};
  for (int s = 1; s <= 2; ++s) {
    const RingParams r(3, tuple_precision(target, 1, s, 3, kSlack), {1, 0, 1});
    const Frobenius frob(r);
    for (int i = 0; i < 10; ++i) {
      const GroupTuple t = random_tuple(r, s, 1, 2, static_cast<std::size_t>(2 * s), rng);
      GroupTuple moved = t;
      for (auto& g : moved.elems) {
        OMatrix h(r, 2);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) h.set(a, b, frob(g.at(a, b)));
        g = h;
      }
      const QpElem base = eval_logged(t, target);
      const QpElem image = eval_logged(moved, target);
      worst[s - 1] = std::min(worst[s - 1], defect_valuation(Frobenius(base.params())(base), image));
    }
  }
  return {worst[0] >= target && worst[1] >= target,
          fmt("Q_9 = Q_3(i), 10 tuples each for s = 1, 2 (N = 2): min defect valuations %lld, %lld (need >= %d)",
              static_cast<long long>(worst[0]), static_cast<long long>(worst[1]), target)};
}

// ---------------------------------------------------------------- 8 .. 12

FormSeries random_form(const RingParams& r, int max_deg, int form_degree, std::mt19937_64& rng) {
  FormSeries f(2, 2, r, 6);
  for (int t = 0; t < 6; ++t) {
    std::vector<int> a(4, 0);
    const int deg = static_cast<int>(rng() % static_cast<u64>(max_deg + 1));
    for (int k = 0; k < deg; ++k) ++a[rng() % 4];
    std::vector<int> idx{0, 1, 2, 3};
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(static_cast<std::size_t>(form_degree));
    std::sort(idx.begin(), idx.end());
    OMatrix c(r, 2);
    for (auto& x : c.data()) x = r.add_mod(rng() % 19, r.order() - 9);
    f.add_term(make_key(a, idx), c);
  }
  return f;
}

Outcome ideal_annihilation(std::mt19937_64& rng) {
  const RingParams r(3, 30);
  const OMatrix one = OMatrix::identity(r, 2);
  FormSeries relation = FormSeries::constant(2, 6, one);
  FormSeries dsum(2, 2, r, 6);
  for (int i = 0; i < 4; ++i) {
    std::vector<int> a(4, 0);
    a[static_cast<std::size_t>(i)] = 1;
    relation.add_term(make_key(a, {}), -one);
    dsum.add_term(make_key(std::vector<int>(4, 0), std::vector<int>{i}), one);
  }
  long bad = 0;
  for (int i = 0; i < 50; ++i) {
    const FormSeries x = form_wedge(relation, random_form(r, 5, 3, rng));
    const FormSeries y = form_wedge(random_form(r, 6, 2, rng), dsum);
    for (const auto* f : {&x, &y})
      if (phi_rational(*f)[0] != 0 || !phi(*f).is_zero()) ++bad;
  }
  return {bad == 0, fmt("50 forms (1 - sum x_i) h and 50 forms w ^ sum dx_i, s = 2, |a| <= 6: %ld nonzero, exact", bad)};
}

template <class G>
long chain_map_failures(const CosetSystem<G>& cosets, const std::vector<typename G::Elem>& elems,
                        std::mt19937_64& rng, long& factorisation_failures) {
  using E = typename G::Elem;
  long bad = 0;
  for (int i = 0; i < 200; ++i) {
    BarChain<E> c{1 + static_cast<int>(rng() % 3), {}};
    const int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
      std::vector<E> tuple;
      for (int k = 0; k < c.degree; ++k) tuple.push_back(elems[rng() % elems.size()]);
      c.add(tuple, static_cast<std::int64_t>(rng() % 9) - 4);
    }
    if (!check_chain_map(cosets, c)) ++bad;
    // Single basis tuple for the factorisation identity.
    BarChain<E> basis{c.degree, {}};
    std::vector<E> tuple;
    for (int k = 0; k < c.degree; ++k) tuple.push_back(elems[rng() % elems.size()]);
    basis.add(tuple, 1);
    if (!factorization_check(cosets, basis)) ++factorisation_failures;
  }
  return bad;
}

Outcome transfer_chain_map(std::mt19937_64& rng) {
  long bad = 0, fact = 0;
  for (const auto& g : {PermutationGroup::alternating_in_symmetric(3), PermutationGroup::alternating_in_symmetric(4),
                        PermutationGroup::dihedral_in_s4()})
    bad += chain_map_failures(right_cosets(g), g.elements(), rng, fact);
  const RingParams z9(3, 2);
  const MatrixGroup gl(z9, 2, 1);
  std::vector<OMatrix> elems;
  for (int i = 0; i < 60; ++i) elems.push_back(testsupport::random_invertible(z9, 2, rng));
  bad += chain_map_failures(right_cosets(gl), elems, rng, fact);
  return {bad == 0 && fact == 0,
          fmt("S3/A3, S4/A4, S4/D4, GL2(Z/9)/(1+3M2): 800 random chains, %ld chain-map failures; "
              "800 basis tuples, %ld failures of T = s.T~",
              bad, fact)};
}

Outcome index_formula() {
  const auto n_f2 = oracle::count_invertible(2, 2, 1);
  const auto n_f3 = oracle::count_invertible(2, 3, 1);
  const auto n_z9 = oracle::count_invertible(2, 3, 2);
  const auto cos_f2 = right_cosets(MatrixGroup(RingParams(2, 3), 2, 1)).size();
  const auto cos_f3 = right_cosets(MatrixGroup(RingParams(3, 2), 2, 1)).size();
  const bool ok = n_f2 == 6 && n_f3 == 48 && n_z9 == 3888 && gl_order(2, 2) == 6 && gl_order(2, 3) == 48 &&
                  group_index(2, 2, 1, 1) == 6 && group_index(2, 3, 1, 1) == 48 && group_index(2, 3, 1, 2) == 3888 &&
                  cos_f2 == 6 && cos_f3 == 48;
  return {ok, fmt("enumerated |GL2(F2)| = %llu, |GL2(F3)| = %llu, |GL2(Z/9)| = %llu; index formula 6, 48, 3888; "
                  "coset enumeration %zu, %zu",
                  static_cast<unsigned long long>(n_f2), static_cast<unsigned long long>(n_f3),
                  static_cast<unsigned long long>(n_z9), cos_f2, cos_f3)};
}

BarChain<OMatrix> unit_chain(const RingParams& r, int n, const RingElem& u) {
  OMatrix g = OMatrix::identity(r, n);
  g.set(0, 0, u);
  BarChain<OMatrix> c{1, {}};
  c.add({g}, 1);
  return c;
}

Outcome s1_regulator(std::mt19937_64& rng) {
  long bad = 0, sign_bad = 0;
  for (u64 p : {3, 5}) {
    RegulatorConfig cfg;
    cfg.p = p;
    cfg.target = 8;
    const RingParams r(p, regulator_precision(cfg));
    const MatrixGroup g(r, 1, 1);
    for (int i = 0; i < 20; ++i) {
      RingElem u(r);
      do u = testsupport::random_elem(r, rng);
      while (!u.is_unit());
      const QpElem value = regulator_nf(cfg, g, unit_chain(r, 1, u));
      const QpElem want = extend_log(u);
      if (defect_valuation(value, want) < 8) ++bad;
      if (defect_valuation(hat_r(1, value), -want) < 8) ++sign_bad;
    }
  }
  RegulatorConfig c1;
  c1.p = 3;
  c1.target = 6;
  RegulatorConfig c2 = c1;
  c2.n = 2;
  const RingParams r(3, std::max(regulator_precision(c1), regulator_precision(c2)));
  std::int64_t worst = kInfiniteValuation;
  for (int i = 0; i < 5; ++i) {
    RingElem u(r);
    do u = testsupport::random_elem(r, rng);
    while (!u.is_unit());
    const auto c = unit_chain(r, 1, u);
    worst = std::min(worst, defect_valuation(regulator_nf(c1, MatrixGroup(r, 1, 1), c),
                                             regulator_nf(c2, MatrixGroup(r, 2, 1), block_embed(c, 2))));
  }
  return {bad == 0 && sign_bad == 0 && worst >= 6,
          fmt("transfer-then-pair = extend_log mod p^8 for 40 units (p = 3, 5): %ld mismatches; "
              "normalised value = -extend_log under pair(1 (x) (1,u)) = +log u: %ld mismatches; "
              "R_1 vs R_2 o i_* at p = 3: min defect %lld (need >= 6)",
              bad, sign_bad, static_cast<long long>(worst))};
}

Outcome product_formula(std::mt19937_64& rng) {
  long bad = 0, cases = 0;
  std::int64_t worst = kInfiniteValuation;
  for (u64 p : {3, 5, 7})
    for (int i = 0; i < 500; ++i) {
      mpq_class x;
      do {
        x = mpq_class(static_cast<long>(rng() % 2'000'001) - 1'000'000, 1 + rng() % 1'000'000);
        x.canonicalize();
      } while (x == 0);
      const auto pf = product_formula_check(x, p, 8);
      if (!pf.exact_one || !pf.finite_times_sign_one) ++bad;
      worst = std::min(worst, pf.log_sum_valuation);
      ++cases;
    }
  return {bad == 0 && worst >= 8,
          fmt("%ld random rationals over p = 3, 5, 7: %ld products != 1 (exact); min log-sum valuation %lld (need >= 8)",
              cases, bad, static_cast<long long>(worst))};
}

// ---------------------------------------------------------------- 13

Outcome truncation_stability() {
  long bad = 0;
  std::int64_t worst = kInfiniteValuation;
  for (const auto& ev : g_evaluated) {
    EvalOptions wide;
    wide.degree_cap = eval_degree_cap(ev.target, ev.tuple.e, ev.tuple.s, ev.tuple.params.prime()) + kSlack;
    const QpElem again = cocycle_eval(ev.tuple, ev.target, wide).value;
    const std::int64_t v = defect_valuation(ev.value, again);
    worst = std::min(worst, v);
    if (v < ev.target) ++bad;
  }
  return {bad == 0, fmt("%zu tuples from criteria 4-7 at caps D and D+5: %ld disagreements, min agreement valuation %lld",
                        g_evaluated.size(), bad, static_cast<long long>(worst))};
}

}  // namespace

int main() {
  std::mt19937_64 rng(20240611);
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"simplex oracle equivalence", simplex_oracle},
      {"Stokes suite", stokes_suite},
      {"factorial valuation", factorial_valuations},
      {"s=1 log reduction", [&] { return s1_log(rng); }},
      {"cocycle condition", [&] { return cocycle_condition(rng); }},
      {"bi-invariance and conjugation invariance", [&] { return invariance(rng); }},
      {"Galois equivariance", [&] { return galois(rng); }},
      {"ideal annihilation", [&] { return ideal_annihilation(rng); }},
      {"transfer chain map", [&] { return transfer_chain_map(rng); }},
      {"index formula", index_formula},
      {"s=1 regulator pipeline", [&] { return s1_regulator(rng); }},
      {"product formula", [&] { return product_formula(rng); }},
      {"truncation stability", truncation_stability},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception& ex) {
      out = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failed;
    std::printf("[%s] %2zu %s: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, out.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
