#include "padicreg/selftest.hpp"

#include <functional>
#include <random>

#include "padicreg/regulator.hpp"
#include "padicreg/simplex.hpp"

namespace padicreg {

namespace {

OMatrix random_congruent(const RingParams& params, int n, int e, std::mt19937_64& rng) {
  OMatrix g = OMatrix::identity(params, n);
  const u64 pe = params.p_power(e);
  auto data = g.data();
  for (auto& c : data) c = params.add_mod(c, params.mul_mod(pe, rng() % params.order()));
  return g;
}

}  // namespace

std::vector<SelftestResult> run_selftest(unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<SelftestResult> out;
  auto check = [&](const std::string& name, const std::function<std::string()>& body) {
    try {
      const std::string detail = body();
      out.push_back({name, detail.empty(), detail.empty() ? "ok" : detail});
    } catch (const std::exception& ex) {
      out.push_back({name, false, ex.what()});
    }
  };

  check("factorial_valuation", [] {
    for (u64 p : {2, 3, 5, 7}) {
      for (u64 l = 0; l <= 2000; ++l) {
        u64 legendre = 0;
        for (u64 q = p; q <= l; q *= p) legendre += l / q;
        if (legendre != factorial_valuation(l, p)) return std::string("mismatch at l = ") + std::to_string(l);
      }
    }
    return std::string();
  });

  check("log_homomorphism", [&] {
    const RingParams params(5, 10);
    for (int i = 0; i < 20; ++i) {
      const RingElem u = RingElem::from_int(params, static_cast<std::int64_t>(1 + 5 * (rng() % 100000)));
      const RingElem v = RingElem::from_int(params, static_cast<std::int64_t>(1 + 5 * (rng() % 100000)));
      if (defect_valuation(padic_log(u * v), padic_log(u) + padic_log(v)) < 8) return std::string("log(uv) != log u + log v");
    }
    return std::string();
  });

  check("frobenius_order", [&] {
    const RingParams params(3, 8, {1, 0, 1});
    const Frobenius frob(params);
    for (int i = 0; i < 10; ++i) {
      const RingElem x(params, {rng() % params.order(), rng() % params.order()});
      if (!(frob(frob(x)) == x)) return std::string("frobenius^2 != id");
    }
    return std::string();
  });

  check("simplex_oracle", [] {
    for (int n = 1; n <= 3; ++n)
      for (int a0 = 0; a0 <= 2; ++a0)
        for (int a1 = 0; a1 <= 2; ++a1) {
          std::vector<int> a(static_cast<std::size_t>(n + 1), 0);
          a[0] = a0;
          a[1] = a1;
          if (simplex::iterated_integral_oracle(a, n, n) != simplex::integrate_monomial(a, 0, n))
            return std::string("oracle mismatch");
        }
    return std::string();
  });

  check("stokes", [] {
    for (int u = 0; u < 5; ++u)
      for (int v = u + 1; v < 5; ++v)
        for (int k = 0; k < 5; ++k) {
          std::vector<int> a(5, 0);
          a[static_cast<std::size_t>(k)] = 2;
          const auto sides = simplex::stokes_check(a, u, v);
          if (sides.boundary != sides.interior) return std::string("stokes mismatch");
        }
    return std::string();
  });

  check("cocycle_s1_log", [&] {
    const RingParams params(5, 12);
    for (int i = 0; i < 5; ++i) {
      GroupTuple t{params, 1, 1, {random_congruent(params, 1, 1, rng), random_congruent(params, 1, 1, rng)}};
      const QpElem value = cocycle_eval(t, 6).value;
      const RingElem ratio = t.elems[1].at(0, 0) * t.elems[0].at(0, 0).inverse();
      if (defect_valuation(value, padic_log(ratio)) < 6) return std::string("cocycle != log of the ratio");
    }
    return std::string();
  });

  check("transfer_chain_map", [&] {
    const auto cosets = right_cosets(PermutationGroup::alternating_in_symmetric(3));
    const auto elems = cosets.group().elements();
    for (int i = 0; i < 20; ++i) {
      BarChain<PermutationGroup::Elem> c{2, {}};
      for (int k = 0; k < 3; ++k)
        c.add({elems[rng() % elems.size()], elems[rng() % elems.size()]}, static_cast<std::int64_t>(rng() % 7) - 3);
      if (!check_chain_map(cosets, c)) return std::string("d T != T d");
    }
    return std::string();
  });

  check("index_formula", [] {
    if (group_index(2, 3, 1, 2) != 3888 || gl_order(2, 2) != 6) return std::string("index mismatch");
    return std::string();
  });

  check("product_formula", [&] {
    for (int i = 0; i < 20; ++i) {
      const mpq_class x(static_cast<long>(rng() % 2000) - 1000 + (i == 0), static_cast<unsigned long>(1 + rng() % 999));
      if (x == 0) continue;
      const auto pf = product_formula_check(x, 7, 6);
      if (!pf.exact_one || pf.log_sum_valuation < 6) return std::string("product formula fails");
    }
    return std::string();
  });
  return out;
}

}  // namespace padicreg
