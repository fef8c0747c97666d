#include "padicreg/regulator.hpp"

#include <algorithm>

namespace padicreg {

namespace {

mpz_class pow_ui(const mpz_class& b, unsigned long k) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), k);
  return r;
}

mpz_class factorial(int k) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

}  // namespace

void RegulatorConfig::validate() const {
  check_convergence(p, e);
  if (s < 1 || 2 * s > kMaxVariables) throw PreconditionError("s must lie in 1..4");
  if (n < 1) throw PreconditionError("N must be >= 1");
  if (target < 1) throw PreconditionError("target must be >= 1");
}

mpz_class gl_order(int n, const mpz_class& q) {
  if (n < 1 || q < 2) throw PreconditionError("gl_order needs N >= 1 and q >= 2");
  const mpz_class qn = pow_ui(q, static_cast<unsigned long>(n));
  mpz_class r = 1;
  for (int i = 0; i < n; ++i) r *= qn - pow_ui(q, static_cast<unsigned long>(i));
  return r;
}

mpz_class group_index(int n, u64 p, int d, int e, int eps) {
  if (d < 1 || e < 1 || eps < 1) throw PreconditionError("index needs d, e, eps >= 1");
  const mpz_class pz(static_cast<unsigned long>(p));
  return gl_order(n, pow_ui(pz, static_cast<unsigned long>(d))) *
         pow_ui(pz, static_cast<unsigned long>(n * n * d * (e * eps - 1)));
}

int pairing_precision(const RegulatorConfig& cfg, int target) {
  return eval_work_precision(target, cfg.e, cfg.s, cfg.p);
}

QpElem pair(const RegulatorConfig& cfg, const MatrixGroup& group, const BarChain<OMatrix>& c, int target,
            bool require_cycle) {
  cfg.validate();
  if (c.degree != 2 * cfg.s - 1) throw PreconditionError("pairing needs a chain of degree 2s-1");
  if (require_cycle && !bar_differential(group, c).is_zero()) throw PreconditionError("chain is not a cycle");
  const RingParams work = group.params().with_precision(eval_work_precision(target, cfg.e, cfg.s, cfg.p));
  QpElem total = QpElem::exact_zero(work);
  for (const auto& [g, coeff] : c.terms) {
    GroupTuple t{group.params(), cfg.s, cfg.e, {group.identity()}};
    t.elems.insert(t.elems.end(), g.begin(), g.end());
    const QpElem v = cocycle_eval(t, target, {}).value.to_params(work);
    total += v * rational_to_qp(mpq_class(static_cast<long>(coeff)), work);
  }
  return total.with_absolute_precision(target);
}

int regulator_precision(const RegulatorConfig& cfg) {
  const mpz_class idx = group_index(cfg.n, cfg.p, cfg.d, cfg.e);
  return pairing_precision(cfg, cfg.target + mpz_valuation(idx, cfg.p));
}

QpElem regulator_nf(const RegulatorConfig& cfg, const MatrixGroup& group, const BarChain<OMatrix>& c) {
  cfg.validate();
  const mpz_class idx = group_index(cfg.n, cfg.p, cfg.d, cfg.e);
  if (idx > kMaxEnumeratedIndex)
    throw PreconditionError("index " + idx.get_str() + " exceeds the enumeration limit " +
                            std::to_string(kMaxEnumeratedIndex));
  if (!bar_differential(group, c).is_zero()) throw PreconditionError("chain is not a cycle");
  const auto cosets = right_cosets(group);
  if (mpz_class(static_cast<unsigned long>(cosets.size())) != idx)
    throw PreconditionError("coset enumeration disagrees with the index formula");
  const int lifted = cfg.target + mpz_valuation(idx, cfg.p);
  const QpElem paired = pair(cfg, group, transfer(cosets, c), lifted, false);
  return (paired * rational_to_qp(mpq_class(1, idx), paired.params())).with_absolute_precision(cfg.target);
}

mpq_class normalization_constant(int s) {
  if (s < 1) throw PreconditionError("s must be >= 1");
  mpq_class r(factorial(s - 1), factorial(2 * s - 2) * factorial(2 * s - 1));
  r.canonicalize();
  return s % 2 ? mpq_class(-r) : r;
}

QpElem hat_r(int s, const QpElem& value) { return value * rational_to_qp(normalization_constant(s), value.params()); }

OMatrix block_embed(const OMatrix& g, int n) {
  if (n < g.size()) throw PreconditionError("block embedding into a smaller size");
  OMatrix r = OMatrix::identity(g.params(), n);
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) r.set(i, j, g.at(i, j));
  return r;
}

BarChain<OMatrix> block_embed(const BarChain<OMatrix>& c, int n) {
  BarChain<OMatrix> out{c.degree, {}};
  for (const auto& [g, coeff] : c.terms) {
    std::vector<OMatrix> t;
    for (const auto& x : g) t.push_back(block_embed(x, n));
    out.add(t, coeff);
  }
  return out;
}

// ------------------------------------------------------- absolute values

PlaceValue abs_value_q(const mpq_class& x, std::optional<u64> place, u64 p, int precision) {
  if (x == 0) throw PreconditionError("absolute value of zero");
  PlaceValue out;
  out.place = place;
  if (!place) {
    out.sign = x > 0 ? 1 : -1;
    out.exact = out.sign;
    return out;
  }
  const u64 l = *place;
  const RingParams params(p, precision);
  const mpz_class lz(static_cast<unsigned long>(l));
  mpz_class num_rest, den_rest;
  const auto vn = static_cast<long>(mpz_remove(num_rest.get_mpz_t(), x.get_num_mpz_t(), lz.get_mpz_t()));
  const auto vd = static_cast<long>(mpz_remove(den_rest.get_mpz_t(), x.get_den_mpz_t(), lz.get_mpz_t()));
  const long v = vn - vd;
  if (l == p) {
    // The unit part x p^-v.
    out.exact = mpq_class(num_rest, den_rest);
    out.exact.canonicalize();
  } else {
    const mpz_class lv = pow_ui(lz, static_cast<unsigned long>(v < 0 ? -v : v));
    out.exact = v < 0 ? mpq_class(lv) : mpq_class(1, lv);
    out.exact.canonicalize();
  }
  out.value = rational_to_qp(out.exact, params);
  return out;
}

std::vector<PlaceValue> all_places(const mpq_class& x, u64 p, int precision) {
  if (x == 0) throw PreconditionError("absolute value of zero");
  std::vector<u64> primes{p};
  for (const mpz_class& part : {mpz_class(abs(x.get_num())), mpz_class(x.get_den())}) {
    mpz_class rest = part;
    for (unsigned long q = 2; rest > 1; ++q) {
      if (static_cast<unsigned long>(q) * q > 1'000'000'000'000UL) throw PreconditionError("factorisation too large");
      if (mpz_class(q) * q > rest) {
        if (!rest.fits_ulong_p()) throw PreconditionError("factorisation too large");
        primes.push_back(rest.get_ui());
        break;
      }
      if (rest % q != 0) continue;
      primes.push_back(q);
      while (rest % q == 0) rest /= q;
    }
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<PlaceValue> out;
  for (u64 l : primes) out.push_back(abs_value_q(x, l, p, precision));
  out.push_back(abs_value_q(x, std::nullopt, p, precision));
  return out;
}

ProductFormula product_formula_check(const mpq_class& x, u64 p, int target) {
  ProductFormula out;
  // The log loses guard digits; widen the working ring until the log-sum is
  // known to `target` digits or found to be nonzero.
  for (int work = target;; ++work) {
    const auto places = all_places(x, p, work);
    mpq_class all = 1, finite = 1;
    QpElem log_sum = QpElem::exact_zero(RingParams(p, work));
    for (const auto& pv : places) {
      all *= pv.exact;
      if (!pv.place) continue;
      finite *= pv.exact;
      if (pv.value->valuation() != 0) throw PreconditionError("absolute value is not a p-adic unit");
      log_sum += extend_log(pv.value->unit());
    }
    out.exact_one = all == 1;
    out.finite_times_sign_one = finite * (x > 0 ? 1 : -1) == 1;
    out.log_sum_valuation = log_sum.valuation();
    if (!log_sum.is_zero() || log_sum.valuation() >= target) break;
  }
  out.log_sum_valuation = std::min<std::int64_t>(out.log_sum_valuation, target);
  return out;
}

}  // namespace padicreg
