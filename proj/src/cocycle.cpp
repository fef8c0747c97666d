#include "padicreg/cocycle.hpp"

namespace padicreg {

void GroupTuple::validate(std::size_t expected_length) const {
  check_convergence(params.prime(), e);
  if (s < 1 || 2 * s > kMaxVariables) throw PreconditionError("s must lie in 1..4");
  if (elems.size() != expected_length)
    throw PreconditionError("tuple needs " + std::to_string(expected_length) + " elements, got " +
                            std::to_string(elems.size()));
  for (std::size_t i = 0; i < elems.size(); ++i) {
    require_same(params, elems[i].params(), "tuple");
    if (elems[i].size() != matrix_size()) throw PreconditionError("tuple matrices differ in size");
    if (!elems[i].congruent_to_identity(e))
      throw PreconditionError("element " + std::to_string(i) + " is not congruent to 1 mod p^" + std::to_string(e));
  }
}

GroupTuple GroupTuple::without(std::size_t i) const {
  GroupTuple r = *this;
  r.elems.erase(r.elems.begin() + static_cast<std::ptrdiff_t>(i));
  return r;
}

GroupTuple GroupTuple::to_params(const RingParams& target) const {
  GroupTuple r{target, s, e, {}};
  for (const auto& g : elems) r.elems.push_back(g.to_params(target));
  return r;
}

int eval_degree_cap(int target, int e, int s, u64 p, const EvalOptions& opts) {
  if (opts.degree_cap >= 0) return opts.degree_cap;
  return truncation_degree(target, e, s, p);
}

int eval_work_precision(int target, int e, int s, u64 p, const EvalOptions& opts) {
  const int cap = eval_degree_cap(target, e, s, p, opts);
  return target + static_cast<int>(factorial_valuation(static_cast<u64>(cap + 2 * s - 1), p)) + opts.extra_precision;
}

FormSeries build_nu(const GroupTuple& t, int degree_cap) {
  t.validate(static_cast<std::size_t>(2 * t.s));
  const int n = t.matrix_size();
  const OMatrix one = OMatrix::identity(t.params, n);
  FormSeries nu = FormSeries::constant(t.s, degree_cap, one, t.e);
  for (int i = 0; i < 2 * t.s; ++i) {
    FormKey k;
    k.exponents[static_cast<std::size_t>(i)] = 1;
    nu.add_term(k, t.elems[static_cast<std::size_t>(i)] - one);
  }
  return nu;
}

EvalResult cocycle_eval(const GroupTuple& t, int target, const EvalOptions& opts) {
  if (target < 1) throw PreconditionError("target precision must be >= 1");
  t.validate(static_cast<std::size_t>(2 * t.s));
  const u64 p = t.params.prime();
  EvalResult out{QpElem::exact_zero(t.params), eval_degree_cap(target, t.e, t.s, p, opts),
                 eval_work_precision(target, t.e, t.s, p, opts)};
  if (t.params.precision() < out.work_precision)
    throw PreconditionError("tuple known to " + std::to_string(t.params.precision()) + " digits; evaluation needs " +
                            std::to_string(out.work_precision));
  const GroupTuple w = t.to_params(t.params.with_precision(out.work_precision));
  const FormSeries nu = build_nu(w, out.degree_cap);
  const FormSeries inv = form_inverse_one_plus(nu);
  const FormSeries dnu = form_d(nu);
  const FormSeries omega = form_wedge(inv, dnu);
  FormSeries power = omega;
  for (int k = 1; k < 2 * t.s - 1; ++k) {
    // dnu has only 2s constant terms, so the products with it are cheap.
    power = opts.literal_power ? form_wedge(power, omega) : form_wedge(form_wedge(power, inv), dnu);
  }
  out.value = phi(power).with_absolute_precision(target);
  return out;
}

std::int64_t cocycle_defect(const GroupTuple& t, int target, const EvalOptions& opts) {
  t.validate(static_cast<std::size_t>(2 * t.s + 1));
  QpElem sum = QpElem::exact_zero(t.params.with_precision(eval_work_precision(target, t.e, t.s, t.params.prime(), opts)));
  for (std::size_t i = 0; i < t.elems.size(); ++i) {
    const QpElem v = cocycle_eval(t.without(i), target, opts).value.to_params(sum.params());
    sum = i % 2 ? sum - v : sum + v;
  }
  return sum.valuation();
}

std::int64_t invariance_defect(const GroupTuple& t, const OMatrix& y1, const OMatrix& y2, InvarianceMode mode,
                               int target, const EvalOptions& opts) {
  t.validate(static_cast<std::size_t>(2 * t.s));
  GroupTuple moved = t;
  if (mode == InvarianceMode::kTranslate) {
    if (!y1.congruent_to_identity(t.e) || !y2.congruent_to_identity(t.e))
      throw PreconditionError("translation factors must be congruent to 1 mod p^e");
    for (auto& g : moved.elems) g = y1 * g * y2;
  } else {
    const OMatrix inv = y1.inverse();
    for (auto& g : moved.elems) g = y1 * g * inv;
  }
  moved.validate(t.elems.size());
  if (moved.elems == t.elems) return kInfiniteValuation;
  return defect_valuation(cocycle_eval(moved, target, opts).value, cocycle_eval(t, target, opts).value);
}

std::int64_t galois_defect(const GroupTuple& t, int target, const EvalOptions& opts) {
  if (t.params.degree() < 2) throw PreconditionError("Galois check needs an extension of degree >= 2");
  const Frobenius frob(t.params);
  GroupTuple moved = t;
  for (auto& g : moved.elems) {
    OMatrix h(t.params, g.size());
    for (int i = 0; i < g.size(); ++i)
      for (int j = 0; j < g.size(); ++j) h.set(i, j, frob(g.at(i, j)));
    g = h;
  }
  if (moved.elems == t.elems) return kInfiniteValuation;
  const QpElem base = cocycle_eval(t, target, opts).value;
  const QpElem lhs = Frobenius(base.params())(base);
  return defect_valuation(lhs, cocycle_eval(moved, target, opts).value);
}

}  // namespace padicreg
