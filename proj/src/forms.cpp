#include <bit>
#include <sstream>

#include "padicreg/kernels.hpp"
#include "padicreg/matforms.hpp"

namespace padicreg {

int FormKey::degree() const {
  int deg = 0;
  for (auto a : exponents) deg += a;
  return deg;
}

int FormKey::form_degree() const { return std::popcount(wedge); }

FormKey make_key(std::span<const int> exponents, std::span<const int> wedge_indices) {
  if (exponents.size() > kMaxVariables) throw PreconditionError("too many variables for a form key");
  FormKey key;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0 || exponents[i] > 255) throw PreconditionError("exponent out of range");
    key.exponents[i] = static_cast<std::uint8_t>(exponents[i]);
  }
  for (int j : wedge_indices) {
    if (j < 0 || j >= static_cast<int>(kMaxVariables)) throw PreconditionError("wedge index out of range");
    const auto bit = static_cast<std::uint16_t>(1u << j);
    if (key.wedge & bit) throw PreconditionError("repeated dx index in form key");
    key.wedge |= bit;
  }
  return key;
}

int shuffle_sign(std::uint16_t s1, std::uint16_t s2) {
  if (s1 & s2) return 0;
  // Count pairs (i in S1, j in S2) with i > j.
  int inversions = 0;
  for (unsigned rest = s2; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    inversions += std::popcount(static_cast<unsigned>(s1) >> (j + 1));
  }
  return inversions % 2 ? -1 : 1;
}

// ---------------------------------------------------------------- FormSeries

FormSeries::FormSeries(int s, int n, RingParams params, int degree_cap, int level)
    : s_(s), n_(n), params_(std::move(params)), cap_(degree_cap), level_(level) {
  if (s < 1 || 2 * s > kMaxVariables) throw PreconditionError("form series need 1 <= s <= 4");
  if (degree_cap < 0) throw PreconditionError("degree cap must be >= 0");
}

FormSeries FormSeries::constant(int s, int degree_cap, const OMatrix& c, int level) {
  FormSeries f(s, c.size(), c.params(), degree_cap, level);
  if (!c.is_zero()) f.terms_.emplace(FormKey{}, c);
  return f;
}

void FormSeries::add_term(const FormKey& key, const OMatrix& c) {
  if (key.degree() > cap_) return;
  if (c.size() != n_) throw PreconditionError("coefficient dimension mismatch");
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void FormSeries::insert_term(const FormKey& key, OMatrix c) {
  if (key.degree() > cap_ || c.is_zero()) return;
  terms_.emplace_hint(terms_.end(), key, std::move(c));
}

void FormSeries::require_compatible(const FormSeries& o, const char* op) const {
  if (s_ != o.s_ || n_ != o.n_ || cap_ != o.cap_)
    throw PreconditionError(std::string("incompatible form series in ") + op);
  require_same(params_, o.params_, op);
}

FormSeries& FormSeries::operator+=(const FormSeries& o) {
  require_compatible(o, "form add");
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

FormSeries FormSeries::operator+(const FormSeries& o) const {
  FormSeries r(*this);
  r += o;
  return r;
}

FormSeries FormSeries::operator-() const {
  FormSeries r(s_, n_, params_, cap_, level_);
  for (const auto& [k, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), k, -c);
  return r;
}

FormSeries FormSeries::operator-(const FormSeries& o) const { return *this + (-o); }

bool FormSeries::operator==(const FormSeries& o) const {
  return s_ == o.s_ && n_ == o.n_ && cap_ == o.cap_ && params_ == o.params_ && terms_ == o.terms_;
}

FormSeries FormSeries::with_degree_cap(int cap) const {
  FormSeries r(s_, n_, params_, cap, level_);
  for (const auto& [k, c] : terms_)
    if (k.degree() <= cap) r.terms_.emplace_hint(r.terms_.end(), k, c);
  return r;
}

std::string FormSeries::dump() const {
  std::ostringstream os;
  for (const auto& [k, c] : terms_) {
    os << "x^(";
    for (int i = 0; i < variables(); ++i) os << (i ? "," : "") << int(k.exponents[static_cast<std::size_t>(i)]);
    os << ")";
    for (int i = 0; i < variables(); ++i)
      if (k.wedge & (1u << i)) os << " dx" << i;
    os << " : " << c.to_string() << "\n";
  }
  return os.str();
}

// ------------------------------------------------------------------ algebra

FormSeries form_wedge(const FormSeries& f, const FormSeries& g) { return kernels::wedge_parallel(f, g); }

FormSeries form_d(const FormSeries& f) {
  FormSeries r(f.s(), f.matrix_size(), f.params(), f.degree_cap(), f.level());
  for (const auto& [k, c] : f.terms()) {
    for (int j = 0; j < f.variables(); ++j) {
      const int a = k.exponents[static_cast<std::size_t>(j)];
      const auto bit = static_cast<std::uint16_t>(1u << j);
      if (a == 0 || (k.wedge & bit)) continue;
      FormKey out = k;
      out.exponents[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(a - 1);
      out.wedge |= bit;
      const int before = std::popcount(static_cast<unsigned>(k.wedge) & (bit - 1u));
      r.add_term(out, c.scaled(before % 2 ? -a : a));
    }
  }
  return r;
}

FormSeries form_inverse_one_plus(const FormSeries& nu) {
  const OMatrix one = OMatrix::identity(nu.params(), nu.matrix_size());
  FormSeries minus_b(nu.s(), nu.matrix_size(), nu.params(), nu.degree_cap(), nu.level());
  for (const auto& [k, c] : nu.terms()) {
    if (k.wedge != 0) throw PreconditionError("series inverse needs a 0-form");
    if (k == FormKey{}) {
      if (!(c == one)) throw PreconditionError("series inverse needs constant term 1");
      continue;
    }
    minus_b.add_term(k, -c);
  }
  if (nu.terms().find(FormKey{}) == nu.terms().end())
    throw PreconditionError("series inverse needs constant term 1");

  // Every power of B raises the x-degree, so the sum stops at the cap.
  FormSeries sum = FormSeries::constant(nu.s(), nu.degree_cap(), one, nu.level());
  FormSeries term = sum;
  for (int k = 1; k <= nu.degree_cap(); ++k) {
    term = form_wedge(term, minus_b);
    if (term.empty()) break;
    sum += term;
  }
  return sum;
}

mpq_class factorial_ratio(std::span<const int> exponents, int shift) {
  mpz_class num = 1;
  int total = 0;
  for (int a : exponents) {
    mpz_class fa;
    mpz_fac_ui(fa.get_mpz_t(), static_cast<unsigned long>(a));
    num *= fa;
    total += a;
  }
  mpz_class den;
  mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(total + shift));
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

QpElem phi(const FormSeries& f) {
  const RingParams& params = f.params();
  const int n = f.variables();
  const int top = n - 1;
  const auto full = static_cast<std::uint16_t>((1u << n) - 1);
  const auto loss = static_cast<std::int64_t>(
      factorial_valuation(static_cast<u64>(f.degree_cap() + top), params.prime()));
  QpElem total = QpElem::zero(params, params.precision() - loss);

  auto flush = [&](const FormKey& key, const RingElem& t) {
    if (t.is_zero()) return;
    std::vector<int> a(key.exponents.begin(), key.exponents.begin() + n);
    total += QpElem::from_integral(t) * rational_to_qp(factorial_ratio(a, top), params);
  };

  // Keys sharing an exponent vector are adjacent in map order.
  const FormKey* current = nullptr;
  RingElem acc(params);
  for (const auto& [k, c] : f.terms()) {
    if (k.form_degree() != top)
      throw PreconditionError("phi needs a pure (2s-1)-form; found a term of degree " +
                              std::to_string(k.form_degree()));
    if (current && current->exponents != k.exponents) {
      flush(*current, acc);
      acc = RingElem(params);
    }
    current = &k;
    const int u = std::countr_zero(static_cast<unsigned>(full ^ k.wedge));
    const RingElem tr = c.trace();
    if (u % 2) acc -= tr;
    else acc += tr;
  }
  if (current) flush(*current, acc);
  return total;
}

std::vector<mpq_class> phi_rational(const FormSeries& f) {
  const RingParams& params = f.params();
  const int n = f.variables();
  const int top = n - 1;
  const auto full = static_cast<std::uint16_t>((1u << n) - 1);
  const u64 order = params.order();
  std::vector<mpq_class> total(static_cast<std::size_t>(params.degree()), 0);
  for (const auto& [k, c] : f.terms()) {
    if (k.form_degree() != top)
      throw PreconditionError("phi needs a pure (2s-1)-form; found a term of degree " +
                              std::to_string(k.form_degree()));
    const int u = std::countr_zero(static_cast<unsigned>(full ^ k.wedge));
    std::vector<int> a(k.exponents.begin(), k.exponents.begin() + n);
    const mpq_class ratio = factorial_ratio(a, top);
    const RingElem tr = c.trace();
    for (int i = 0; i < params.degree(); ++i) {
      const u64 r = tr.coeff(i);
      mpz_class lift(static_cast<unsigned long>(r));
      if (r > order / 2) lift -= mpz_class(static_cast<unsigned long>(order));
      total[static_cast<std::size_t>(i)] += (u % 2 ? -1 : 1) * lift * ratio;
    }
  }
  return total;
}

}  // namespace padicreg
