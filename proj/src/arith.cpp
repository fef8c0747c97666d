#include "padicreg/arith.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace padicreg {

namespace {

constexpr int kMaxDegree = 16;
constexpr u64 kMaxOrder = u64{1} << 62;

bool is_prime(u64 p) {
  if (p < 2) return false;
  for (u64 q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

// Remainder of f modulo a monic g, both over F_p (little-endian).
std::vector<u64> poly_rem_fp(std::vector<u64> f, const std::vector<u64>& g, u64 p) {
  const std::size_t dg = g.size() - 1;
  for (std::size_t k = f.size(); k-- > dg;) {
    const u64 c = f[k] % p;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dg; ++i) {
      const u64 sub = static_cast<u64>(static_cast<u128>(c) * g[i] % p);
      f[k - dg + i] = (f[k - dg + i] + p - sub) % p;
    }
  }
  f.resize(dg);
  return f;
}

bool irreducible_mod_p(const std::vector<std::int64_t>& f, u64 p) {
  const int d = static_cast<int>(f.size()) - 1;
  std::vector<u64> fp(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::int64_t r = f[i] % static_cast<std::int64_t>(p);
    fp[i] = static_cast<u64>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
  }
  for (int k = 1; k <= d / 2; ++k) {
    u64 count = 1;
    for (int i = 0; i < k; ++i) {
      if (count > 10'000'000 / p) throw PreconditionError("irreducibility check too large for brute force");
      count *= p;
    }
    std::vector<u64> g(static_cast<std::size_t>(k) + 1, 0);
    g[static_cast<std::size_t>(k)] = 1;
    for (u64 idx = 0; idx < count; ++idx) {
      u64 rest = idx;
      for (int i = 0; i < k; ++i) {
        g[static_cast<std::size_t>(i)] = rest % p;
        rest /= p;
      }
      const auto r = poly_rem_fp(fp, g, p);
      if (std::all_of(r.begin(), r.end(), [](u64 c) { return c == 0; })) return false;
    }
  }
  return true;
}

int floor_log(u64 k, u64 p) {
  int r = 0;
  while (k >= p) {
    k /= p;
    ++r;
  }
  return r;
}

u64 mpz_to_u64(const mpz_class& x) {
  return static_cast<u64>(mpz_get_ui(x.get_mpz_t()));
}

mpz_class u64_to_mpz(u64 x) {
  mpz_class r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &x);
  return r;
}

}  // namespace

// ---------------------------------------------------------------- RingParams

RingParams::RingParams(u64 p, int precision, std::vector<std::int64_t> modulus) {
  if (!is_prime(p)) throw PreconditionError("p = " + std::to_string(p) + " is not prime");
  if (precision < 1) throw PreconditionError("precision M must be >= 1");
  auto data = std::make_shared<Data>();
  data->p = p;
  data->precision = precision;
  data->powers.push_back(1);
  for (int k = 1; k <= precision; ++k) {
    if (data->powers.back() > kMaxOrder / p)
      throw PreconditionError("p^M exceeds the 62-bit coefficient range (p = " +
                              std::to_string(p) + ", M = " + std::to_string(precision) + ")");
    data->powers.push_back(data->powers.back() * p);
  }
  data->order = data->powers.back();

  if (modulus.size() <= 2) {
    data->degree = 1;
  } else {
    if (modulus.back() != 1) throw PreconditionError("modulus must be monic");
    data->degree = static_cast<int>(modulus.size()) - 1;
    if (data->degree > kMaxDegree)
      throw PreconditionError("unramified degree above " + std::to_string(kMaxDegree));
    if (!irreducible_mod_p(modulus, p))
      throw PreconditionError("modulus is not irreducible mod p");
    data->modulus = modulus;
    const auto order = static_cast<std::int64_t>(data->order);
    for (int i = 0; i < data->degree; ++i) {
      std::int64_t c = modulus[static_cast<std::size_t>(i)] % order;
      if (c < 0) c += order;
      data->neg_low.push_back(c == 0 ? 0 : data->order - static_cast<u64>(c));
    }
  }
  data_ = std::move(data);
}

u64 RingParams::p_power(int k) const {
  if (k < 0 || k > data_->precision) throw PreconditionError("p-power out of range");
  return data_->powers[static_cast<std::size_t>(k)];
}

RingParams RingParams::with_precision(int precision) const {
  if (precision == data_->precision) return *this;
  return RingParams(data_->p, precision, data_->modulus);
}

bool RingParams::same_field(const RingParams& other) const {
  return data_->p == other.data_->p && data_->degree == other.data_->degree &&
         data_->modulus == other.data_->modulus;
}

bool RingParams::operator==(const RingParams& other) const {
  return data_ == other.data_ ||
         (same_field(other) && data_->precision == other.data_->precision);
}

void RingParams::mul(const u64* a, const u64* b, u64* out) const {
  const int d = data_->degree;
  if (d == 1) {
    out[0] = mul_mod(a[0], b[0]);
    return;
  }
  std::array<u128, 2 * kMaxDegree - 1> acc{};
  const bool small = small_order();
  for (int i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      acc[static_cast<std::size_t>(i + j)] +=
          small ? static_cast<u128>(a[i] * b[j]) : static_cast<u128>(mul_mod(a[i], b[j]));
    }
  }
  fold(acc.data(), out);
}

void RingParams::fold(const u128* acc, u64* out) const {
  const int d = data_->degree;
  const u64 order = data_->order;
  if (d == 1) {
    out[0] = static_cast<u64>(acc[0] % order);
    return;
  }
  std::array<u64, 2 * kMaxDegree - 1> r{};
  for (int k = 0; k < 2 * d - 1; ++k) r[static_cast<std::size_t>(k)] = static_cast<u64>(acc[k] % order);
  for (int k = 2 * d - 2; k >= d; --k) {
    const u64 c = r[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    for (int i = 0; i < d; ++i) {
      auto& slot = r[static_cast<std::size_t>(k - d + i)];
      slot = static_cast<u64>((static_cast<u128>(c) * data_->neg_low[static_cast<std::size_t>(i)] + slot) % order);
    }
  }
  std::copy_n(r.begin(), d, out);
}

std::string RingParams::describe() const {
  std::ostringstream os;
  os << "p=" << data_->p << " M=" << data_->precision << " d=" << data_->degree;
  return os.str();
}

void require_same(const RingParams& a, const RingParams& b, const char* op) {
  if (!(a == b))
    throw PreconditionError(std::string("mismatched ring parameters in ") + op + " (" +
                            a.describe() + " vs " + b.describe() + ")");
}

// ------------------------------------------------------------------ RingElem

RingElem::RingElem(RingParams params)
    : params_(std::move(params)), coeffs_(static_cast<std::size_t>(params_.degree()), 0) {}

RingElem::RingElem(RingParams params, std::vector<u64> coeffs)
    : params_(std::move(params)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != static_cast<std::size_t>(params_.degree()))
    throw PreconditionError("RingElem needs exactly d coefficients");
  for (auto& c : coeffs_) c %= params_.order();
}

RingElem RingElem::from_int(const RingParams& params, std::int64_t value) {
  RingElem r(params);
  const auto order = static_cast<std::int64_t>(params.order());
  std::int64_t c = value % order;
  if (c < 0) c += order;
  r.coeffs_[0] = static_cast<u64>(c);
  return r;
}

RingElem RingElem::from_mpz(const RingParams& params, const mpz_class& value) {
  RingElem r(params);
  mpz_class m = value % u64_to_mpz(params.order());
  if (m < 0) m += u64_to_mpz(params.order());
  r.coeffs_[0] = mpz_to_u64(m);
  return r;
}

RingElem RingElem::from_mpz_coeffs(const RingParams& params, std::span<const mpz_class> coeffs) {
  if (coeffs.size() != static_cast<std::size_t>(params.degree()))
    throw PreconditionError("RingElem needs exactly d coefficients");
  RingElem r(params);
  const mpz_class order = u64_to_mpz(params.order());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    mpz_class m = coeffs[i] % order;
    if (m < 0) m += order;
    r.coeffs_[i] = mpz_to_u64(m);
  }
  return r;
}

RingElem RingElem::generator(const RingParams& params) {
  if (params.degree() < 2) throw PreconditionError("generator t requires d >= 2");
  RingElem r(params);
  r.coeffs_[1] = 1;
  return r;
}

bool RingElem::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](u64 c) { return c == 0; });
}

bool RingElem::is_one() const {
  if (coeffs_[0] != 1 % params_.order()) return false;
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](u64 c) { return c == 0; });
}

std::int64_t RingElem::valuation() const {
  std::int64_t best = kInfiniteValuation;
  const u64 p = params_.prime();
  for (u64 c : coeffs_) {
    if (c == 0) continue;
    std::int64_t v = 0;
    while (c % p == 0) {
      c /= p;
      ++v;
    }
    best = std::min(best, v);
  }
  return best;
}

RingElem RingElem::operator+(const RingElem& o) const {
  RingElem r(*this);
  r += o;
  return r;
}

RingElem RingElem::operator-(const RingElem& o) const {
  RingElem r(*this);
  r -= o;
  return r;
}

RingElem RingElem::operator*(const RingElem& o) const {
  require_same(params_, o.params_, "multiply");
  RingElem r(params_);
  params_.mul(coeffs_.data(), o.coeffs_.data(), r.coeffs_.data());
  return r;
}

RingElem RingElem::operator-() const {
  RingElem r(params_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = params_.neg_mod(coeffs_[i]);
  return r;
}

RingElem& RingElem::operator+=(const RingElem& o) {
  require_same(params_, o.params_, "add");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = params_.add_mod(coeffs_[i], o.coeffs_[i]);
  return *this;
}

RingElem& RingElem::operator-=(const RingElem& o) {
  require_same(params_, o.params_, "subtract");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = params_.sub_mod(coeffs_[i], o.coeffs_[i]);
  return *this;
}

RingElem& RingElem::operator*=(const RingElem& o) { return *this = *this * o; }

bool RingElem::operator==(const RingElem& o) const {
  return params_ == o.params_ && coeffs_ == o.coeffs_;
}

RingElem RingElem::scaled(std::int64_t k) const { return *this * from_int(params_, k); }

RingElem RingElem::pow(const mpz_class& exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  RingElem result = from_int(params_, 1);
  const auto bits = mpz_sizeinbase(exponent.get_mpz_t(), 2);
  for (std::size_t b = bits; b-- > 0;) {
    result *= result;
    if (mpz_tstbit(exponent.get_mpz_t(), b)) result *= *this;
  }
  return result;
}

RingElem RingElem::inverse() const {
  if (!is_unit()) throw PreconditionError("inverse of a non-unit " + to_string());
  if (params_.degree() == 1) {
    // Extended Euclid on (a, p^M).
    __int128 r0 = static_cast<__int128>(params_.order()), r1 = coeffs_[0];
    __int128 t0 = 0, t1 = 1;
    while (r1 != 0) {
      const __int128 q = r0 / r1;
      const __int128 r2 = r0 - q * r1;
      r0 = r1;
      r1 = r2;
      const __int128 t2 = t0 - q * t1;
      t0 = t1;
      t1 = t2;
    }
    if (t0 < 0) t0 += static_cast<__int128>(params_.order());
    RingElem r(params_);
    r.coeffs_[0] = static_cast<u64>(t0);
    return r;
  }
  // Inverse in the residue field F_q via x^(q-2), then Newton lifting.
  const RingParams residue = params_.with_precision(1);
  mpz_class q = 1;
  for (int i = 0; i < params_.degree(); ++i) q *= u64_to_mpz(params_.prime());
  RingElem y = to_params(residue).pow(q - 2).to_params(params_);
  const RingElem two = from_int(params_, 2);
  for (int it = 0; it < 80; ++it) {
    const RingElem xy = *this * y;
    if (xy.is_one()) return y;
    y = y * (two - xy);
  }
  throw PreconditionError("Newton inversion failed to converge");
}

RingElem RingElem::mul_p_power(int k) const {
  if (k >= params_.precision()) return RingElem(params_);
  const u64 pk = params_.p_power(k);
  RingElem r(params_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = params_.mul_mod(coeffs_[i], pk);
  return r;
}

RingElem RingElem::div_p_power(int k) const {
  if (k == 0) return *this;
  const u64 pk = params_.p_power(k);
  RingElem r(params_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] % pk != 0) throw PreconditionError("inexact division by p^k");
    r.coeffs_[i] = coeffs_[i] / pk;
  }
  return r;
}

RingElem RingElem::truncated(int m) const {
  if (m >= params_.precision()) return *this;
  RingElem r(params_);
  if (m <= 0) return r;
  const u64 pm = params_.p_power(m);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] % pm;
  return r;
}

RingElem RingElem::to_params(const RingParams& target) const {
  if (!params_.same_field(target)) throw PreconditionError("precision change across different fields");
  RingElem r(target);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] % target.order();
  return r;
}

std::vector<std::string> RingElem::to_strings() const {
  std::vector<std::string> out;
  out.reserve(coeffs_.size());
  for (u64 c : coeffs_) out.push_back(std::to_string(c));
  return out;
}

std::string RingElem::to_string() const {
  if (coeffs_.size() == 1) return std::to_string(coeffs_[0]);
  std::string s = "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(coeffs_[i]);
  }
  return s + "]";
}

// -------------------------------------------------------------------- QpElem

QpElem QpElem::exact_zero(const RingParams& params) { return QpElem(RingElem(params)); }

QpElem QpElem::zero(const RingParams& params, std::int64_t absolute_precision) {
  QpElem z{RingElem(params)};
  z.floor_ = absolute_precision;
  return z;
}

QpElem QpElem::from_integral(const RingElem& x, std::int64_t absolute_precision) {
  const int m = static_cast<int>(std::min<std::int64_t>(absolute_precision, x.params().precision()));
  if (m <= 0) return zero(x.params(), absolute_precision);
  const RingElem xt = x.truncated(m);
  if (xt.is_zero()) return zero(x.params(), m);
  const auto v = static_cast<int>(xt.valuation());
  QpElem r{xt.div_p_power(v)};
  r.zero_ = false;
  r.valuation_ = v;
  r.relative_ = m - v;
  return r;
}

QpElem QpElem::from_integral(const RingElem& x) { return from_integral(x, x.params().precision()); }

QpElem QpElem::from_unit(std::int64_t valuation, const RingElem& unit, int relative_precision) {
  if (!unit.is_unit()) throw PreconditionError("QpElem unit part must be a unit");
  const int rel = std::clamp(relative_precision, 1, unit.params().precision());
  QpElem r{unit.truncated(rel)};
  r.zero_ = false;
  r.valuation_ = valuation;
  r.relative_ = rel;
  return r;
}

std::int64_t QpElem::absolute_precision() const {
  if (zero_) return floor_;
  return valuation_ + relative_;
}

QpElem QpElem::operator+(const QpElem& o) const {
  require_same(params(), o.params(), "p-adic add");
  if (is_exact_zero()) return o;
  if (o.is_exact_zero()) return *this;
  const std::int64_t abs_prec = std::min(absolute_precision(), o.absolute_precision());
  if (zero_ && o.zero_) return zero(params(), abs_prec);
  std::int64_t vmin = kInfiniteValuation;
  if (!zero_) vmin = valuation_;
  if (!o.zero_) vmin = std::min(vmin, o.valuation_);
  if (abs_prec <= vmin) return zero(params(), abs_prec);
  const std::int64_t width = abs_prec - vmin;
  RingElem sum(params());
  for (const QpElem* x : {this, &o}) {
    if (x->zero_) continue;
    const std::int64_t shift = x->valuation_ - vmin;
    if (shift < width) sum += x->unit_.mul_p_power(static_cast<int>(shift));
  }
  return from_integral(sum, width).shifted(vmin);
}

QpElem QpElem::operator-(const QpElem& o) const { return *this + (-o); }

QpElem QpElem::operator-() const {
  QpElem r(*this);
  if (!zero_) r.unit_ = (-unit_).truncated(relative_);
  return r;
}

QpElem QpElem::operator*(const QpElem& o) const {
  require_same(params(), o.params(), "p-adic multiply");
  if (is_exact_zero() || o.is_exact_zero()) return exact_zero(params());
  if (zero_ || o.zero_) return zero(params(), valuation() + o.valuation());
  const int rel = std::min(relative_, o.relative_);
  return from_unit(valuation_ + o.valuation_, (unit_ * o.unit_).truncated(rel), rel);
}

QpElem QpElem::operator/(const QpElem& o) const { return *this * o.inverse(); }

QpElem QpElem::inverse() const {
  if (zero_) throw PreconditionError("inverse of a p-adic zero");
  return from_unit(-valuation_, unit_.inverse().truncated(relative_), relative_);
}

QpElem QpElem::shifted(std::int64_t k) const {
  QpElem r(*this);
  if (zero_) {
    if (floor_ != kInfiniteValuation) r.floor_ += k;
  } else {
    r.valuation_ += k;
  }
  return r;
}

QpElem QpElem::with_absolute_precision(std::int64_t cap) const {
  if (cap >= absolute_precision()) return *this;
  if (zero_ || cap <= valuation_) return zero(params(), cap);
  const int rel = static_cast<int>(cap - valuation_);
  return from_unit(valuation_, unit_.truncated(rel), rel);
}

QpElem QpElem::to_params(const RingParams& target) const {
  if (target == params()) return *this;
  if (!params().same_field(target)) throw PreconditionError("precision change across different fields");
  if (zero_) {
    QpElem z{RingElem(target)};
    z.floor_ = floor_;
    return z;
  }
  return from_unit(valuation_, unit_.to_params(target), std::min(relative_, target.precision()));
}

bool QpElem::same_as(const QpElem& o) const {
  if (zero_ != o.zero_) return false;
  if (zero_) return floor_ == o.floor_;
  return valuation_ == o.valuation_ && relative_ == o.relative_ && unit_ == o.unit_;
}

RingElem QpElem::to_integral() const {
  if (zero_) return RingElem(params());
  if (valuation_ < 0) throw PreconditionError("value is not a p-adic integer");
  return unit_.mul_p_power(static_cast<int>(valuation_));
}

std::string QpElem::to_string() const {
  const std::string p = std::to_string(params().prime());
  if (zero_) {
    if (floor_ == kInfiniteValuation) return "0";
    return "0 (mod " + p + "^" + std::to_string(floor_) + ")";
  }
  return p + "^" + std::to_string(valuation_) + " * " + unit_.to_string() + " (mod " + p + "^" +
         std::to_string(absolute_precision()) + ")";
}

std::int64_t defect_valuation(const QpElem& a, const QpElem& b) {
  if (a.params() == b.params()) return (a - b).valuation();
  const RingParams& fine =
      a.params().precision() >= b.params().precision() ? a.params() : b.params();
  return (a.to_params(fine) - b.to_params(fine)).valuation();
}

// ---------------------------------------------------------- valuation bounds

u64 digit_sum(u64 l, u64 p) {
  u64 s = 0;
  while (l > 0) {
    s += l % p;
    l /= p;
  }
  return s;
}

u64 factorial_valuation(u64 l, u64 p) { return (l - digit_sum(l, p)) / (p - 1); }

int mpz_valuation(const mpz_class& x, u64 p) {
  if (x == 0) throw PreconditionError("valuation of zero");
  mpz_class rest;
  const mpz_class pz = u64_to_mpz(p);
  return static_cast<int>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
}

void check_convergence(u64 p, int e) {
  if (e < 1 || (p == 2 && e < 2))
    throw PreconditionError("series diverge: need e >= 1 for odd p and e >= 2 for p = 2 (p = " +
                            std::to_string(p) + ", e = " + std::to_string(e) + ")");
}

mpq_class term_valuation_bound(int deg, int e, int s, u64 p) {
  check_convergence(p, e);
  if (s < 1) throw PreconditionError("s must be >= 1");
  const mpz_class pm1 = u64_to_mpz(p - 1);
  mpq_class bound = (mpq_class(e) - mpq_class(1, pm1)) * deg - mpq_class(2 * s - 1, pm1);
  bound.canonicalize();
  return bound;
}

int truncation_degree(int target, int e, int s, u64 p) {
  for (int deg = 0; deg < 1'000'000; ++deg)
    if (term_valuation_bound(deg, e, s, p) >= target) return deg;
  throw PreconditionError("truncation degree out of range");
}

QpElem rational_to_qp(const mpq_class& r, const RingParams& params) {
  if (r == 0) return QpElem::exact_zero(params);
  const mpz_class pz = u64_to_mpz(params.prime());
  mpz_class num, den;
  const auto vn = static_cast<std::int64_t>(mpz_remove(num.get_mpz_t(), r.get_num_mpz_t(), pz.get_mpz_t()));
  const auto vd = static_cast<std::int64_t>(mpz_remove(den.get_mpz_t(), r.get_den_mpz_t(), pz.get_mpz_t()));
  const mpz_class order = u64_to_mpz(params.order());
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), order.get_mpz_t());
  return QpElem::from_unit(vn - vd, RingElem::from_mpz(params, num * inv), params.precision());
}

// ------------------------------------------------------------------ logarithm

QpElem padic_log(const RingElem& u) {
  const RingParams& params = u.params();
  const u64 p = params.prime();
  const int m = params.precision();
  const RingElem z = u - RingElem::from_int(params, 1);
  if (z.is_zero()) return QpElem::zero(params, m);
  const auto e = static_cast<int>(z.valuation());
  if (e < 1 || (p == 2 && e < 2))
    throw PreconditionError("log series needs u == 1 mod p (mod 4 for p = 2); got " + u.to_string());

  // Terms with k*e - floor(log_p k) >= M vanish mod p^M; that bound is
  // nondecreasing in k.
  u64 last = 0;
  for (u64 k = 1;; ++k) {
    if (static_cast<std::int64_t>(k) * e - floor_log(k, p) >= m) break;
    last = k;
  }
  const int guard = floor_log(std::max<u64>(last, 1), p);

  RingElem sum(params);
  RingElem zk = z;
  for (u64 k = 1; k <= last; ++k) {
    u64 cofactor = k;
    int vk = 0;
    while (cofactor % p == 0) {
      cofactor /= p;
      ++vk;
    }
    RingElem c = RingElem::from_mpz(params, u64_to_mpz(cofactor)).inverse().mul_p_power(guard - vk);
    RingElem term = zk * c;
    if (k % 2 == 0) sum -= term;
    else sum += term;
    zk *= z;
  }
  return QpElem::from_integral(sum, m).shifted(-guard);
}

QpElem extend_log_with_exponent(const RingElem& u, const mpz_class& k) {
  if (!u.is_unit()) throw PreconditionError("extend_log of a non-unit " + u.to_string());
  if (k <= 0) throw PreconditionError("exponent must be positive");
  const RingElem w = u.pow(k);
  return padic_log(w) * rational_to_qp(mpq_class(1, k), u.params());
}

QpElem extend_log(const RingElem& u) {
  const RingParams& params = u.params();
  const mpz_class p = u64_to_mpz(params.prime());
  mpz_class q = 1;
  for (int i = 0; i < params.degree(); ++i) q *= p;
  const int e0 = params.prime() == 2 ? 2 : 1;
  mpz_class k = q - 1;
  for (int i = 0; i < e0; ++i) k *= p;
  return extend_log_with_exponent(u, k);
}

// ------------------------------------------------------------------ Frobenius

Frobenius::Frobenius(const RingParams& params) : params_(params) {
  const int d = params.degree();
  if (d < 2) throw PreconditionError("Frobenius is trivial for d = 1");
  const auto& f = params.modulus();
  auto eval = [&](const RingElem& x) {
    RingElem acc(params);
    for (int i = d; i >= 0; --i) acc = acc * x + RingElem::from_int(params, f[static_cast<std::size_t>(i)]);
    return acc;
  };
  auto eval_derivative = [&](const RingElem& x) {
    RingElem acc(params);
    for (int i = d; i >= 1; --i)
      acc = acc * x + RingElem::from_int(params, f[static_cast<std::size_t>(i)] * i);
    return acc;
  };
  RingElem tau = RingElem::generator(params).pow(u64_to_mpz(params.prime()));
  for (int it = 0; it < 80; ++it) {
    const RingElem fv = eval(tau);
    if (fv.is_zero()) break;
    tau -= fv * eval_derivative(tau).inverse();
  }
  if (!eval(tau).is_zero()) throw PreconditionError("Hensel lift of Frobenius failed");
  powers_.push_back(RingElem::from_int(params, 1));
  for (int i = 1; i < d; ++i) powers_.push_back(powers_.back() * tau);
}

RingElem Frobenius::operator()(const RingElem& x) const {
  require_same(params_, x.params(), "frobenius");
  RingElem out(params_);
  for (std::size_t i = 0; i < powers_.size(); ++i) {
    std::vector<u64> cs(powers_.size(), 0);
    cs[0] = x.coeff(static_cast<int>(i));
    out += powers_[i] * RingElem(params_, std::move(cs));
  }
  return out;
}

QpElem Frobenius::operator()(const QpElem& x) const {
  if (x.is_zero()) return x;
  return QpElem::from_unit(x.valuation(), (*this)(x.unit()), x.relative_precision());
}

RingElem frobenius(const RingElem& x) { return Frobenius(x.params())(x); }

}  // namespace padicreg
