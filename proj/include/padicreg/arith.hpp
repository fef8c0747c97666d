#pragma once

// Coefficient rings O_F / p^M for F = Q_p or an unramified extension,
// p-adic numbers of tracked precision, and the p-adic logarithm.

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "padicreg/error.hpp"

namespace padicreg {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Valuation of exact zero, and "known to infinite precision".
inline constexpr std::int64_t kInfiniteValuation =
    std::numeric_limits<std::int64_t>::max();

/// Parameters of the coefficient ring O_F / p^M, O_F = Z_p[t]/(f(t)) with
/// f monic of degree d and irreducible mod p. Cheap to copy; immutable.
class RingParams {
 public:
  /// `modulus` is the full monic polynomial f, little-endian (length d+1).
  /// An empty modulus selects d = 1, i.e. Z/p^M.
  RingParams(u64 p, int precision, std::vector<std::int64_t> modulus = {});

  u64 prime() const { return data_->p; }
  int precision() const { return data_->precision; }
  int degree() const { return data_->degree; }
  /// p^M, the modulus every stored coefficient is reduced by.
  u64 order() const { return data_->order; }
  const std::vector<std::int64_t>& modulus() const { return data_->modulus; }
  u64 p_power(int k) const;

  /// Same ring at a different p-adic precision.
  RingParams with_precision(int precision) const;

  bool operator==(const RingParams& other) const;
  bool same_field(const RingParams& other) const;

  // Coefficient-array kernels (arrays of length degree()).
  u64 mul_mod(u64 a, u64 b) const {
    return static_cast<u64>(static_cast<u128>(a) * b % data_->order);
  }
  u64 add_mod(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= data_->order ? s - data_->order : s;
  }
  u64 sub_mod(u64 a, u64 b) const { return a >= b ? a - b : a + data_->order - b; }
  u64 neg_mod(u64 a) const { return a == 0 ? 0 : data_->order - a; }
  /// True when products of two reduced residues fit in 64 bits, which lets
  /// kernels accumulate unreduced products in 128-bit sums.
  bool small_order() const { return data_->order < (u64{1} << 32); }

  void mul(const u64* a, const u64* b, u64* out) const;
  /// Reduces an unreduced polynomial of length 2d-1 (entries < 2^127) modulo
  /// p^M and modulo f, writing d coefficients.
  void fold(const u128* acc, u64* out) const;

  std::string describe() const;

 private:
  struct Data {
    u64 p = 0;
    int precision = 0;
    int degree = 1;
    u64 order = 0;
    std::vector<std::int64_t> modulus;
    std::vector<u64> neg_low;  // -f_0..-f_{d-1} mod p^M
    std::vector<u64> powers;   // p^0..p^M
  };
  std::shared_ptr<const Data> data_;
};

/// Element of O_F / p^M: d coefficients in [0, p^M), little-endian in t.
class RingElem {
 public:
  explicit RingElem(RingParams params);
  RingElem(RingParams params, std::vector<u64> coeffs);

  static RingElem from_int(const RingParams& params, std::int64_t value);
  static RingElem from_mpz(const RingParams& params, const mpz_class& value);
  static RingElem from_mpz_coeffs(const RingParams& params,
                                  std::span<const mpz_class> coeffs);
  /// The polynomial generator t (requires d >= 2).
  static RingElem generator(const RingParams& params);

  const RingParams& params() const { return params_; }
  std::span<const u64> coeffs() const { return coeffs_; }
  u64 coeff(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }

  bool is_zero() const;
  bool is_one() const;
  /// min over coefficients of nu_p; kInfiniteValuation for zero.
  std::int64_t valuation() const;
  bool is_unit() const { return valuation() == 0; }

  RingElem operator+(const RingElem& o) const;
  RingElem operator-(const RingElem& o) const;
  RingElem operator*(const RingElem& o) const;
  RingElem operator-() const;
  RingElem& operator+=(const RingElem& o);
  RingElem& operator-=(const RingElem& o);
  RingElem& operator*=(const RingElem& o);
  bool operator==(const RingElem& o) const;

  RingElem scaled(std::int64_t k) const;
  RingElem pow(const mpz_class& exponent) const;
  /// Inverse of a unit. Throws PreconditionError for non-units.
  RingElem inverse() const;
  RingElem mul_p_power(int k) const;
  /// Exact division by p^k; every coefficient must be divisible by p^k.
  RingElem div_p_power(int k) const;
  /// Coefficients reduced mod p^m (m <= M), same ring.
  RingElem truncated(int m) const;
  /// Same element viewed in a ring of another precision (reduction, or the
  /// canonical integer lift when the target precision is larger).
  RingElem to_params(const RingParams& target) const;

  std::vector<std::string> to_strings() const;
  std::string to_string() const;

 private:
  RingParams params_;
  std::vector<u64> coeffs_;
};

void require_same(const RingParams& a, const RingParams& b, const char* op);

/// p-adic number p^v * u with u a unit known to relative precision r, or a
/// zero known modulo p^floor (floor may be infinite: exact zero).
class QpElem {
 public:
  static QpElem exact_zero(const RingParams& params);
  static QpElem zero(const RingParams& params, std::int64_t absolute_precision);
  /// An element of O_F known modulo p^absolute_precision (<= M).
  static QpElem from_integral(const RingElem& x, std::int64_t absolute_precision);
  static QpElem from_integral(const RingElem& x);
  static QpElem from_unit(std::int64_t valuation, const RingElem& unit,
                          int relative_precision);

  const RingParams& params() const { return unit_.params(); }
  bool is_zero() const { return zero_; }
  bool is_exact_zero() const { return zero_ && floor_ == kInfiniteValuation; }
  /// Valuation of a nonzero element; for zeros the known lower bound.
  std::int64_t valuation() const { return zero_ ? floor_ : valuation_; }
  std::int64_t absolute_precision() const;
  int relative_precision() const { return zero_ ? 0 : relative_; }
  /// Unit part (reduced mod p^relative_precision); zero for zeros.
  const RingElem& unit() const { return unit_; }

  QpElem operator+(const QpElem& o) const;
  QpElem operator-(const QpElem& o) const;
  QpElem operator*(const QpElem& o) const;
  QpElem operator/(const QpElem& o) const;
  QpElem operator-() const;
  QpElem& operator+=(const QpElem& o) { return *this = *this + o; }
  QpElem inverse() const;
  /// Multiplication by p^k.
  QpElem shifted(std::int64_t k) const;
  /// Forgets digits at or beyond p^cap.
  QpElem with_absolute_precision(std::int64_t cap) const;
  /// Same value in a ring of another precision (same field). Relative
  /// precision is clipped to the target ring.
  QpElem to_params(const RingParams& target) const;
  /// Structural equality (same valuation, precision and digits).
  bool same_as(const QpElem& o) const;

  /// If the value is a p-adic integer, its residue mod p^absolute_precision
  /// as a RingElem (digits above the precision are zero).
  RingElem to_integral() const;

  /// `p^v * u (mod p^(v+r))`.
  std::string to_string() const;

 private:
  explicit QpElem(RingElem unit) : unit_(std::move(unit)) {}

  bool zero_ = true;
  std::int64_t valuation_ = 0;
  int relative_ = 0;
  std::int64_t floor_ = kInfiniteValuation;
  RingElem unit_;
};

/// Valuation (lower bound) of a - b; the graded diagnostic used by every
/// defect check. Operands over rings of different precision are compared in
/// the finer one.
std::int64_t defect_valuation(const QpElem& a, const QpElem& b);

/// nu_p(l!) through the base-p digit sum: (l - alpha(l)) / (p - 1).
u64 factorial_valuation(u64 l, u64 p);
/// Base-p digit sum alpha(l).
u64 digit_sum(u64 l, u64 p);
/// nu_p of a nonzero integer.
int mpz_valuation(const mpz_class& x, u64 p);

/// Throws PreconditionError unless the series converge: e >= 1 for odd p,
/// e >= 2 for p = 2.
void check_convergence(u64 p, int e);
/// Lower bound (e - 1/(p-1)) deg - (2s-1)/(p-1) on the valuation of any
/// degree-deg term of the integral functional.
mpq_class term_valuation_bound(int deg, int e, int s, u64 p);
/// Smallest D whose term bound already reaches `target`; every monomial of
/// degree >= D contributes nothing mod p^target.
int truncation_degree(int target, int e, int s, u64 p);

QpElem rational_to_qp(const mpq_class& r, const RingParams& params);

/// log(u) for u == 1 mod p (mod 4 when p = 2), by the series
/// sum (-1)^(k+1) z^k / k, z = u - 1. Precision of the result is honest:
/// M minus the largest nu_p(k) used.
QpElem padic_log(const RingElem& u);
/// The homomorphic extension of log to units: log(u^k)/k with
/// k = (p^d - 1) p^e0.
QpElem extend_log(const RingElem& u);
/// As extend_log with a caller-chosen admissible exponent k.
QpElem extend_log_with_exponent(const RingElem& u, const mpz_class& k);

/// Frobenius of an unramified extension: the automorphism lifting y -> y^p,
/// obtained by Hensel-lifting the image of t.
class Frobenius {
 public:
  explicit Frobenius(const RingParams& params);
  RingElem operator()(const RingElem& x) const;
  QpElem operator()(const QpElem& x) const;
  const RingElem& image_of_generator() const { return powers_[1]; }

 private:
  RingParams params_;
  std::vector<RingElem> powers_;  // tau^0 .. tau^(d-1)
};

RingElem frobenius(const RingElem& x);

}  // namespace padicreg
