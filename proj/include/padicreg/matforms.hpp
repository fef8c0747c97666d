#pragma once

// N x N matrices over O_F / p^M and truncated matrix-valued power series
// in x_0..x_{2s-1} with exterior-algebra differential part.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "padicreg/arith.hpp"

namespace padicreg {

class OMatrix {
 public:
  OMatrix(RingParams params, int n);

  static OMatrix identity(const RingParams& params, int n);
  /// Row-major integer entries (prime subring), n*n values.
  static OMatrix from_ints(const RingParams& params, int n, std::span<const std::int64_t> entries);
  static OMatrix from_entries(const RingParams& params, int n, std::span<const RingElem> entries);

  int size() const { return n_; }
  const RingParams& params() const { return params_; }
  RingElem at(int i, int j) const;
  void set(int i, int j, const RingElem& value);

  /// Row-major entries, d coefficients each.
  std::span<const u64> data() const { return data_; }
  std::span<u64> data() { return data_; }

  OMatrix operator+(const OMatrix& o) const;
  OMatrix operator-(const OMatrix& o) const;
  OMatrix operator*(const OMatrix& o) const;
  OMatrix operator-() const;
  OMatrix& operator+=(const OMatrix& o);
  OMatrix scaled(std::int64_t k) const;
  OMatrix scaled(const RingElem& c) const;

  RingElem trace() const;
  bool is_zero() const;
  bool is_identity() const;
  /// Entrywise congruence to the identity modulo p^e.
  bool congruent_to_identity(int e) const;
  /// Inverse over the local ring (unit pivots); throws when det is not a unit.
  OMatrix inverse() const;
  OMatrix to_params(const RingParams& target) const;
  /// Residues mod p^m of every entry, same ring.
  OMatrix truncated(int m) const;

  bool operator==(const OMatrix& o) const { return n_ == o.n_ && data_ == o.data_ && params_ == o.params_; }
  std::strong_ordering operator<=>(const OMatrix& o) const;

  std::string to_string() const;

 private:
  RingParams params_;
  int n_;
  std::vector<u64> data_;
};

/// Inverse of 1 + p^e X via the geometric series sum (-p^e X)^i.
OMatrix mat_inverse_one_plus(const OMatrix& x, int e);

inline constexpr int kMaxVariables = 8;

/// Monomial x^a dx_S: exponent vector a and the set S of wedge factors as a
/// bitmask (bit i is dx_i). Ordered by exponents lexicographically, then by
/// the mask.
struct FormKey {
  std::array<std::uint8_t, kMaxVariables> exponents{};
  std::uint16_t wedge = 0;

  int degree() const;
  int form_degree() const;
  auto operator<=>(const FormKey&) const = default;
};

FormKey make_key(std::span<const int> exponents, std::span<const int> wedge_indices);
/// Sign of dx_{S1} ^ dx_{S2} relative to dx_{S1 u S2}; 0 if they overlap.
int shuffle_sign(std::uint16_t s1, std::uint16_t s2);

/// Truncated element of the free algebra M_N O_F[[x_0..x_{2s-1}]] (x) E(dx).
/// Terms of total degree above the cap are discarded; zero coefficients are
/// never stored. Coefficients carry every p-power.
class FormSeries {
 public:
  FormSeries(int s, int n, RingParams params, int degree_cap, int level = 1);

  static FormSeries constant(int s, int degree_cap, const OMatrix& c, int level = 1);

  int s() const { return s_; }
  int variables() const { return 2 * s_; }
  int matrix_size() const { return n_; }
  const RingParams& params() const { return params_; }
  int degree_cap() const { return cap_; }
  int level() const { return level_; }
  const std::map<FormKey, OMatrix>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Accumulates c into the coefficient of key.
  void add_term(const FormKey& key, const OMatrix& c);
  /// Stores c (no accumulation); caller guarantees the key is new.
  void insert_term(const FormKey& key, OMatrix c);

  FormSeries& operator+=(const FormSeries& o);
  FormSeries operator+(const FormSeries& o) const;
  FormSeries operator-(const FormSeries& o) const;
  FormSeries operator-() const;
  bool operator==(const FormSeries& o) const;

  /// Same series, degree cap changed (terms above the new cap dropped).
  FormSeries with_degree_cap(int cap) const;
  void require_compatible(const FormSeries& o, const char* op) const;

  /// One line per term in key order.
  std::string dump() const;

 private:
  int s_;
  int n_;
  RingParams params_;
  int cap_;
  int level_;
  std::map<FormKey, OMatrix> terms_;
};

/// Exterior product; dispatches to the OpenMP kernel.
FormSeries form_wedge(const FormSeries& f, const FormSeries& g);
FormSeries form_d(const FormSeries& f);
/// Inverse of a 0-form with constant term 1 by the geometric series,
/// truncated at the degree cap.
FormSeries form_inverse_one_plus(const FormSeries& nu);
/// Term-by-term integral over the simplex, traced. Every key must be a
/// (2s-1)-form. The result carries the precision floor
/// M - nu_p((D + 2s - 1)!) covering all coefficients known only mod p^M.
QpElem phi(const FormSeries& f);
/// The same sum over Q, coefficient by coefficient in the basis 1, t, ...,
/// t^(d-1), with every residue lifted to the integer in (-p^M/2, p^M/2].
/// Exact when the stored coefficients are small integers.
std::vector<mpq_class> phi_rational(const FormSeries& f);

/// a_0! ... a_k! / (|a| + shift)!, exact.
mpq_class factorial_ratio(std::span<const int> exponents, int shift);

}  // namespace padicreg
