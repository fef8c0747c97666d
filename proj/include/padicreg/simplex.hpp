#pragma once

// Exact rational calculus on the standard simplex
// Delta^n = { x_0 + ... + x_n = 1, x_i >= 0 }. Independent of the p-adic
// layer so it can serve as a cross-check for phi.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace padicreg::simplex {

/// (-1)^v a_0! ... a_n! / (|a| + n)!: the integral of
/// x^a dx_0 ^ ... ^ (omit dx_v) ^ ... ^ dx_n over Delta^n.
mpq_class integrate_monomial(const std::vector<int>& a, int omit, int n);

/// Integral of x^a over Delta^n with respect to the n coordinates other than
/// x_i, computed by nested one-variable polynomial integration after
/// substituting x_i = 1 - sum of the rest. Never uses the closed form.
mpq_class iterated_integral_oracle(const std::vector<int>& a, int i, int n);

/// Polynomial differential form on Delta^n in the coordinates x_0..x_n.
class RationalForm {
 public:
  struct Key {
    std::vector<int> exponents;  // n+1 entries
    std::uint32_t wedge = 0;     // bit i: dx_i present
    auto operator<=>(const Key&) const = default;
  };

  explicit RationalForm(int n) : n_(n) {}

  static RationalForm monomial(int n, const std::vector<int>& a, const std::vector<int>& wedge_indices,
                               const mpq_class& c = 1);

  int dimension() const { return n_; }
  const std::map<Key, mpq_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Key& key, const mpq_class& c);
  RationalForm& operator+=(const RationalForm& o);
  RationalForm operator*(const mpq_class& c) const;
  bool operator==(const RationalForm& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  /// Integral over Delta^n; every term must be an n-form.
  mpq_class integrate() const;

 private:
  int n_;
  std::map<Key, mpq_class> terms_;
};

/// Restriction to the face x_i = 0, relabelled as a form on Delta^(n-1).
RationalForm face_restrict(const RationalForm& w, int i);
RationalForm exterior_derivative_exact(const RationalForm& w);
/// Wedge of two forms on the same simplex.
RationalForm wedge(const RationalForm& f, const RationalForm& g);

struct StokesSides {
  mpq_class boundary;  // sum_i (-1)^i integral over face i
  mpq_class interior;  // integral of d(omega)
};

/// For the monomial x^a dx_0 ^ ... (omit u, v) ... ^ dx_{2s} on Delta^{2s}.
StokesSides stokes_check(const std::vector<int>& a, int u, int v);

std::string to_string(const mpq_class& q);

}  // namespace padicreg::simplex
