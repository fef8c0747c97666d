#pragma once

// The continuous cocycle on tuples of matrices congruent to 1 mod p^e,
// built from nu(X) = 1 + sum_i (g_i - 1) x_i and the integral functional phi.

#include <cstdint>
#include <vector>

#include "padicreg/matforms.hpp"

namespace padicreg {

struct GroupTuple {
  RingParams params;
  int s = 1;
  int e = 1;
  std::vector<OMatrix> elems;

  int matrix_size() const { return elems.empty() ? 0 : elems.front().size(); }
  /// Checks length, shapes, ring and the congruence g_i == 1 mod p^e.
  void validate(std::size_t expected_length) const;
  GroupTuple without(std::size_t i) const;
  GroupTuple to_params(const RingParams& target) const;
};

struct EvalOptions {
  int degree_cap = -1;       // < 0: derived from the target
  int extra_precision = 0;   // digits added on top of the guard digits
  /// Multiply out (nu^-1 dnu)^(2s-1) as a power of the 1-form instead of the
  /// factor sequence nu^-1, dnu, nu^-1, ... (same element, more work).
  bool literal_power = false;
};

struct EvalResult {
  QpElem value;
  int degree_cap = 0;
  int work_precision = 0;
};

/// Degree cap and working precision used for `target`.
int eval_degree_cap(int target, int e, int s, u64 p, const EvalOptions& opts = {});
int eval_work_precision(int target, int e, int s, u64 p, const EvalOptions& opts = {});

FormSeries build_nu(const GroupTuple& t, int degree_cap);

/// Value mod p^target of the cocycle on a 2s-tuple. The tuple's ring must
/// carry at least eval_work_precision digits.
EvalResult cocycle_eval(const GroupTuple& t, int target, const EvalOptions& opts = {});

/// Valuation of sum_i (-1)^i cocycle(t without i) for a (2s+1)-tuple.
std::int64_t cocycle_defect(const GroupTuple& t, int target, const EvalOptions& opts = {});

enum class InvarianceMode { kTranslate, kConjugate };

/// translate: g_i -> y1 g_i y2 (y1, y2 == 1 mod p^e); conjugate: g_i -> y1 g_i y1^-1.
/// kInfiniteValuation when the moved tuple is the original one.
std::int64_t invariance_defect(const GroupTuple& t, const OMatrix& y1, const OMatrix& y2, InvarianceMode mode,
                               int target, const EvalOptions& opts = {});

/// Valuation of frob(cocycle(t)) - cocycle(frob t); needs d >= 2. Tuples over
/// the prime subring give kInfiniteValuation.
std::int64_t galois_defect(const GroupTuple& t, int target, const EvalOptions& opts = {});

}  // namespace padicreg
