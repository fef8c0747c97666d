#pragma once

// Index formula, pairing of the cocycle with bar cycles, the regulator
// R_{N,F} through the transfer, its rational normalisation and the
// Q_p-valued absolute values of a rational number.

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "padicreg/cocycle.hpp"
#include "padicreg/homology.hpp"

namespace padicreg {

struct RegulatorConfig {
  u64 p = 3;
  int d = 1;
  std::vector<std::int64_t> modulus;  // empty for d = 1
  int e = 1;
  int s = 1;
  int n = 1;
  int target = 6;

  void validate() const;
};

/// |GL_N(F_q)| = prod_{i<N} (q^N - q^i).
mpz_class gl_order(int n, const mpz_class& q);
/// [GL_N O_F : G_{N,e} F] = |GL_N F_{p^d}| p^{N^2 d (e eps - 1)}.
mpz_class group_index(int n, u64 p, int d, int e, int eps = 1);

/// Precision the group elements must carry so that pairing at `target`
/// is possible.
int pairing_precision(const RegulatorConfig& cfg, int target);

/// sum coeff * cocycle(1, g_1, ..., g_{2s-1}) mod p^target. Rejects chains
/// with nonzero boundary unless `require_cycle` is false.
QpElem pair(const RegulatorConfig& cfg, const MatrixGroup& group, const BarChain<OMatrix>& c, int target,
            bool require_cycle = true);

/// Transfer to G_{N,e}, pairing, division by the index. The group carries
/// the precision from pairing_precision(cfg, target + nu_p(index)).
QpElem regulator_nf(const RegulatorConfig& cfg, const MatrixGroup& group, const BarChain<OMatrix>& c);

inline constexpr long kMaxEnumeratedIndex = 1'000'000;

/// Group and chain precision needed by regulator_nf for this config.
int regulator_precision(const RegulatorConfig& cfg);

/// (-1)^s (s-1)! / ((2s-2)! (2s-1)!).
mpq_class normalization_constant(int s);
QpElem hat_r(int s, const QpElem& value);

/// Block embedding g -> diag(g, 1).
OMatrix block_embed(const OMatrix& g, int n);
BarChain<OMatrix> block_embed(const BarChain<OMatrix>& c, int n);

struct PlaceValue {
  std::optional<u64> place;  // nothing: the real place
  mpq_class exact;           // exact value of |x|_{v,p} as a rational
  std::optional<QpElem> value;  // its image in Q_p (finite places)
  int sign = 1;              // real place only
};

/// Q_p-valued absolute value of a nonzero rational at a prime l or at infinity.
PlaceValue abs_value_q(const mpq_class& x, std::optional<u64> place, u64 p, int precision);
/// Every place where |x| can differ from 1, the real place last.
std::vector<PlaceValue> all_places(const mpq_class& x, u64 p, int precision);

struct ProductFormula {
  bool exact_one = false;                // product of exact values is 1
  bool finite_times_sign_one = false;    // prod over finite places times sign(x) is 1
  std::int64_t log_sum_valuation = 0;    // valuation of sum log_p |x|_v, capped at target
};

ProductFormula product_formula_check(const mpq_class& x, u64 p, int target);

}  // namespace padicreg
