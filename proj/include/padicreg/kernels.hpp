#pragma once

// Hot loops of the form algebra. Each kernel has a plain serial reference
// kept for testing and benchmarking against the OpenMP version.

#include <cstdint>
#include <vector>

#include "padicreg/matforms.hpp"

namespace padicreg::kernels {

/// acc += A * B for n x n matrices with d coefficients per entry. `acc`
/// holds n*n unreduced polynomials of length 2d-1, ready for
/// RingParams::fold.
void matmul_accumulate(const u64* a, const u64* b, u128* acc, int n, const RingParams& params);

/// Fixed-shape version for n x n matrices over Z/p^M (d = 1), products
/// unreduced (p^M < 2^32).
template <int N>
inline void matmul_accumulate_small(const u64* a, const u64* b, u128* acc) {
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k) {
      const u64 x = a[i * N + k];
      for (int j = 0; j < N; ++j) acc[i * N + j] += x * b[k * N + j];
    }
}

/// Lexicographic rank of monomials of degree <= cap in `vars` variables.
class MonomialIndex {
 public:
  MonomialIndex(int vars, int cap);
  std::size_t count() const { return count_; }
  std::size_t rank(const std::uint8_t* exponents) const;
  /// Rank of a + b; the caller guarantees |a| + |b| <= cap.
  std::size_t rank_sum(const std::uint8_t* a, const std::uint8_t* b) const {
    const std::size_t span = static_cast<std::size_t>(cap_ + 1);
    const std::size_t* t = table_.data();
    std::size_t r = 0;
    std::size_t remaining = static_cast<std::size_t>(cap_);
    for (int i = 0; i < vars_; ++i) {
      const std::size_t c = static_cast<std::size_t>(a[i]) + b[i];
      r += t[remaining * span + c];
      remaining -= c;
      t += span * span;
    }
    return r;
  }
  /// Inverse of rank; writes `vars` exponents.
  void unrank(std::size_t r, std::uint8_t* exponents) const;

 private:
  int vars_;
  int cap_;
  std::size_t count_;
  std::vector<std::size_t> table_;  // [var][remaining][exponent]
};

/// Pairwise product over stored terms, accumulated in the term map.
FormSeries wedge_reference(const FormSeries& f, const FormSeries& g);
/// Dense per-output-mask accumulation; output masks are distributed over
/// OpenMP threads.
FormSeries wedge_parallel(const FormSeries& f, const FormSeries& g);

}  // namespace padicreg::kernels
