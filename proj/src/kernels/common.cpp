#include "padicreg/kernels.hpp"

namespace padicreg::kernels {

void matmul_accumulate(const u64* a, const u64* b, u128* acc, int n, const RingParams& params) {
  const int d = params.degree();
  const int w = 2 * d - 1;
  // Unreduced products of residues below 2^32 fit in 64 bits; larger moduli
  // reduce every product, so accumulators stay far below 2^128 either way.
  const bool small = params.small_order();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const u64* x = a + (i * n + k) * d;
      for (int j = 0; j < n; ++j) {
        const u64* y = b + (k * n + j) * d;
        u128* out = acc + (i * n + j) * w;
        for (int s = 0; s < d; ++s) {
          if (x[s] == 0) continue;
          if (small) {
            for (int t = 0; t < d; ++t) out[s + t] += x[s] * y[t];
          } else {
            for (int t = 0; t < d; ++t) out[s + t] += params.mul_mod(x[s], y[t]);
          }
        }
      }
    }
}

namespace {

std::size_t binom(int n, int k) {
  if (k < 0 || n < k) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

}  // namespace

MonomialIndex::MonomialIndex(int vars, int cap)
    : vars_(vars), cap_(cap), count_(binom(cap + vars, vars)) {
  const auto span = static_cast<std::size_t>(cap + 1);
  table_.assign(static_cast<std::size_t>(vars) * span * span, 0);
  for (int i = 0; i < vars; ++i) {
    const int rest = vars - i - 1;
    for (int r = 0; r <= cap; ++r) {
      std::size_t run = 0;
      for (int c = 0; c <= r; ++c) {
        table_[(static_cast<std::size_t>(i) * span + static_cast<std::size_t>(r)) * span + static_cast<std::size_t>(c)] = run;
        run += binom(r - c + rest, rest);
      }
    }
  }
}

std::size_t MonomialIndex::rank(const std::uint8_t* exponents) const {
  const auto span = static_cast<std::size_t>(cap_ + 1);
  std::size_t r = 0;
  int remaining = cap_;
  for (int i = 0; i < vars_; ++i) {
    const int c = exponents[i];
    r += table_[(static_cast<std::size_t>(i) * span + static_cast<std::size_t>(remaining)) * span + static_cast<std::size_t>(c)];
    remaining -= c;
  }
  return r;
}

void MonomialIndex::unrank(std::size_t r, std::uint8_t* exponents) const {
  const auto span = static_cast<std::size_t>(cap_ + 1);
  int remaining = cap_;
  for (int i = 0; i < vars_; ++i) {
    const std::size_t* row = &table_[(static_cast<std::size_t>(i) * span + static_cast<std::size_t>(remaining)) * span];
    int c = 0;
    while (c < remaining && row[c + 1] <= r) ++c;
    exponents[i] = static_cast<std::uint8_t>(c);
    r -= row[c];
    remaining -= c;
  }
}

}  // namespace padicreg::kernels
