#include <algorithm>
#include <map>
#include <utility>

#include "padicreg/kernels.hpp"

namespace padicreg::kernels {

namespace {

struct Block {
  const std::uint8_t* exponents;
  int degree;
  const u64* data;
};

using Grouped = std::map<std::uint16_t, std::vector<Block>>;

Grouped group_by_mask(const FormSeries& f) {
  Grouped out;
  for (const auto& [k, c] : f.terms()) out[k.wedge].push_back({k.exponents.data(), k.degree(), c.data().data()});
  return out;
}

template <class Mul>
void accumulate(const std::vector<Block>& lb, const std::vector<Block>& rb, int cap, const MonomialIndex& index,
                std::size_t stride, u128* acc, char* touched, Mul mul) {
  for (const Block& a : lb) {
    const int budget = cap - a.degree;
    for (const Block& b : rb) {
      if (b.degree > budget) break;
      const std::size_t r = index.rank_sum(a.exponents, b.exponents);
      mul(a.data, b.data, acc + r * stride);
      touched[r] = 1;
    }
  }
}

void accumulate_dispatch(const std::vector<Block>& lb, const std::vector<Block>& rb, int cap,
                         const MonomialIndex& index, std::size_t stride, u128* acc, char* touched, int n,
                         const RingParams& params) {
  if (params.degree() == 1 && params.small_order()) {
    switch (n) {
      case 1:
        return accumulate(lb, rb, cap, index, stride, acc, touched, matmul_accumulate_small<1>);
      case 2:
        return accumulate(lb, rb, cap, index, stride, acc, touched, matmul_accumulate_small<2>);
      case 3:
        return accumulate(lb, rb, cap, index, stride, acc, touched, matmul_accumulate_small<3>);
      default:
        break;
    }
  }
  accumulate(lb, rb, cap, index, stride, acc, touched,
             [&](const u64* x, const u64* y, u128* out) { matmul_accumulate(x, y, out, n, params); });
}

}  // namespace

FormSeries wedge_parallel(const FormSeries& f, const FormSeries& g) {
  f.require_compatible(g, "wedge");
  const RingParams& params = f.params();
  const int n = f.matrix_size();
  const int d = params.degree();
  const int vars = f.variables();
  const int cap = f.degree_cap();
  FormSeries result(f.s(), n, params, cap, std::min(f.level(), g.level()));
  if (f.empty() || g.empty()) return result;

  const Grouped left = group_by_mask(f);
  Grouped right = group_by_mask(g);
  for (auto& [mask, blocks] : right)
    std::stable_sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) { return x.degree < y.degree; });

  // Negated copies of the right factor, used when the shuffle sign is -1.
  const std::size_t entry = static_cast<std::size_t>(n) * n * d;
  std::vector<u64> negated;
  for (const auto& [mask, blocks] : right) negated.resize(negated.size() + blocks.size() * entry);
  Grouped right_neg;
  std::size_t offset = 0;
  for (const auto& [mask, blocks] : right) {
    auto& out = right_neg[mask];
    for (const Block& b : blocks) {
      u64* dst = negated.data() + offset;
      for (std::size_t k = 0; k < entry; ++k) dst[k] = params.neg_mod(b.data[k]);
      out.push_back({b.exponents, b.degree, dst});
      offset += entry;
    }
  }

  std::vector<std::uint16_t> masks;
  for (const auto& [m1, lb] : left)
    for (const auto& [m2, rb] : right)
      if ((m1 & m2) == 0) masks.push_back(static_cast<std::uint16_t>(m1 | m2));
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());

  const MonomialIndex index(vars, cap);
  const std::size_t width = static_cast<std::size_t>(2 * d - 1);
  const std::size_t stride = static_cast<std::size_t>(n) * n * width;
  std::vector<std::vector<std::pair<FormKey, OMatrix>>> produced(masks.size());
  const auto mask_count = static_cast<std::int64_t>(masks.size());

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t mi = 0; mi < mask_count; ++mi) {
    const std::uint16_t mask = masks[static_cast<std::size_t>(mi)];
    std::vector<u128> acc(index.count() * stride, 0);
    std::vector<char> touched(index.count(), 0);
    for (const auto& [m1, lb] : left) {
      if ((m1 & mask) != m1) continue;
      const auto m2 = static_cast<std::uint16_t>(mask ^ m1);
      const auto it = right.find(m2);
      if (it == right.end()) continue;
      const auto& rb = shuffle_sign(m1, m2) > 0 ? it->second : right_neg.at(m2);
      accumulate_dispatch(lb, rb, cap, index, stride, acc.data(), touched.data(), n, params);
    }
    auto& out = produced[static_cast<std::size_t>(mi)];
    for (std::size_t r = 0; r < index.count(); ++r) {
      if (!touched[r]) continue;
      OMatrix c(params, n);
      auto cd = c.data();
      for (int k = 0; k < n * n; ++k)
        params.fold(acc.data() + r * stride + static_cast<std::size_t>(k) * width, cd.data() + k * d);
      if (c.is_zero()) continue;
      FormKey key;
      index.unrank(r, key.exponents.data());
      key.wedge = mask;
      out.emplace_back(key, std::move(c));
    }
  }

  std::vector<std::pair<FormKey, OMatrix>> merged;
  for (auto& part : produced)
    for (auto& kv : part) merged.push_back(std::move(kv));
  std::sort(merged.begin(), merged.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [k, c] : merged) result.insert_term(k, std::move(c));
  return result;
}

}  // namespace padicreg::kernels
