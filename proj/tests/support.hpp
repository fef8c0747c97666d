#pragma once

// Random inputs shared by the unit tests and the acceptance binary.

#include <cstdint>
#include <random>
#include <vector>

#include "padicreg/cocycle.hpp"

namespace testsupport {

using namespace padicreg;

inline RingElem random_elem(const RingParams& params, std::mt19937_64& rng) {
  std::vector<u64> c(static_cast<std::size_t>(params.degree()));
  for (auto& x : c) x = rng() % params.order();
  return RingElem(params, c);
}

/// 1 + p^e X with X uniform.
inline OMatrix random_congruent(const RingParams& params, int n, int e, std::mt19937_64& rng) {
  OMatrix g = OMatrix::identity(params, n);
  const u64 pe = params.p_power(e);
  for (auto& c : g.data()) c = params.add_mod(c, params.mul_mod(pe, rng() % params.order()));
  return g;
}

/// Uniform element of GL_n(O_F / p^M) (rejection on the residue).
inline OMatrix random_invertible(const RingParams& params, int n, std::mt19937_64& rng) {
  for (;;) {
    OMatrix g(params, n);
    for (auto& c : g.data()) c = rng() % params.order();
    try {
      (void)g.to_params(params.with_precision(1)).inverse();
      return g;
    } catch (const PreconditionError&) {
    }
  }
}

inline GroupTuple random_tuple(const RingParams& params, int s, int e, int n, std::size_t length,
                               std::mt19937_64& rng) {
  GroupTuple t{params, s, e, {}};
  for (std::size_t i = 0; i < length; ++i) t.elems.push_back(random_congruent(params, n, e, rng));
  return t;
}

/// Precision that lets a tuple be evaluated at `target` with degree caps up
/// to the automatic one plus `slack`.
inline int tuple_precision(int target, int e, int s, u64 p, int slack) {
  EvalOptions opts;
  opts.degree_cap = eval_degree_cap(target, e, s, p) + slack;
  return eval_work_precision(target, e, s, p, opts);
}

}  // namespace testsupport
