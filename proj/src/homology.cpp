#include "padicreg/homology.hpp"

#include <algorithm>
#include <numeric>

namespace padicreg {

// ------------------------------------------------------- PermutationGroup

PermutationGroup::PermutationGroup(int n, const std::vector<Elem>& subgroup_generators) : n_(n) {
  if (n < 1 || n > 8) throw PreconditionError("permutation degree must lie in 1..8");
  for (const auto& g : subgroup_generators) {
    std::vector<int> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expect(static_cast<std::size_t>(n));
    std::iota(expect.begin(), expect.end(), 0);
    if (sorted != expect) throw PreconditionError("subgroup generator is not a permutation of the right degree");
  }
  // Closure under multiplication by generators (finite, so this is the subgroup).
  std::vector<Elem> frontier{identity()};
  subgroup_.insert(identity());
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (const auto& x : frontier)
      for (const auto& g : subgroup_generators) {
        Elem y = mul(x, g);
        if (subgroup_.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
}

PermutationGroup PermutationGroup::alternating_in_symmetric(int n) {
  std::vector<Elem> gens;
  // 3-cycles (0 1 k) generate A_n.
  for (int k = 2; k < n; ++k) {
    Elem g(static_cast<std::size_t>(n));
    std::iota(g.begin(), g.end(), 0);
    g[0] = 1;
    g[1] = k;
    g[static_cast<std::size_t>(k)] = 0;
    gens.push_back(g);
  }
  return PermutationGroup(n, gens);
}

PermutationGroup PermutationGroup::dihedral_in_s4() {
  return PermutationGroup(4, {from_one_line({2, 3, 4, 1}), from_one_line({3, 2, 1, 4})});
}

PermutationGroup::Elem PermutationGroup::from_one_line(const std::vector<int>& images) {
  Elem g;
  for (int v : images) g.push_back(v - 1);
  return g;
}

std::vector<int> PermutationGroup::to_one_line(const Elem& g) {
  std::vector<int> out;
  for (int v : g) out.push_back(v + 1);
  return out;
}

PermutationGroup::Elem PermutationGroup::identity() const {
  Elem g(static_cast<std::size_t>(n_));
  std::iota(g.begin(), g.end(), 0);
  return g;
}

PermutationGroup::Elem PermutationGroup::mul(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = b[static_cast<std::size_t>(a[k])];
  return r;
}

PermutationGroup::Elem PermutationGroup::inverse(const Elem& a) const {
  Elem r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[static_cast<std::size_t>(a[k])] = static_cast<int>(k);
  return r;
}

std::vector<PermutationGroup::Elem> PermutationGroup::elements() const {
  std::vector<Elem> out;
  Elem g = identity();
  do {
    out.push_back(g);
  } while (std::next_permutation(g.begin(), g.end()));
  return out;
}

// ------------------------------------------------------------ MatrixGroup

MatrixGroup::MatrixGroup(RingParams params, int n, int e) : params_(std::move(params)), n_(n), e_(e) {
  if (e < 1 || e > params_.precision()) throw PreconditionError("level e must lie in 1..M");
}

bool MatrixGroup::contains(const Elem& a) const {
  if (a.size() != n_ || !(a.params() == params_)) return false;
  try {
    (void)a.to_params(params_.with_precision(1)).inverse();
    return true;
  } catch (const PreconditionError&) {
    return false;
  }
}

std::vector<MatrixGroup::Elem> MatrixGroup::residue_lifts(std::uint64_t limit) const {
  const u64 q = params_.p_power(e_);
  const int d = params_.degree();
  const int slots = n_ * n_ * d;
  std::uint64_t total = 1;
  for (int k = 0; k < slots; ++k) {
    if (total > limit / q) throw PreconditionError("too many residue matrices to enumerate");
    total *= q;
  }
  const RingParams residue = params_.with_precision(1);
  std::vector<Elem> out{identity()};
  const Elem one = identity();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Elem m(params_, n_);
    auto data = m.data();
    std::uint64_t rest = idx;
    for (int k = 0; k < slots; ++k) {
      data[static_cast<std::size_t>(k)] = rest % q;
      rest /= q;
    }
    if (m == one) continue;
    try {
      (void)m.to_params(residue).inverse();
    } catch (const PreconditionError&) {
      continue;
    }
    out.push_back(std::move(m));
  }
  return out;
}

CosetSystem<PermutationGroup> right_cosets(const PermutationGroup& g) {
  std::vector<PermutationGroup::Elem> reps;
  for (const auto& x : g.elements()) {
    const auto xinv = g.inverse(x);
    bool covered = false;
    for (const auto& r : reps)
      if (g.in_subgroup(g.mul(r, xinv))) {
        covered = true;
        break;
      }
    if (!covered) reps.push_back(x);
  }
  return CosetSystem<PermutationGroup>(g, std::move(reps));
}

CosetSystem<MatrixGroup> right_cosets(const MatrixGroup& g) {
  return CosetSystem<MatrixGroup>(g, g.residue_lifts());
}

// ---------------------------------------------------- integer elimination

std::optional<std::vector<mpz_class>> solve_integer_system(const std::vector<std::vector<mpz_class>>& a_in,
                                                           const std::vector<mpz_class>& b) {
  const std::size_t rows = a_in.size();
  const std::size_t cols = rows ? a_in[0].size() : 0;
  if (b.size() != rows) throw PreconditionError("system shape mismatch");
  auto a = a_in;
  // U accumulates the unimodular column operations: a_in * U = a.
  std::vector<std::vector<mpz_class>> u(cols, std::vector<mpz_class>(cols, 0));
  for (std::size_t k = 0; k < cols; ++k) u[k][k] = 1;

  auto combine = [&](std::size_t c1, std::size_t c2, const mpz_class& s, const mpz_class& t, const mpz_class& x,
                     const mpz_class& y) {
    // (col c1, col c2) <- (s c1 + t c2, x c1 + y c2)
    for (auto* m : {&a, &u})
      for (auto& row : *m) {
        const mpz_class p = row[c1], q = row[c2];
        row[c1] = s * p + t * q;
        row[c2] = x * p + y * q;
      }
  };

  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t col = 0;
  for (std::size_t r = 0; r < rows && col < cols; ++r) {
    for (std::size_t j = col + 1; j < cols; ++j) {
      if (a[r][j] == 0) continue;
      if (a[r][col] == 0) {
        combine(col, j, 0, 1, 1, 0);
        continue;
      }
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[r][col].get_mpz_t(), a[r][j].get_mpz_t());
      const mpz_class x = -a[r][j] / g, y = a[r][col] / g;
      combine(col, j, s, t, x, y);
    }
    if (a[r][col] != 0) pivots.emplace_back(r, col++);
  }

  std::vector<mpz_class> y(cols, 0);
  std::vector<mpz_class> residual = b;
  for (const auto& [r, c] : pivots) {
    if (residual[r] % a[r][c] != 0) return std::nullopt;
    y[c] = residual[r] / a[r][c];
    for (std::size_t k = 0; k < rows; ++k) residual[k] -= a[k][c] * y[c];
  }
  if (std::any_of(residual.begin(), residual.end(), [](const mpz_class& v) { return v != 0; })) return std::nullopt;
  std::vector<mpz_class> x(cols, 0);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t k = 0; k < cols; ++k)
      if (y[k] != 0) x[i] += u[i][k] * y[k];
  return x;
}

}  // namespace padicreg
