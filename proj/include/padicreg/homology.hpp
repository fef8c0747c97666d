#pragma once

// Bar chains Z (x)_G B_n G, their differential, right coset data for a
// finite-index subgroup H of G, and the chain-level transfer to H.
//
// A group type provides
//   using Elem;  Elem identity() const;  Elem mul(a, b) const;
//   Elem inverse(a) const;  bool in_subgroup(a) const;
// and optionally `coset_key(y)`, constant on right cosets H y, which turns
// coset lookup into a map search.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "padicreg/matforms.hpp"

namespace padicreg {

// ------------------------------------------------------------------ groups

/// Permutations of {0..n-1} acting on the right: (s t)(k) = t(s(k)).
class PermutationGroup {
 public:
  using Elem = std::vector<int>;

  /// Symmetric group S_n with subgroup H generated by `subgroup_generators`.
  PermutationGroup(int n, const std::vector<Elem>& subgroup_generators);
  static PermutationGroup alternating_in_symmetric(int n);
  /// The dihedral group of the square inside S_4, generated by (1234), (13).
  static PermutationGroup dihedral_in_s4();
  /// From 1-based one-line images.
  static Elem from_one_line(const std::vector<int>& images);
  static std::vector<int> to_one_line(const Elem& g);

  int degree() const { return n_; }
  Elem identity() const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inverse(const Elem& a) const;
  bool in_subgroup(const Elem& a) const { return subgroup_.count(a) != 0; }
  std::vector<Elem> elements() const;
  std::vector<Elem> subgroup_elements() const { return {subgroup_.begin(), subgroup_.end()}; }

 private:
  int n_;
  std::set<Elem> subgroup_;
};

/// GL_N(O_F / p^M) with H = matrices congruent to 1 mod p^e.
class MatrixGroup {
 public:
  using Elem = OMatrix;

  MatrixGroup(RingParams params, int n, int e);

  const RingParams& params() const { return params_; }
  int matrix_size() const { return n_; }
  int level() const { return e_; }
  Elem identity() const { return OMatrix::identity(params_, n_); }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inverse(const Elem& a) const { return a.inverse(); }
  bool in_subgroup(const Elem& a) const { return a.congruent_to_identity(e_); }
  bool contains(const Elem& a) const;
  /// H is normal with quotient GL_N(O_F / p^e): reduction mod p^e.
  Elem coset_key(const Elem& y) const { return y.truncated(e_); }
  /// Canonical lifts of GL_N(O_F / p^e), identity first. Throws when more
  /// than `limit` candidates would have to be scanned.
  std::vector<Elem> residue_lifts(std::uint64_t limit = 1'000'000) const;

 private:
  RingParams params_;
  int n_;
  int e_;
};

// -------------------------------------------------------------- coset data

template <class G>
class CosetSystem {
 public:
  using Elem = typename G::Elem;

  /// Representatives x_1..x_m of the right cosets H x_i. They are checked to
  /// lie in distinct cosets; coverage is the caller's responsibility.
  CosetSystem(G group, std::vector<Elem> reps) : group_(std::move(group)), reps_(std::move(reps)) {
    if (reps_.empty()) throw PreconditionError("coset system needs at least one representative");
    for (std::size_t i = 0; i < reps_.size(); ++i) {
      inv_.push_back(group_.inverse(reps_[i]));
      if constexpr (requires { group_.coset_key(reps_[i]); }) {
        if (!keys_.emplace(group_.coset_key(reps_[i]), i).second)
          throw PreconditionError("coset representatives " + std::to_string(i + 1) + " share a coset");
      } else {
        for (std::size_t j = 0; j < i; ++j)
          if (group_.in_subgroup(group_.mul(reps_[i], inv_[j])))
            throw PreconditionError("coset representatives " + std::to_string(j + 1) + " and " +
                                    std::to_string(i + 1) + " share a coset");
      }
    }
  }

  const G& group() const { return group_; }
  std::size_t size() const { return reps_.size(); }
  const std::vector<Elem>& reps() const { return reps_; }

  /// y = h x_j with h in H; returns (h, j), j 0-based.
  std::pair<Elem, std::size_t> locate(const Elem& y) const {
    if constexpr (requires { group_.coset_key(y); }) {
      const auto it = keys_.find(group_.coset_key(y));
      if (it == keys_.end()) throw PreconditionError("no coset representative matches");
      return {group_.mul(y, inv_[it->second]), it->second};
    } else {
      return locate_scan(y);
    }
  }

  /// The same lookup by scanning representatives with the membership test.
  std::pair<Elem, std::size_t> locate_scan(const Elem& y) const {
    for (std::size_t j = 0; j < reps_.size(); ++j) {
      Elem h = group_.mul(y, inv_[j]);
      if (group_.in_subgroup(h)) return {std::move(h), j};
    }
    throw PreconditionError("no coset representative matches");
  }

  /// x_i g = h(i, g) x_{pi(g)(i)}.
  std::pair<Elem, std::size_t> coset_data(std::size_t i, const Elem& g) const {
    return locate(group_.mul(reps_[i], g));
  }

 private:
  G group_;
  std::vector<Elem> reps_;
  std::vector<Elem> inv_;
  std::map<Elem, std::size_t> keys_;
};

/// Representatives found by scanning the elements of a finite group,
/// identity first.
CosetSystem<PermutationGroup> right_cosets(const PermutationGroup& g);
CosetSystem<MatrixGroup> right_cosets(const MatrixGroup& g);

// -------------------------------------------------------------- bar chains

/// sum c * 1 (x) (1, g_1, ..., g_n), keyed by (g_1..g_n).
template <class E>
struct BarChain {
  int degree = 0;
  std::map<std::vector<E>, std::int64_t> terms;

  void add(const std::vector<E>& tuple, std::int64_t c) {
    if (c == 0) return;
    auto [it, fresh] = terms.try_emplace(tuple, c);
    if (fresh) return;
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
  BarChain& operator+=(const BarChain& o) {
    for (const auto& [t, c] : o.terms) add(t, c);
    return *this;
  }
  BarChain operator-(const BarChain& o) const {
    BarChain r = *this;
    for (const auto& [t, c] : o.terms) r.add(t, -c);
    return r;
  }
  bool is_zero() const { return terms.empty(); }
  bool operator==(const BarChain& o) const = default;
};

template <class G>
BarChain<typename G::Elem> bar_differential(const G& group, const BarChain<typename G::Elem>& c) {
  using E = typename G::Elem;
  if (c.degree < 1) throw PreconditionError("bar differential needs degree >= 1");
  BarChain<E> out{c.degree - 1, {}};
  for (const auto& [g, coeff] : c.terms) {
    const std::size_t n = g.size();
    // Face 0: (g_1, ..., g_n) renormalised by g_1^-1.
    const E g1inv = group.inverse(g[0]);
    std::vector<E> face;
    for (std::size_t k = 1; k < n; ++k) face.push_back(group.mul(g1inv, g[k]));
    out.add(face, coeff);
    for (std::size_t j = 1; j <= n; ++j) {
      face.assign(g.begin(), g.end());
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(j - 1));
      out.add(face, j % 2 ? -coeff : coeff);
    }
  }
  return out;
}

/// T_n(1 (x) (1, g_1..g_n)) = sum_i 1 (x) (1, h(i, g_1), ..., h(i, g_n)).
template <class G>
BarChain<typename G::Elem> transfer(const CosetSystem<G>& cosets, const BarChain<typename G::Elem>& c) {
  using E = typename G::Elem;
  const auto m = static_cast<std::int64_t>(cosets.size());
  std::vector<BarChain<E>> parts(cosets.size(), BarChain<E>{c.degree, {}});
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < m; ++i) {
    auto& part = parts[static_cast<std::size_t>(i)];
    for (const auto& [g, coeff] : c.terms) {
      std::vector<E> image;
      image.reserve(g.size());
      for (const E& x : g) image.push_back(cosets.coset_data(static_cast<std::size_t>(i), x).first);
      part.add(image, coeff);
    }
  }
  BarChain<E> out{c.degree, {}};
  for (const auto& part : parts) out += part;
  return out;
}

/// (1 (x) d) T_n (c) == T_{n-1} (1 (x) d)(c), exactly.
template <class G>
bool check_chain_map(const CosetSystem<G>& cosets, const BarChain<typename G::Elem>& c) {
  return bar_differential(cosets.group(), transfer(cosets, c)) ==
         transfer(cosets, bar_differential(cosets.group(), c));
}

/// s(T~(c)): every entry of x_i (1, g_1, ..., g_n) is factored as h x_j and
/// the H-parts, renormalised by the first one, form the image tuple.
template <class G>
BarChain<typename G::Elem> section_of_induced(const CosetSystem<G>& cosets, const BarChain<typename G::Elem>& c) {
  using E = typename G::Elem;
  const G& group = cosets.group();
  BarChain<E> out{c.degree, {}};
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    const E& x = cosets.reps()[i];
    for (const auto& [g, coeff] : c.terms) {
      const E h0inv = group.inverse(cosets.locate_scan(x).first);
      std::vector<E> image;
      for (const E& gk : g) image.push_back(group.mul(h0inv, cosets.locate_scan(group.mul(x, gk)).first));
      out.add(image, coeff);
    }
  }
  return out;
}

/// T == s . T~ on the given chain.
template <class G>
bool factorization_check(const CosetSystem<G>& cosets, const BarChain<typename G::Elem>& c) {
  return transfer(cosets, c) == section_of_induced(cosets, c);
}

// ------------------------------------------------- boundaries over Z

/// Integer solution of A x = b, or nothing. Column-style Hermite elimination.
std::optional<std::vector<mpz_class>> solve_integer_system(const std::vector<std::vector<mpz_class>>& a,
                                                           const std::vector<mpz_class>& b);

/// A chain x of degree n+1 over the listed elements with d(x) = target, if
/// one exists. The basis is every (n+1)-tuple, so keep the group tiny.
template <class G>
std::optional<BarChain<typename G::Elem>> solve_boundary(const G& group, const std::vector<typename G::Elem>& elems,
                                                         const BarChain<typename G::Elem>& target,
                                                         std::size_t max_columns = 5000) {
  using E = typename G::Elem;
  const int n = target.degree + 1;
  std::size_t columns = 1;
  for (int k = 0; k < n; ++k) {
    columns *= elems.size();
    if (columns > max_columns) throw PreconditionError("boundary solver basis too large");
  }
  std::vector<std::vector<E>> basis;
  std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
  for (std::size_t idx = 0; idx < columns; ++idx) {
    std::size_t rest = idx;
    std::vector<E> t;
    for (int k = 0; k < n; ++k) {
      t.push_back(elems[rest % elems.size()]);
      rest /= elems.size();
    }
    basis.push_back(std::move(t));
  }
  std::map<std::vector<E>, std::size_t> row_of;
  std::vector<BarChain<E>> images;
  for (const auto& t : basis) {
    BarChain<E> single{n, {}};
    single.add(t, 1);
    images.push_back(bar_differential(group, single));
    for (const auto& [k, c] : images.back().terms) row_of.try_emplace(k, row_of.size());
  }
  for (const auto& [k, c] : target.terms)
    if (!row_of.count(k)) return std::nullopt;
  std::vector<std::vector<mpz_class>> a(row_of.size(), std::vector<mpz_class>(columns, 0));
  for (std::size_t j = 0; j < columns; ++j)
    for (const auto& [k, c] : images[j].terms) a[row_of.at(k)][j] = static_cast<long>(c);
  std::vector<mpz_class> b(row_of.size(), 0);
  for (const auto& [k, c] : target.terms) b[row_of.at(k)] = static_cast<long>(c);
  const auto x = solve_integer_system(a, b);
  if (!x) return std::nullopt;
  BarChain<E> out{n, {}};
  for (std::size_t j = 0; j < columns; ++j) {
    if ((*x)[j] == 0) continue;
    if (!(*x)[j].fits_slong_p()) throw PreconditionError("boundary coefficient overflow");
    out.add(basis[j], (*x)[j].get_si());
  }
  return out;
}

}  // namespace padicreg
