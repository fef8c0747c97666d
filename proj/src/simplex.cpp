#include "padicreg/simplex.hpp"

#include <bit>
#include <numeric>

#include "padicreg/error.hpp"

namespace padicreg::simplex {

namespace {

mpz_class factorial(int k) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

using Poly = std::map<std::vector<int>, mpq_class>;

Poly multiply(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace

mpq_class integrate_monomial(const std::vector<int>& a, int omit, int n) {
  if (n < 0 || static_cast<int>(a.size()) != n + 1 || omit < 0 || omit > n)
    throw PreconditionError("integrate_monomial: malformed key");
  mpz_class num = 1;
  int total = 0;
  for (int e : a) {
    if (e < 0) throw PreconditionError("integrate_monomial: negative exponent");
    num *= factorial(e);
    total += e;
  }
  mpq_class r(num, factorial(total + n));
  r.canonicalize();
  return omit % 2 ? -r : r;
}

mpq_class iterated_integral_oracle(const std::vector<int>& a, int i, int n) {
  if (static_cast<int>(a.size()) != n + 1 || i < 0 || i > n)
    throw PreconditionError("iterated_integral_oracle: malformed input");
  // Free variables y_0..y_{n-1} are the x_j with j != i, in order.
  const auto nf = static_cast<std::size_t>(n);
  Poly p{{std::vector<int>(nf, 0), mpq_class(1)}};
  Poly elim{{std::vector<int>(nf, 0), mpq_class(1)}};
  for (std::size_t k = 0; k < nf; ++k) {
    std::vector<int> e(nf, 0);
    e[k] = 1;
    elim[e] = -1;
  }
  std::size_t slot = 0;
  for (int j = 0; j <= n; ++j) {
    if (j == i) {
      for (int t = 0; t < a[static_cast<std::size_t>(j)]; ++t) p = multiply(p, elim);
      continue;
    }
    std::vector<int> e(nf, 0);
    e[slot++] = a[static_cast<std::size_t>(j)];
    p = multiply(p, Poly{{e, mpq_class(1)}});
  }
  // Integrate y_0 over [0, 1 - y_1 - ... - y_{n-1}], then y_1, and so on.
  for (std::size_t k = 0; k < nf; ++k) {
    Poly limit{{std::vector<int>(nf, 0), mpq_class(1)}};
    for (std::size_t j = k + 1; j < nf; ++j) {
      std::vector<int> e(nf, 0);
      e[j] = 1;
      limit[e] = -1;
    }
    std::vector<Poly> limit_pow{Poly{{std::vector<int>(nf, 0), mpq_class(1)}}};
    Poly next;
    for (const auto& [e, c] : p) {
      const int m = e[k] + 1;
      while (static_cast<int>(limit_pow.size()) <= m) limit_pow.push_back(multiply(limit_pow.back(), limit));
      std::vector<int> rest = e;
      rest[k] = 0;
      for (const auto& [le, lc] : limit_pow[static_cast<std::size_t>(m)]) {
        std::vector<int> out(nf);
        for (std::size_t t = 0; t < nf; ++t) out[t] = rest[t] + le[t];
        next[out] += c * lc / m;
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    p = std::move(next);
  }
  if (p.empty()) return 0;
  return p.begin()->second;
}

// ------------------------------------------------------------- RationalForm

RationalForm RationalForm::monomial(int n, const std::vector<int>& a, const std::vector<int>& wedge_indices,
                                    const mpq_class& c) {
  if (static_cast<int>(a.size()) != n + 1) throw PreconditionError("monomial: need n+1 exponents");
  Key k{a, 0};
  for (int j : wedge_indices) {
    if (j < 0 || j > n || (k.wedge >> j) & 1u) throw PreconditionError("monomial: bad wedge index");
    k.wedge |= 1u << j;
  }
  // Bring the listed dx factors into increasing order.
  int inversions = 0;
  for (std::size_t x = 0; x < wedge_indices.size(); ++x)
    for (std::size_t y = x + 1; y < wedge_indices.size(); ++y)
      if (wedge_indices[x] > wedge_indices[y]) ++inversions;
  RationalForm f(n);
  f.add(k, inversions % 2 ? mpq_class(-c) : c);
  return f;
}

void RationalForm::add(const Key& key, const mpq_class& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(key, c);
  if (fresh) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

RationalForm& RationalForm::operator+=(const RationalForm& o) {
  if (o.n_ != n_) throw PreconditionError("forms on different simplices");
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

RationalForm RationalForm::operator*(const mpq_class& c) const {
  RationalForm r(n_);
  for (const auto& [k, v] : terms_) r.add(k, v * c);
  return r;
}

mpq_class RationalForm::integrate() const {
  const std::uint32_t full = (1u << (n_ + 1)) - 1;
  mpq_class total = 0;
  for (const auto& [k, c] : terms_) {
    if (std::popcount(k.wedge) != n_) throw PreconditionError("integrate needs an n-form on Delta^n");
    total += c * integrate_monomial(k.exponents, std::countr_zero(full ^ k.wedge), n_);
  }
  return total;
}

RationalForm face_restrict(const RationalForm& w, int i) {
  const int n = w.dimension();
  if (i < 0 || i > n || n < 1) throw PreconditionError("face index out of range");
  RationalForm r(n - 1);
  for (const auto& [k, c] : w.terms()) {
    if (k.exponents[static_cast<std::size_t>(i)] > 0 || ((k.wedge >> i) & 1u)) continue;
    RationalForm::Key out;
    out.exponents = k.exponents;
    out.exponents.erase(out.exponents.begin() + i);
    const std::uint32_t low = k.wedge & ((1u << i) - 1);
    out.wedge = low | ((k.wedge >> (i + 1)) << i);
    r.add(out, c);
  }
  return r;
}

RationalForm exterior_derivative_exact(const RationalForm& w) {
  RationalForm r(w.dimension());
  for (const auto& [k, c] : w.terms()) {
    for (int j = 0; j <= w.dimension(); ++j) {
      const int a = k.exponents[static_cast<std::size_t>(j)];
      if (a == 0 || ((k.wedge >> j) & 1u)) continue;
      RationalForm::Key out = k;
      out.exponents[static_cast<std::size_t>(j)] = a - 1;
      out.wedge |= 1u << j;
      const int before = std::popcount(k.wedge & ((1u << j) - 1));
      r.add(out, before % 2 ? mpq_class(-a * c) : mpq_class(a * c));
    }
  }
  return r;
}

RationalForm wedge(const RationalForm& f, const RationalForm& g) {
  if (f.dimension() != g.dimension()) throw PreconditionError("forms on different simplices");
  RationalForm r(f.dimension());
  for (const auto& [ka, ca] : f.terms())
    for (const auto& [kb, cb] : g.terms()) {
      if (ka.wedge & kb.wedge) continue;
      int inversions = 0;
      for (int j = 0; j <= f.dimension(); ++j)
        if ((kb.wedge >> j) & 1u) inversions += std::popcount(ka.wedge >> (j + 1));
      RationalForm::Key out;
      out.exponents.resize(ka.exponents.size());
      for (std::size_t t = 0; t < out.exponents.size(); ++t) out.exponents[t] = ka.exponents[t] + kb.exponents[t];
      out.wedge = ka.wedge | kb.wedge;
      const mpq_class c = ca * cb;
      r.add(out, inversions % 2 ? mpq_class(-c) : c);
    }
  return r;
}

StokesSides stokes_check(const std::vector<int>& a, int u, int v) {
  const int n = static_cast<int>(a.size()) - 1;
  if (n < 2 || n % 2 != 0 || u < 0 || u >= v || v > n)
    throw PreconditionError("stokes_check needs a monomial (2s-1)-form on Delta^{2s} missing u < v");
  std::vector<int> idx;
  for (int j = 0; j <= n; ++j)
    if (j != u && j != v) idx.push_back(j);
  const RationalForm w = RationalForm::monomial(n, a, idx);
  StokesSides out;
  out.boundary = 0;
  for (int i = 0; i <= n; ++i) {
    const mpq_class face = face_restrict(w, i).integrate();
    out.boundary += i % 2 ? mpq_class(-face) : face;
  }
  out.interior = exterior_derivative_exact(w).integrate();
  return out;
}

std::string to_string(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace padicreg::simplex
