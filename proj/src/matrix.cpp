#include <algorithm>
#include <sstream>

#include "padicreg/kernels.hpp"
#include "padicreg/matforms.hpp"

namespace padicreg {

namespace {

void require_square(const OMatrix& a, const OMatrix& b, const char* op) {
  if (a.size() != b.size())
    throw PreconditionError(std::string("matrix dimension mismatch in ") + op);
  require_same(a.params(), b.params(), op);
}

}  // namespace

OMatrix::OMatrix(RingParams params, int n) : params_(std::move(params)), n_(n) {
  if (n < 1) throw PreconditionError("matrix dimension must be >= 1");
  data_.assign(static_cast<std::size_t>(n) * n * params_.degree(), 0);
}

OMatrix OMatrix::identity(const RingParams& params, int n) {
  OMatrix m(params, n);
  const int d = params.degree();
  for (int i = 0; i < n; ++i) m.data_[static_cast<std::size_t>((i * n + i) * d)] = 1 % params.order();
  return m;
}

OMatrix OMatrix::from_ints(const RingParams& params, int n, std::span<const std::int64_t> entries) {
  if (entries.size() != static_cast<std::size_t>(n) * n)
    throw PreconditionError("from_ints needs n*n entries");
  OMatrix m(params, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.set(i, j, RingElem::from_int(params, entries[static_cast<std::size_t>(i * n + j)]));
  return m;
}

OMatrix OMatrix::from_entries(const RingParams& params, int n, std::span<const RingElem> entries) {
  if (entries.size() != static_cast<std::size_t>(n) * n)
    throw PreconditionError("from_entries needs n*n entries");
  OMatrix m(params, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set(i, j, entries[static_cast<std::size_t>(i * n + j)]);
  return m;
}

RingElem OMatrix::at(int i, int j) const {
  const int d = params_.degree();
  const auto first = data_.begin() + (i * n_ + j) * d;
  return RingElem(params_, std::vector<u64>(first, first + d));
}

void OMatrix::set(int i, int j, const RingElem& value) {
  require_same(params_, value.params(), "matrix set");
  std::copy(value.coeffs().begin(), value.coeffs().end(),
            data_.begin() + (i * n_ + j) * params_.degree());
}

OMatrix OMatrix::operator+(const OMatrix& o) const {
  OMatrix r(*this);
  r += o;
  return r;
}

OMatrix& OMatrix::operator+=(const OMatrix& o) {
  require_square(*this, o, "matrix add");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = params_.add_mod(data_[k], o.data_[k]);
  return *this;
}

OMatrix OMatrix::operator-(const OMatrix& o) const {
  require_square(*this, o, "matrix subtract");
  OMatrix r(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = params_.sub_mod(data_[k], o.data_[k]);
  return r;
}

OMatrix OMatrix::operator-() const {
  OMatrix r(*this);
  for (auto& c : r.data_) c = params_.neg_mod(c);
  return r;
}

OMatrix OMatrix::operator*(const OMatrix& o) const {
  require_square(*this, o, "matrix multiply");
  const int d = params_.degree();
  std::vector<u128> acc(static_cast<std::size_t>(n_) * n_ * (2 * d - 1), 0);
  kernels::matmul_accumulate(data_.data(), o.data_.data(), acc.data(), n_, params_);
  OMatrix r(params_, n_);
  for (int k = 0; k < n_ * n_; ++k)
    params_.fold(acc.data() + k * (2 * d - 1), r.data_.data() + k * d);
  return r;
}

OMatrix OMatrix::scaled(std::int64_t k) const { return scaled(RingElem::from_int(params_, k)); }

OMatrix OMatrix::scaled(const RingElem& c) const {
  require_same(params_, c.params(), "matrix scale");
  OMatrix r(params_, n_);
  const int d = params_.degree();
  for (int k = 0; k < n_ * n_; ++k) params_.mul(c.coeffs().data(), data_.data() + k * d, r.data_.data() + k * d);
  return r;
}

RingElem OMatrix::trace() const {
  RingElem t(params_);
  for (int i = 0; i < n_; ++i) t += at(i, i);
  return t;
}

bool OMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](u64 c) { return c == 0; });
}

bool OMatrix::is_identity() const { return *this == identity(params_, n_); }

bool OMatrix::congruent_to_identity(int e) const {
  if (e >= params_.precision()) return is_identity();
  const u64 pe = params_.p_power(e);
  const int d = params_.degree();
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < d; ++k) {
        u64 c = data_[static_cast<std::size_t>((i * n_ + j) * d + k)];
        if (i == j && k == 0) c = params_.sub_mod(c, 1);
        if (c % pe != 0) return false;
      }
  return true;
}

OMatrix OMatrix::inverse() const {
  // Gauss-Jordan; over a local ring every column of an invertible matrix
  // has a unit entry at or below the diagonal.
  OMatrix a(*this);
  OMatrix inv = identity(params_, n_);
  for (int col = 0; col < n_; ++col) {
    int pivot = -1;
    for (int r = col; r < n_; ++r)
      if (a.at(r, col).is_unit()) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw PreconditionError("matrix is not invertible over the valuation ring");
    if (pivot != col) {
      for (int j = 0; j < n_; ++j) {
        RingElem t = a.at(col, j);
        a.set(col, j, a.at(pivot, j));
        a.set(pivot, j, t);
        t = inv.at(col, j);
        inv.set(col, j, inv.at(pivot, j));
        inv.set(pivot, j, t);
      }
    }
    const RingElem scale = a.at(col, col).inverse();
    for (int j = 0; j < n_; ++j) {
      a.set(col, j, a.at(col, j) * scale);
      inv.set(col, j, inv.at(col, j) * scale);
    }
    for (int r = 0; r < n_; ++r) {
      if (r == col) continue;
      const RingElem f = a.at(r, col);
      if (f.is_zero()) continue;
      for (int j = 0; j < n_; ++j) {
        a.set(r, j, a.at(r, j) - f * a.at(col, j));
        inv.set(r, j, inv.at(r, j) - f * inv.at(col, j));
      }
    }
  }
  return inv;
}

OMatrix OMatrix::to_params(const RingParams& target) const {
  if (!params_.same_field(target)) throw PreconditionError("precision change across different fields");
  OMatrix r(target, n_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] % target.order();
  return r;
}

OMatrix OMatrix::truncated(int m) const {
  if (m >= params_.precision()) return *this;
  OMatrix r(params_, n_);
  if (m <= 0) return r;
  const u64 pm = params_.p_power(m);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] % pm;
  return r;
}

std::strong_ordering OMatrix::operator<=>(const OMatrix& o) const {
  if (auto c = n_ <=> o.n_; c != 0) return c;
  return data_ <=> o.data_;
}

std::string OMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < n_; ++j) os << (j ? ", " : "") << at(i, j).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

OMatrix mat_inverse_one_plus(const OMatrix& x, int e) {
  check_convergence(x.params().prime(), e);
  const RingParams& params = x.params();
  const OMatrix step = x.scaled(-static_cast<std::int64_t>(params.p_power(std::min(e, params.precision()))));
  OMatrix sum = OMatrix::identity(params, x.size());
  OMatrix term = sum;
  for (int i = 1; static_cast<std::int64_t>(i) * e < params.precision(); ++i) {
    term = term * step;
    sum += term;
  }
  return sum;
}

}  // namespace padicreg
