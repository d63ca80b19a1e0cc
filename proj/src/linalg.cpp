#include "dvbkit/linalg.hpp"

#include <stdexcept>

namespace dvbkit {

PolyMatrix::PolyMatrix(int rows, int cols, int n_vars)
    : rows_(rows), cols_(cols), n_vars_(n_vars),
      entries_(static_cast<std::size_t>(rows) * cols, Poly(n_vars)) {}

PolyMatrix PolyMatrix::identity(int n, int n_vars) {
  PolyMatrix m(n, n, n_vars);
  for (int i = 0; i < n; ++i) m.at(i, i) = Poly::constant(n_vars, Ratio(1));
  return m;
}

const Poly& PolyMatrix::at(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("PolyMatrix::at");
  return entries_[static_cast<std::size_t>(r) * cols_ + c];
}

Poly& PolyMatrix::at(int r, int c) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("PolyMatrix::at");
  return entries_[static_cast<std::size_t>(r) * cols_ + c];
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(cols_, rows_, n_vars_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

PolyMatrix PolyMatrix::operator-() const {
  PolyMatrix m = *this;
  for (auto& p : m.entries_) p = -p;
  return m;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("PolyMatrix+: shapes");
  PolyMatrix m = a;
  for (std::size_t i = 0; i < m.entries_.size(); ++i)
    m.entries_[i] += b.entries_[i];
  return m;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("PolyMatrix-: shapes");
  PolyMatrix m = a;
  for (std::size_t i = 0; i < m.entries_.size(); ++i)
    m.entries_[i] -= b.entries_[i];
  return m;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("PolyMatrix*: shapes");
  PolyMatrix m(a.rows_, b.cols_, a.n_vars_);
  for (int r = 0; r < a.rows_; ++r)
    for (int k = 0; k < a.cols_; ++k) {
      if (a.at(r, k).is_zero()) continue;
      for (int c = 0; c < b.cols_; ++c) m.at(r, c) += a.at(r, k) * b.at(k, c);
    }
  return m;
}

PolyMatrix operator*(const Poly& f, const PolyMatrix& m) {
  PolyMatrix r = m;
  for (auto& p : r.entries_) p = f * p;
  return r;
}

PolyMatrix operator*(const Ratio& c, const PolyMatrix& m) {
  PolyMatrix r = m;
  for (auto& p : r.entries_) p = p * c;
  return r;
}

PolyVec PolyMatrix::apply(const PolyVec& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw std::invalid_argument("PolyMatrix::apply: length");
  PolyVec r = zero_vec(n_vars_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

bool PolyMatrix::is_zero() const {
  for (const auto& p : entries_)
    if (!p.is_zero()) return false;
  return true;
}

bool PolyMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = r + 1; c < cols_; ++c)
      if (!(at(r, c) == at(c, r))) return false;
  return true;
}

bool PolyMatrix::is_antisymmetric() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = r; c < cols_; ++c)
      if (!(at(r, c) + at(c, r)).is_zero()) return false;
  return true;
}

PolyMatrix PolyMatrix::diff(int i) const {
  PolyMatrix m = *this;
  for (auto& p : m.entries_) p = p.diff(i);
  return m;
}

PolyMatrix PolyMatrix::derive_along(const PolyVec& field) const {
  PolyMatrix m(rows_, cols_, n_vars_);
  for (std::size_t u = 0; u < field.size(); ++u) {
    if (field[u].is_zero()) continue;
    for (std::size_t i = 0; i < entries_.size(); ++i)
      m.entries_[i] += field[u] * entries_[i].diff(static_cast<int>(u));
  }
  return m;
}

PolyMatrix PolyMatrix::subst(const std::vector<Poly>& images) const {
  int target = images.empty() ? 0 : images[0].n_vars();
  PolyMatrix m(rows_, cols_, target);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    m.entries_[i] = entries_[i].subst(images);
  return m;
}

PolyMatrix PolyMatrix::promote(int n_total, int offset) const {
  PolyMatrix m(rows_, cols_, n_total);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    m.entries_[i] = entries_[i].promote(n_total, offset);
  return m;
}

namespace {
Poly det_rec(const PolyMatrix& m, std::vector<int>& cols, int row) {
  if (static_cast<int>(cols.size()) == 0)
    return Poly::constant(m.n_vars(), Ratio(1));
  Poly acc(m.n_vars());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (m.at(row, cols[k]).is_zero()) continue;
    std::vector<int> rest;
    rest.reserve(cols.size() - 1);
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (j != k) rest.push_back(cols[j]);
    Poly sub = det_rec(m, rest, row + 1);
    Poly contrib = m.at(row, cols[k]) * sub;
    if (k % 2 == 1) contrib = -contrib;
    acc += contrib;
  }
  return acc;
}
}  // namespace

Poly PolyMatrix::det() const {
  if (rows_ != cols_) throw std::invalid_argument("PolyMatrix::det: square");
  std::vector<int> cols(cols_);
  for (int i = 0; i < cols_; ++i) cols[i] = i;
  return det_rec(*this, cols, 0);
}

bool PolyMatrix::has_unit_det() const {
  if (rows_ != cols_) return false;
  Poly d = det();
  return d.is_constant() && !d.is_zero();
}

PolyMatrix PolyMatrix::inverse() const {
  Poly d = det();
  if (!d.is_constant() || d.is_zero())
    throw std::invalid_argument("PolyMatrix::inverse: determinant not a nonzero constant");
  Ratio dc = d.constant_value();
  int n = rows_;
  PolyMatrix adj(n, n, n_vars_);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      // Cofactor C_{rc}, placed transposed.
      PolyMatrix minor(n - 1, n - 1, n_vars_);
      for (int i = 0, mi = 0; i < n; ++i) {
        if (i == r) continue;
        for (int j = 0, mj = 0; j < n; ++j) {
          if (j == c) continue;
          minor.at(mi, mj) = at(i, j);
          ++mj;
        }
        ++mi;
      }
      Poly cof = (n == 1) ? Poly::constant(n_vars_, Ratio(1)) : minor.det();
      if ((r + c) % 2 == 1) cof = -cof;
      adj.at(c, r) = cof;
    }
  }
  PolyMatrix inv(n, n, n_vars_);
  Ratio inv_d = Ratio(1) / dc;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv.at(r, c) = adj.at(r, c) * inv_d;
  return inv;
}

PolyCube operator+(const PolyCube& a, const PolyCube& b) {
  if (a.d0_ != b.d0_ || a.d1_ != b.d1_ || a.d2_ != b.d2_)
    throw std::invalid_argument("PolyCube+: shapes");
  PolyCube r = a;
  for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
  return r;
}

PolyCube operator-(const PolyCube& a, const PolyCube& b) {
  if (a.d0_ != b.d0_ || a.d1_ != b.d1_ || a.d2_ != b.d2_)
    throw std::invalid_argument("PolyCube-: shapes");
  PolyCube r = a;
  for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= b.e_[i];
  return r;
}

PolyCube PolyCube::operator-() const {
  PolyCube r = *this;
  for (auto& p : r.e_) p = -p;
  return r;
}

int RatMatrix::rank() const {
  RatMatrix m = *this;
  int rank = 0;
  for (int col = 0; col < cols_ && rank < rows_; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows_; ++r)
      if (m.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    for (int c = 0; c < cols_; ++c) std::swap(m.at(pivot, c), m.at(rank, c));
    Ratio p = m.at(rank, col);
    for (int r = 0; r < rows_; ++r) {
      if (r == rank || m.at(r, col) == 0) continue;
      Ratio f = m.at(r, col) / p;
      for (int c = 0; c < cols_; ++c) m.at(r, c) -= f * m.at(rank, c);
    }
    ++rank;
  }
  return rank;
}

std::optional<RatVec> solve_linear(RatMatrix a, RatVec b) {
  const int rows = a.rows(), cols = a.cols();
  if (static_cast<int>(b.size()) != rows)
    throw std::invalid_argument("solve_linear: rhs length");
  std::vector<int> pivot_col(rows, -1);
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (a.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    for (int c = 0; c < cols; ++c) std::swap(a.at(pivot, c), a.at(rank, c));
    std::swap(b[pivot], b[rank]);
    Ratio p = a.at(rank, col);
    for (int c = 0; c < cols; ++c) a.at(rank, c) /= p;
    b[rank] /= p;
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      Ratio f = a.at(r, col);
      if (f == 0) continue;
      for (int c = 0; c < cols; ++c) a.at(r, c) -= f * a.at(rank, c);
      b[r] -= f * b[rank];
    }
    pivot_col[rank] = col;
    ++rank;
  }
  for (int r = rank; r < rows; ++r)
    if (b[r] != 0) return std::nullopt;  // inconsistent
  if (rank < cols) return std::nullopt;  // underdetermined
  RatVec x(cols, Ratio(0));
  for (int r = 0; r < rank; ++r) x[pivot_col[r]] = b[r];
  return x;
}

}  // namespace dvbkit
