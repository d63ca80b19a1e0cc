// Dense matrices of polynomials, and exact rational linear algebra.
#pragma once

#include "dvbkit/poly.hpp"

#include <optional>
#include <vector>

namespace dvbkit {

class PolyMatrix {
 public:
  PolyMatrix() : rows_(0), cols_(0), n_vars_(0) {}
  PolyMatrix(int rows, int cols, int n_vars);

  static PolyMatrix identity(int n, int n_vars);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int n_vars() const { return n_vars_; }

  const Poly& at(int r, int c) const;
  Poly& at(int r, int c);

  PolyMatrix transpose() const;
  PolyMatrix operator-() const;
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const Poly& f, const PolyMatrix& m);
  friend PolyMatrix operator*(const Ratio& c, const PolyMatrix& m);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) = default;

  PolyVec apply(const PolyVec& v) const;

  bool is_zero() const;
  bool is_symmetric() const;
  bool is_antisymmetric() const;

  // Entrywise d/dx_i.
  PolyMatrix diff(int i) const;
  // Entrywise derivative along the vector field sum_u field[u] d/dx_u.
  PolyMatrix derive_along(const PolyVec& field) const;
  PolyMatrix subst(const std::vector<Poly>& images) const;
  PolyMatrix promote(int n_total, int offset) const;

  // Laplace expansion; fine for the small ranks used here.
  Poly det() const;
  // det is a nonzero constant (the exact invertibility criterion over the
  // polynomial ring; used for transition matrices and fiber metrics).
  bool has_unit_det() const;
  // Adjugate-over-determinant; requires has_unit_det().
  PolyMatrix inverse() const;

  std::vector<Poly>& entries() { return entries_; }
  const std::vector<Poly>& entries() const { return entries_; }

 private:
  int rows_, cols_, n_vars_;
  std::vector<Poly> entries_;  // row-major
};

// 3-index tensor of polynomials (splitting changes, structure tensors).
class PolyCube {
 public:
  PolyCube() : d0_(0), d1_(0), d2_(0), n_vars_(0) {}
  PolyCube(int d0, int d1, int d2, int n_vars)
      : d0_(d0), d1_(d1), d2_(d2), n_vars_(n_vars),
        e_(static_cast<std::size_t>(d0) * d1 * d2, Poly(n_vars)) {}

  int d0() const { return d0_; }
  int d1() const { return d1_; }
  int d2() const { return d2_; }
  int n_vars() const { return n_vars_; }

  Poly& at(int i, int j, int k) { return e_[(static_cast<std::size_t>(i) * d1_ + j) * d2_ + k]; }
  const Poly& at(int i, int j, int k) const {
    return e_[(static_cast<std::size_t>(i) * d1_ + j) * d2_ + k];
  }

  bool is_zero() const {
    for (const auto& p : e_)
      if (!p.is_zero()) return false;
    return true;
  }

  friend PolyCube operator+(const PolyCube& a, const PolyCube& b);
  friend PolyCube operator-(const PolyCube& a, const PolyCube& b);
  PolyCube operator-() const;
  friend bool operator==(const PolyCube& a, const PolyCube& b) = default;

  std::vector<Poly>& entries() { return e_; }
  const std::vector<Poly>& entries() const { return e_; }

 private:
  int d0_, d1_, d2_, n_vars_;
  std::vector<Poly> e_;
};

// --- exact rational dense matrices ---------------------------------------

using RatVec = std::vector<Ratio>;

class RatMatrix {
 public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Ratio& at(int r, int c) { return e_[r * cols_ + c]; }
  const Ratio& at(int r, int c) const { return e_[r * cols_ + c]; }

  int rank() const;

 private:
  int rows_, cols_;
  std::vector<Ratio> e_;
};

// Least structure needed here: solve A x = b exactly. Returns nullopt when
// the system is inconsistent or underdetermined.
std::optional<RatVec> solve_linear(RatMatrix a, RatVec b);

}  // namespace dvbkit
