// Sparse multivariate polynomials over the rationals.
//
// A Poly is a map from exponent vectors to nonzero rational coefficients.
// Every routine keeps the representation canonical (no zero terms, exponent
// vectors of length n_vars), so structural equality is semantic equality.
#pragma once

#include "dvbkit/ratio.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace dvbkit {

using Mono = std::vector<std::uint32_t>;

class Poly {
 public:
  Poly() : n_vars_(0) {}
  explicit Poly(int n_vars) : n_vars_(n_vars) {}

  static Poly constant(int n_vars, const Ratio& c);
  static Poly var(int n_vars, int i, const Ratio& coeff = Ratio(1));
  // Single term c * x^mono.
  static Poly term(int n_vars, const Mono& mono, const Ratio& c);

  int n_vars() const { return n_vars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Coefficient of the zero monomial (the value if is_constant()).
  Ratio constant_value() const;

  const std::map<Mono, Ratio>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  int total_degree() const;

  void add_term(const Mono& mono, const Ratio& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& p, const Ratio& c);
  friend Poly operator*(const Ratio& c, const Poly& p) { return p * c; }
  friend bool operator==(const Poly& a, const Poly& b) = default;

  Poly pow(unsigned k) const;

  // d/dx_i, exact. Throws std::out_of_range for a bad index.
  Poly diff(int i) const;

  Ratio eval(std::span<const Ratio> point) const;
  double eval_double(std::span<const double> point) const;

  // Substitutes images[i] for x_i. All images must share a variable count,
  // which becomes the variable count of the result.
  Poly subst(const std::vector<Poly>& images) const;

  // Re-embeds into a ring with n_total variables, sending x_i to
  // x_{i + offset}.
  Poly promote(int n_total, int offset) const;

  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  int n_vars_;
  std::map<Mono, Ratio> terms_;
};

using PolyVec = std::vector<Poly>;

Poly zero_poly(int n_vars);
PolyVec zero_vec(int n_vars, int len);

PolyVec operator+(const PolyVec& a, const PolyVec& b);
PolyVec operator-(const PolyVec& a, const PolyVec& b);
PolyVec operator*(const Poly& f, const PolyVec& v);

bool is_zero(const PolyVec& v);

// <a, b> = sum_i a_i b_i.
Poly dot(const PolyVec& a, const PolyVec& b);

// Polynomial coefficient of the exact monomial `tail` in the trailing
// (p.n_vars() - base_vars) variables; the result lives over the leading
// base_vars variables.
Poly coeff_of_tail(const Poly& p, int base_vars, const Mono& tail);

}  // namespace dvbkit
