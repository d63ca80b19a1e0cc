// The free graded-commutative function algebra of a split graded manifold of
// degree 2: anticommuting degree-1 generators, commuting degree-2 generators,
// polynomial coefficients. Conversion dictionaries between degree-2 elements,
// isotropic linear sections, and Hom-valued tensors live here; every other
// module goes through them, so the normalization conventions are fixed in
// exactly one place (see docs/conventions.md).
#pragma once

#include "dvbkit/linalg.hpp"

#include <cstdint>
#include <map>

namespace dvbkit {

struct GradedRing {
  int n_base = 0;  // base coordinates
  int r_odd = 0;   // degree-1 generators (at most 31)
  int r_even = 0;  // degree-2 generators

  friend bool operator==(const GradedRing&, const GradedRing&) = default;
};

struct GKey {
  std::uint32_t odd = 0;  // bitmask over the odd generators
  Mono even;              // exponents over the even generators

  friend auto operator<=>(const GKey&, const GKey&) = default;
};

int key_degree(const GKey& k);

class GradedFunction {
 public:
  GradedFunction() = default;
  explicit GradedFunction(GradedRing ring) : ring_(ring) {}

  static GradedFunction base(const GradedRing& ring, const Poly& f);
  static GradedFunction odd_gen(const GradedRing& ring, int i);
  static GradedFunction even_gen(const GradedRing& ring, int j);

  const GradedRing& ring() const { return ring_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<GKey, Poly>& terms() const { return terms_; }
  // -1 for the zero element.
  int max_degree() const;
  bool is_homogeneous(int* degree = nullptr) const;

  void add_term(const GKey& key, const Poly& coeff);
  Poly coeff(const GKey& key) const;

  GradedFunction operator-() const;
  GradedFunction& operator+=(const GradedFunction& o);
  GradedFunction& operator-=(const GradedFunction& o);
  friend GradedFunction operator+(GradedFunction a, const GradedFunction& b) { return a += b; }
  friend GradedFunction operator-(GradedFunction a, const GradedFunction& b) { return a -= b; }
  friend GradedFunction operator*(const GradedFunction& a, const GradedFunction& b);
  friend GradedFunction operator*(const Poly& f, const GradedFunction& a);
  friend GradedFunction operator*(const GradedFunction& a, const Ratio& c);
  friend bool operator==(const GradedFunction& a, const GradedFunction& b) = default;

  std::string str() const;

 private:
  GradedRing ring_;
  std::map<GKey, Poly> terms_;  // coefficients over the base ring
};

// Koszul sign for multiplying odd monomials a * b; 0 when they collide.
int odd_product_sign(std::uint32_t a, std::uint32_t b);

// --- conversion dictionary ---------------------------------------------------
//
// A degree-2 element splits as sum_j b_j eta_j + sum_{k<l} c_{kl} xi_k xi_l.
// The coefficient matrix c (antisymmetric extension) corresponds to the
// isotropic linear section sigma_B(b) + ~W with section map W = -c, where W
// acts as ell_{~W}(d) = <q2, W q1>. Products of degree-1 generators therefore
// realize determinant-convention wedges; the 1/k!-averaged wedge is the one
// appearing in pairings and in the psi embedding.

// sigma_B(b) + ~W |-> degree-2 element (W antisymmetric, ranks from the ring).
GradedFunction section_to_graded(const GradedRing& ring, const PolyVec& base_b,
                                 const PolyMatrix& w);

// Inverse of section_to_graded on homogeneous degree-2 elements.
void graded_to_section(const GradedFunction& f, PolyVec* base_b, PolyMatrix* w);

}  // namespace dvbkit
