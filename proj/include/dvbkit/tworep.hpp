// 2-term representations up to homotopy: axioms, twists, duals, self-duality,
// adjoint and tangent constructions, the direct-sum doubling, and the
// realization of the induced bracket on the decomposed double vector bundle
// with its Jacobiator report.
#pragma once

#include "dvbkit/metricdvb.hpp"

namespace dvbkit {

// (partial: E0 -> E1, conn0 on E0, conn1 on E1, curv in Omega^2(A, Hom(E1, E0)))
// over the Lie algebroid A.
struct TwoRep {
  LieAlgebroidModel algebroid;
  VBundle e0, e1;
  PolyMatrix partial;                        // e1.rank x e0.rank
  Connection conn0, conn1;                   // anchored by the algebroid
  std::vector<std::vector<PolyMatrix>> curv; // [i][j]: e0.rank x e1.rank
};

TwoRep make_tworep(LieAlgebroidModel algebroid, VBundle e0, VBundle e1,
                   PolyMatrix partial, std::vector<PolyMatrix> gamma0,
                   std::vector<PolyMatrix> gamma1,
                   std::vector<std::vector<PolyMatrix>> curv);

TwoRep zero_rep(const LieAlgebroidModel& algebroid, int rank0, int rank1);

// Residuals of: partial o conn0 = conn1 o partial; R_{conn0} = curv o partial;
// R_{conn1} = partial o curv; d_{Hom} curv = 0. Includes the algebroid's own
// axioms.
Report check_tworep(const TwoRep& r);

// phi(a_i): E1 -> E0 per frame index.
using TwistTensor = std::vector<PolyMatrix>;

// conn1 += partial o phi, conn0 += phi o partial,
// curv += d_{Hom} phi + phi ^ partial ^ phi.
TwoRep twist(const TwoRep& r, const TwistTensor& phi);

// (partial^t, conn1^*, conn0^*, -curv^*) on the dual complex. The double dual
// is the identity on data.
TwoRep dualize_rep(const TwoRep& r);

// Self-duality through an identification j: E0 -> E1* (identity by default):
// j^t partial symmetric, j conn0 + conn1^t j + rho(j) = 0, j curv antisymmetric.
Report selfdual_report(const TwoRep& r, const PolyMatrix* j = nullptr);
bool is_selfdual(const TwoRep& r, const PolyMatrix* j = nullptr);

// (Id_E, nabla, nabla, R_nabla) over the tangent algebroid.
TwoRep tangent_rep(const Connection& tm_conn);

// The adjoint construction from a TM-connection on the algebroid:
// (rho: A -> TM, nabla^bas, nabla^bas, R^bas).
TwoRep adjoint_rep(const LieAlgebroidModel& l, const Connection& tm_conn);

// Twist relating the adjoint representations of two TM-connections:
// phi(a_i) column u = nabla'_u a_i - nabla_u a_i.
TwistTensor adjoint_twist(const LieAlgebroidModel& l, const Connection& from,
                          const Connection& to);

// Self-dual doubling on (E1* (+) E0) -> (E1 (+) E0*).
TwoRep direct_sum_double(const TwoRep& r);

// --- VB-algebroid realization ----------------------------------------------

// Sections of D over B = E1 written over the generators sigma_A(a_i) and
// c_j^+, with coefficients polynomial in base coordinates and fiber-linear
// coordinates of B.
struct FiberedSection {
  PolyVec lin;   // algebroid-rank coefficients
  PolyVec core;  // e0-rank coefficients
};

struct FiberedVF {
  PolyVec dx, dy;
};

class VBAlgebroidRealization {
 public:
  explicit VBAlgebroidRealization(TwoRep rep);

  const TwoRep& rep() const { return rep_; }
  // Function ring on the total space of B: [x | y], y the fiber coordinates.
  int vars() const { return n_ + r1_; }
  int n_base() const { return n_; }
  int rank_fiber() const { return r1_; }

  FiberedSection zero_section() const;
  FiberedSection lin_generator(int i) const;
  FiberedSection core_generator(int j) const;
  // Core-linear section of psi: B -> E0 (e0.rank x e1.rank over the base).
  FiberedSection core_linear(const PolyMatrix& psi) const;

  FiberedVF anchor(const FiberedSection& s) const;
  Poly vf_apply_fn(const FiberedVF& v, const Poly& f) const;
  FiberedSection bracket(const FiberedSection& s, const FiberedSection& t) const;

  // Jacobiators on all generator triples and anchor compatibility on all
  // generator pairs; clean exactly when the 2-representation axioms hold.
  Report jacobi_report() const;

 private:
  TwoRep rep_;
  int n_, ra_, r0_, r1_;
  std::vector<FiberedVF> gen_anchor_;  // sigma's then cores
  // Generator brackets: [p][q] as FiberedSections, p, q over sigma+core list.
  std::vector<std::vector<FiberedSection>> gen_bracket_;
};

// Lagrangian metric VB-algebroid test: self-duality of the representing
// 2-rep plus the closure of the isotropic linear sections under the bracket,
// with the failing bracket case named. Throws for a non-Lagrangian splitting.
Report metric_vb_check(const MetricDVB& m, const TwoRep& rep);

}  // namespace dvbkit
