// Linear metrics on decomposed double vector bundles, Lagrangian splittings,
// isotropic linear sections, the duality with involutive double vector
// bundles, involutive splittings, and the embedding of generators as
// functions on the involutive side.
#pragma once

#include "dvbkit/dvb.hpp"

namespace dvbkit {

// (E; Q, B; M) with core Q*, metric stored through the Lambda tensor of the
// ambient decomposition:
//   <sigma_Q(q1), sigma_Q(q2)> = ell_{Lambda(q1, q2)},
//   <sigma_Q(q), tau^+>        = q_B^* <q, tau>,
//   <tau1^+, tau2^+>           = 0.
struct MetricDVB {
  DecomposedDVB host;  // side_a = Q, side_b = B, core = Q*
  PolyCube lambda;     // (q, q, B*-index), symmetric in the two Q slots
};

// (D; Q, Q; M) with core B*, involution stored through the kappa tensor:
//   I(q1, q2, beta) = (q2, q1, -beta + kappa(q1, q2)).
// I^2 = Id is exactly the symmetry of kappa (checked, not assumed).
struct InvolutiveDVB {
  DecomposedDVB host;  // side_a = side_b = Q, core = B*
  PolyCube kappa;
};

MetricDVB make_metric_dvb(const Chart& chart, int rank_q, int rank_b, PolyCube lambda);
InvolutiveDVB make_involutive_dvb(const Chart& chart, int rank_q, int rank_b, PolyCube kappa);

// Points in decomposed coordinates.
struct EPoint {
  RatVec base, q, b, tau;
};
struct DPoint {
  RatVec base, q1, q2, beta;
};

// Metric of two points with equal base and B-projection.
Ratio pairing_eval(const MetricDVB& m, const EPoint& e1, const EPoint& e2);

DPoint involution_apply(const InvolutiveDVB& d, const DPoint& p);

// I^2 = Id (equivalently: kappa symmetric), core morphism -Id, projections
// exchanged; plus the nondegeneracy of the induced pairing matrix for the
// metric side.
Report check_involutive(const InvolutiveDVB& d);
Report check_metric(const MetricDVB& m);

// Lambda tensor measured in the decomposition shifted by phi:
//   Lambda'(q1, q2) = Lambda(q1, q2) + <phi(q1), q2> + <phi(q2), q1>.
// phi is a splitting change of the host (slots: Q, B, core Q*).
PolyCube lambda_of_splitting(const MetricDVB& m, const SplittingChange& change);

// Change of splitting to a Lagrangian one: phi = -1/2 Lambda(q, .)^*.
SplittingChange symmetrize_splitting(const MetricDVB& m);

// s is a linear section over Q relative to a Lagrangian splitting; isotropy
// of its image is antisymmetry of the core-linear part.
bool isotropic_test(const MetricDVB& m, const LinearSection& s);

// --- the duality -----------------------------------------------------------

// D = E*_Q with its involution. The kappa tensor is recovered numerically
// from the defining pairing relation by an exact linear solve at seeded
// sample points and then confirmed symbolically; construction fails loudly
// if the confirmation does not hold.
InvolutiveDVB metric_to_involutive(const MetricDVB& m, std::uint64_t seed = 42);

// E = D*_{pi_1} with the metric <e1, e2> = <e1, d>_Q + <e2, I(d)>_Q.
// Independence of the auxiliary d (its core part) is checked symbolically.
MetricDVB involutive_to_metric(const InvolutiveDVB& d);

// kappa measured in the splitting shifted from the ambient one by zeta
// (slots: Q, Q, B*): kappa'(q1, q2) = kappa(q1, q2) - zeta(q1, q2) - zeta(q2, q1).
PolyCube kappa_after_change(const InvolutiveDVB& d, const PolyCube& zeta);

// Averages the splitting given by zeta into an involutive one,
//   Sigma'(q1, q2) = 1/2 (Sigma(q1, q2) + I(Sigma(q2, q1)));
// returns the change from zeta to the averaged splitting.
PolyCube involutive_splitting(const InvolutiveDVB& d, const PolyCube& zeta);

// --- functions on D --------------------------------------------------------

// Functions on the total space of D live in Poly over [x | q1 | q2 | beta].
struct DRing {
  int n = 0, rq = 0, rb = 0;
  int vars() const { return n + 2 * rq + rb; }
  int x(int u) const { return u; }
  int q1(int i) const { return n + i; }
  int q2(int i) const { return n + rq + i; }
  int be(int j) const { return n + 2 * rq + j; }
};

DRing d_ring(const InvolutiveDVB& d);

// Pullback of a function through the involution (symbolic).
Poly involution_pullback(const InvolutiveDVB& d, const Poly& f);

// ell of a linear section chi of E over Q (chi = sigma_B(b) + ~psi):
//   ell_chi(q1, q2, beta) = <q2, psi(q1)> + <beta, b>.
Poly ell_of_section(const InvolutiveDVB& d, const LinearSection& chi);

// pi_2^* ell_tau = ell_{tau^+} and pi_1^* ell_tau; pi_1^* q_Q^* f.
Poly pi1_ell(const InvolutiveDVB& d, const PolyVec& tau);
Poly pi2_ell(const InvolutiveDVB& d, const PolyVec& tau);
Poly base_fn(const InvolutiveDVB& d, const Poly& f);

// An isotropic linear section relative to a Lagrangian splitting: base part
// in Gamma(B) and an antisymmetric 2-form part (stored as the section map
// Q -> Q*, evaluation <q2, omega q1>).
struct IsotropicLinearSection {
  PolyVec base_b;
  PolyMatrix omega;  // antisymmetric rq x rq
};

// psi embedding (requires kappa = 0): core sections map to
// 1/2 <tau, q2 - q1>, isotropic sections to <b, beta> + <q2, omega q1>.
// Both satisfy I^* F = -F.
Poly psi_embed_core(const InvolutiveDVB& d, const PolyVec& tau);
Poly psi_embed_isotropic(const InvolutiveDVB& d, const IsotropicLinearSection& s);

}  // namespace dvbkit
