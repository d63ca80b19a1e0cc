// The two functors of the equivalence: local generator/cocycle data of a
// degree-2 graded manifold to a metric double vector bundle atlas with its
// dual involutive atlas, and back through the special sections. Morphism
// bridges and the degree-1 warm-up live here too.
#pragma once

#include "dvbkit/graded.hpp"
#include "dvbkit/metricdvb.hpp"

namespace dvbkit {

// Local model: per chart m degree-1 and n2 degree-2 generators; per ordered
// overlap (to, from) the change of generators
//   xi^{from}_i  = sum_j omega_{ji} xi^{to}_j,
//   eta^{from}_i = sum_j psi_{ji} eta^{to}_j + rho-part in the xi wedges,
// stored as omega (m x m), psi (n2 x n2) and rho[v] (antisymmetric m x m,
// one matrix per degree-2 index).
struct TwoManChart {
  Chart chart;
  int m = 0, n2 = 0;
  std::vector<Box> regions;
  struct Transition {
    PolyMatrix omega, psi;
    std::vector<PolyMatrix> rho;
  };
  std::map<std::pair<int, int>, Transition> transitions;
  std::vector<std::array<int, 3>> triples;
};

// Unit determinants, rho antisymmetry, pairwise inverses, and the three
// cocycle laws on each declared triple.
Report check_twoman_cocycles(const TwoManChart& t);

struct GeometrizeResult {
  // Chart model (x; w, v, u) with the standard chartwise metric
  // <(w,v,u),(w',v,u')> = <u,w'> + <u',w>; Lagrangian in every chart.
  DVBAtlas metric_atlas;
  // Chart model (x; q1, q2, beta) with the chartwise involution
  // (q1, q2, beta) |-> (q2, q1, -beta).
  DVBAtlas involutive_atlas;
};

// Throws std::invalid_argument naming the violated triple when the cocycle
// laws fail.
GeometrizeResult geometrize(const TwoManChart& t);

// geometrize plus the verification layer: both atlases pass check_atlas, the
// chartwise metric is transition-invariant, and the chartwise involution
// commutes with every transition (all symbolic).
Report geometrize_report(const TwoManChart& t);

// Recovers the generator/cocycle data from an involutive atlas produced by
// (or shaped like the output of) geometrize.
TwoManChart algebraize_atlas(const DVBAtlas& involutive_atlas);

// The function algebra of a single decomposed involutive double vector
// bundle (kappa = 0): degree-1 generators are the core sections, degree-2
// generators a frame of the isotropic linear sections.
GradedRing algebraize(const InvolutiveDVB& d);

// Exact data round trips through the two functors.
Report roundtrip_twoman(const TwoManChart& t);
Report roundtrip_atlas(const DVBAtlas& involutive_atlas);

// --- morphisms ---------------------------------------------------------------

// Morphism data of split graded manifolds, acting by pullback on functions:
//   xi_i |-> sum_j mu1(i, j) xi_j,  eta_k |-> sum_l mu2(k, l) eta_l + wedge
// part with coefficient matrix mu12[k], base functions by substitution.
struct TwoManMorphism {
  GradedRing source, target;
  std::vector<Poly> base_map;           // target chart coords over source chart
  PolyMatrix mu1;                       // target.r_odd x source.r_odd
  PolyMatrix mu2;                       // target.r_even x source.r_even
  std::vector<PolyMatrix> mu12;         // per target even index: antisym source wedge coeffs
};

GradedFunction apply_morphism(const TwoManMorphism& mu, const GradedFunction& f);
TwoManMorphism identity_morphism(const GradedRing& ring, const Chart& chart);
// Data of mu o nu (pullback composition nu^* o mu^*).
TwoManMorphism compose_morphisms(const TwoManMorphism& mu, const TwoManMorphism& nu);
bool morphisms_equal(const TwoManMorphism& a, const TwoManMorphism& b);

// Change of splitting by phi: Hom(wedge^2 E1, E2): identity on degree 1,
// eta_k |-> eta_k + phi-part on degree 2.
TwoManMorphism split_change_morphism(const GradedRing& ring, const Chart& chart,
                                     const std::vector<PolyMatrix>& phi);

// Morphism of decomposed involutive double vector bundles:
//   (q, q', beta) |-> (wq q, wq q', w_core beta + w12(q, q')),
// with w12(q, q')_j = <q', W12[j] q> for antisymmetric W12[j].
struct IDVBMorphism {
  InvolutiveDVB source, target;  // both with kappa = 0
  std::vector<Poly> base_map;
  PolyMatrix wq;                 // target q-rank x source q-rank
  PolyMatrix wcore;              // target core rank x source core rank
  std::vector<PolyMatrix> w12;   // per target core index
};

// Pullback of a function on the target total space.
Poly idvb_pullback(const IDVBMorphism& m, const Poly& f);

// The equivalent module-morphism pair: the action on core sections and on
// isotropic linear sections of the duals.
struct ModulePair {
  std::vector<Poly> base_map;
  ModuleMorphism on_core;                 // Gamma(Q2*) -> Gamma(Q1*)
  std::vector<LinearSection> lift_images; // image of each target B-frame lift
};

// Checks involution equivariance, then bridges; the wedge rule
// omega*(~tau1 ^ tau2) = ~(omega_q* tau1 ^ omega_q* tau2) and module
// linearity over the base pullback are verified symbolically.
ModulePair morphism_bridge(const IDVBMorphism& m);
Report morphism_bridge_report(const IDVBMorphism& m);
IDVBMorphism bridge_inverse(const InvolutiveDVB& source, const InvolutiveDVB& target,
                            const ModulePair& pair);

// Data of outer o inner; the pullback of the composite is the composite of
// the pullbacks (checked in the suites, generator by generator).
IDVBMorphism compose_idvb_morphisms(const IDVBMorphism& outer, const IDVBMorphism& inner);

// --- degree 1 ----------------------------------------------------------------

struct VBAtlas {
  Chart chart;
  int rank = 0;
  std::vector<Box> regions;
  std::map<std::pair<int, int>, PolyMatrix> cocycles;  // (to, from)
  std::vector<std::array<int, 3>> triples;
};

// Cocycle verification plus the degree-1 round trip: the bundle built from
// the cocycles has exactly the input cocycles as changes of trivialization.
Report degree1_geometrize(const VBAtlas& atlas);

}  // namespace dvbkit
