// Decomposed double vector bundles: linear and core sections, splitting
// changes, the two duals, the canonical pairing of the duals, and chart
// atlases with cocycle verification.
#pragma once

#include "dvbkit/bundles.hpp"

#include <array>
#include <map>
#include <utility>

namespace dvbkit {

// D = A x_M B x_M C in decomposed form; points carry coordinates
// (base; a; b; c).
struct DecomposedDVB {
  Chart chart;
  VBundle side_a, side_b, core;

  friend bool operator==(const DecomposedDVB&, const DecomposedDVB&) = default;
};

enum class Side { A, B };

// A linear section over one side. Over B it covers base() in Gamma(A) and
// carries a core-linear part in Gamma(B* (x) C); over A symmetrically.
// core_part maps opposite-side fiber coordinates to core coordinates
// (rows = core rank, cols = rank of the side the section lives over).
struct LinearSection {
  Side over = Side::B;
  PolyVec base;
  PolyMatrix core_part;
};

// Two splittings differ by a section phi of A* (x) B* (x) C; indices
// (a, b, core).
struct SplittingChange {
  PolyCube phi;
};

// Rewrites s, given relative to splitting 1, relative to splitting 2 where
// sigma^1(a) - sigma^2(a) is the core-linear section of phi(a).
LinearSection apply_change_of_splitting(const DecomposedDVB& d,
                                        const LinearSection& s,
                                        const SplittingChange& change);

// Value of the section at a point of the side it is defined over
// (fiber coordinates of the opposite side and the core).
std::pair<RatVec, RatVec> section_value(const DecomposedDVB& d,
                                        const LinearSection& s,
                                        const RatVec& base_point,
                                        const RatVec& fiber_point);

// Duals: over A the result has sides (A, C*) and core B*; over B it has
// sides (C*, B) and core A*. Side and core identifications are literal on
// coordinate data (Q** = Q).
DecomposedDVB dualize_decomposed(const DecomposedDVB& d, Side over);

// Point-level elements in decomposed coordinates.
struct DVBPoint {
  RatVec base, a, b, c;
};
struct DualAPoint {  // element of D*_A: sides (A, C*), core B*
  RatVec base, a, gamma, beta;
};
struct DualBPoint {  // element of D*_B: sides (C*, B), core A*
  RatVec base, gamma, b, alpha;
};

// <Phi, d>_A = <gamma, c> + <beta, b>.
Ratio pair_over_a(const DualAPoint& phi, const DVBPoint& d);
// <Psi, d>_B = <gamma, c> + <alpha, a>.
Ratio pair_over_b(const DualBPoint& psi, const DVBPoint& d);

// <Phi, d>_A - <Psi, d>_B. Requires matching projections: Phi, Psi share the
// base point and the C*-projection, and d projects to pi_A(Phi), pi_B(Psi).
// The result does not depend on the core part of d (a tested property).
Ratio canonical_pair(const DualAPoint& phi, const DualBPoint& psi, const DVBPoint& d);

// --- atlases ---------------------------------------------------------------

struct Box {
  std::vector<std::pair<Ratio, Ratio>> bounds;  // open rational intervals
};

// Chart change from chart `from` to chart `to`:
//   (x, v1, v2, v0) |-> (x, A1 v1, A2 v2, A0 v0 + mix(v1, v2)),
// mix indexed (core, v1, v2).
struct DVBTransition {
  PolyMatrix a1, a2, a0;
  PolyCube mix;
};

DVBTransition identity_transition(int m1, int m2, int m0, int n_vars);
DVBTransition compose_transitions(const DVBTransition& ab, const DVBTransition& bc);
bool transitions_equal(const DVBTransition& s, const DVBTransition& t);

struct DVBAtlas {
  Chart chart;
  int m1 = 0, m2 = 0, m0 = 0;  // model ranks
  std::vector<Box> regions;
  // Declared ordered overlaps: key (to, from).
  std::map<std::pair<int, int>, DVBTransition> transitions;
  // Declared triple overlaps (alpha, beta, gamma).
  std::vector<std::array<int, 3>> triples;
};

// Verifies unit determinants, pair inverses, and the cocycle law
// T^{ac} = T^{ab} o T^{bc} on every declared triple. Throws
// std::invalid_argument when a needed transition is missing.
Report check_atlas(const DVBAtlas& atlas);

}  // namespace dvbkit
