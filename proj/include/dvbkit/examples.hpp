// Worked example classes as executable instances: the Pontryagin model
// TE (+) T*E with Dorfman connections and dull brackets, the basic
// 2-representation over a Lie algebroid, and the cotangent double of a
// metric bundle with its involution and dual Poisson structure.
#pragma once

#include "dvbkit/poisson2.hpp"

namespace dvbkit {

// Frames of the anchored pair over a chart: the side bundle TM (+) E* has the
// frame [coordinate fields | dual frame of E]; its dual E (+) T*M has the
// frame [frame of E | coordinate covectors].
struct PontryaginModel {
  Chart chart;
  int e_rank = 0;
  int q_rank() const { return chart.dim + e_rank; }
  int t_rank() const { return e_rank + chart.dim; }

  friend bool operator==(const PontryaginModel&, const PontryaginModel&) = default;
};

// <q-frame_i, t-frame_j>: the natural pairing, a constant permutation.
Ratio pontryagin_frame_pairing(const PontryaginModel& m, int i, int j);
Poly pontryagin_pairing(const PontryaginModel& m, const PolyVec& q, const PolyVec& t);
// TM-part of a q-section.
PolyVec q_projection(const PontryaginModel& m, const PolyVec& q);
// (0, df) as a t-section.
PolyVec exact_t_section(const PontryaginModel& m, const Poly& f);

class DorfmanConnection {
 public:
  // free: entry [i][j] = value on (q-frame_i, e-frame_j); the covector
  // columns are forced by the exactness axiom.
  static DorfmanConnection from_free_part(const PontryaginModel& m,
                                          std::vector<std::vector<PolyVec>> free);

  const PontryaginModel& model() const { return model_; }
  const PolyVec& frame_value(int i, int j) const { return table_[i][j]; }

  // Delta_q tau for arbitrary polynomial sections.
  PolyVec apply(const PolyVec& q, const PolyVec& t) const;

  // The three defining axioms, as symbolic identities on seeded random
  // sections and functions.
  Report verify_axioms(std::uint64_t seed = 42) const;

 private:
  PontryaginModel model_;
  std::vector<std::vector<PolyVec>> table_;  // [q-frame][t-frame]
};

struct DullBracket {
  PontryaginModel model;
  std::vector<std::vector<PolyVec>> table;  // [q-frame][q-frame] -> q-section

  PolyVec apply(const PolyVec& q1, const PolyVec& q2) const;
};

// Anchor condition and frame shapes.
Report check_dull(const DullBracket& b);
bool dull_is_skew(const DullBracket& b);

// Duality in the sense of derivations, both ways; round trips are exact.
DullBracket dorfman_dull_duality(const DorfmanConnection& d);
DorfmanConnection dull_to_dorfman(const DullBracket& b);

// The three pairing identities of the Pontryagin model, verified symbolically
// against the lift defined by the Dorfman connection.
Report pontryagin_pairing_check(const DorfmanConnection& d);

// Lambda tensor of the Dorfman splitting: the dual-frame part of
// [[q_i, q_j]] + [[q_j, q_i]]; zero exactly when the dull bracket is skew.
PolyCube pontryagin_lambda(const DorfmanConnection& d);

// The basic 2-representation ((rho, rho*), nabla^bas, nabla^bas, R^bas) of
// the algebroid defined by a Dorfman connection on its Pontryagin model.
TwoRep basic_tworep(const LieAlgebroidModel& l, const DorfmanConnection& d);

// Identification E0 = E1* (the block swap of the natural pairing) under
// which the basic representation is self-dual iff the dull bracket is skew.
PolyMatrix basic_selfdual_identification(const LieAlgebroidModel& l);

// Tangent double of a metric bundle: the involution formula of the dual in
// cotangent coordinates, the degree-2 bracket table on metric derivations,
// the anti-Poisson property of the dual structure, and the symplectic flag.
Report cotangent_involution_check(const FiberMetric& g, const Connection& metric_conn,
                                  std::uint64_t seed = 42);

}  // namespace dvbkit
