// Vector bundles over a polynomial chart as free modules with implicit
// frames: connections via Christoffel data, curvature, fiber metrics,
// Lie algebroid models, and the bundle-map <-> module-map correspondence.
#pragma once

#include "dvbkit/linalg.hpp"
#include "dvbkit/report.hpp"
#include "dvbkit/sample.hpp"

#include <string>
#include <vector>

namespace dvbkit {

struct Chart {
  int dim = 0;
  std::vector<std::string> coords;  // optional names, x0.. when empty

  friend bool operator==(const Chart&, const Chart&) = default;
};

struct VBundle {
  Chart chart;
  int rank = 0;

  friend bool operator==(const VBundle&, const VBundle&) = default;
};

// Sections are length-rank PolyVecs in the implicit frame; vector fields on
// the chart are length-dim PolyVecs.

// [X, Y] of polynomial vector fields on the chart.
PolyVec vf_bracket(const PolyVec& x, const PolyVec& y);

// Derivative of f along the vector field X.
Poly vf_apply(const PolyVec& x, const Poly& f);

// Linear connection along an anchored frame. Acting index i ranges over the
// frame of the acting bundle (the coordinate frame of TM when anchor is the
// identity): nabla_{a_i} e_j = sum_k gamma[i](k, j) e_k, and a_i acts on
// functions through row i of the anchor.
struct Connection {
  PolyMatrix anchor;               // n_acting x chart.dim
  VBundle bundle;                  // target E
  std::vector<PolyMatrix> gamma;   // per acting index: rank x rank (out, in)
};

// TM-connection: acting frame = coordinate frame.
Connection tm_connection(const VBundle& e, std::vector<PolyMatrix> gamma);

PolyVec anchor_row(const PolyMatrix& anchor, int i);

// nabla_{a_i} s.
PolyVec connection_apply(const Connection& c, int i, const PolyVec& s);
// nabla_X s for X a chart vector field (TM-connections only).
PolyVec connection_apply_vf(const Connection& c, const PolyVec& x, const PolyVec& s);

// Dual connection on E*: <nabla* eps, e> + <eps, nabla e> = d<eps, e>.
Connection dual_connection(const Connection& c);

struct LieAlgebroidModel {
  VBundle bundle;       // A
  PolyMatrix anchor;    // rank x chart.dim, row i = rho(a_i)
  // c[i][j] = coefficients of [a_i, a_j] over the frame; antisymmetric in
  // (i, j). Jacobi and anchor compatibility are checked, not assumed.
  std::vector<std::vector<PolyVec>> structure;
};

LieAlgebroidModel tangent_algebroid(const Chart& chart);
LieAlgebroidModel abelian_algebroid(const Chart& chart, int rank);

// [s, t] of algebroid sections, extended by the Leibniz rule.
PolyVec algebroid_bracket(const LieAlgebroidModel& l, const PolyVec& s, const PolyVec& t);
// rho(s) as a chart vector field.
PolyVec algebroid_anchor(const LieAlgebroidModel& l, const PolyVec& s);

// Jacobi on all frame triples plus anchor-bracket compatibility on pairs.
Report check_lie_algebroid(const LieAlgebroidModel& l);

// Curvature R(a_i, a_j) of a connection along an algebroid, as rank x rank
// matrices indexed by i < j (antisymmetric extension implied):
//   R = rho_i(G_j) - rho_j(G_i) + G_i G_j - G_j G_i - sum_m c^m_{ij} G_m.
// For TM-connections the structure term is absent.
PolyMatrix connection_curvature(const Connection& c, int i, int j);
PolyMatrix algebroid_curvature(const Connection& c, const LieAlgebroidModel& l, int i, int j);

// Connection induced on Hom(E1, E0) by conn0 and conn1, applied to psi:
//   (nabla_i psi) = rho_i(psi) + G0_i psi - psi G1_i.
PolyMatrix hom_connection_apply(const Connection& c0, const Connection& c1,
                                int i, const PolyMatrix& psi);

struct FiberMetric {
  VBundle bundle;
  PolyMatrix g;  // symmetric, det a nonzero constant
};

// Checks the stored invariants (symmetry, unit determinant).
Report check_fiber_metric(const FiberMetric& m);

// d_i g(e_j,e_k) = g(nabla_i e_j, e_k) + g(e_j, nabla_i e_k) for all frames.
bool metric_compatibility(const Connection& c, const FiberMetric& m);

// --- bundle morphisms and the star correspondence --------------------------

// omega: E -> F over a polynomial base map.
struct BundleMorphism {
  VBundle source, target;
  std::vector<Poly> base_map;  // target.chart.dim entries over source chart
  PolyMatrix matrix;           // target.rank x source.rank over source chart
};

// Module morphism Gamma(F*) -> Gamma(E*) over the pullback of the base map;
// beta |-> matrix * (beta o base_map).
struct ModuleMorphism {
  VBundle source, target;
  std::vector<Poly> base_map;
  PolyMatrix matrix;  // source.rank x target.rank over source chart
};

ModuleMorphism star_correspondence(const BundleMorphism& w);
BundleMorphism unstar_correspondence(const ModuleMorphism& m);

// m applied to a section of the target dual.
PolyVec module_apply(const ModuleMorphism& m, const PolyVec& beta);
// Pullback of a function on the target chart.
Poly base_pullback(const std::vector<Poly>& base_map, const Poly& f);

}  // namespace dvbkit
