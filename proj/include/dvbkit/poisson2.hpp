// Degree -2 graded Poisson brackets on split degree-2 manifolds, defined by
// self-dual 2-representations; the graded axiom checks, the symplectic
// criterion, the dual linear Poisson structure on the involutive side, and
// the Poisson functor round trips.
#pragma once

#include "dvbkit/functors.hpp"
#include "dvbkit/tworep.hpp"

namespace dvbkit {

// Defining data: a 2-representation on (Q* -> Q) over the algebroid B.
// ring: base = chart, odd generators = Q*-frame, even generators = B-frame.
struct PoissonStructure2 {
  TwoRep rep;
  GradedRing ring;
  int degree_cap = 4;
};

// enforce: require validity and self-duality at construction (turn off for
// mutation testing only).
PoissonStructure2 make_poisson2(TwoRep rep, bool enforce = true, int degree_cap = 4);

// The bracket, extended from the generator table by graded skew-symmetry and
// the graded Leibniz rule. Throws when an argument exceeds the degree cap.
GradedFunction poisson_bracket(const PoissonStructure2& p, const GradedFunction& f,
                               const GradedFunction& g);

// Graded skew-symmetry on generator pairs, the Leibniz/Hom-connection
// cross-check on degree-2 products, and graded Jacobi on all generator
// triples of degree <= 2 (coordinate functions included).
Report check_graded_axioms(const PoissonStructure2& p);

// Degree law and graded skew on random pairs up to the given degree.
Report check_bracket_properties(const PoissonStructure2& p, RatRng& rng, int trials);

// The generator bracket table.
struct GeneratorTable {
  GradedRing ring;
  std::vector<std::vector<Poly>> xi_xi;             // [i][j]
  std::vector<std::vector<GradedFunction>> eta_xi;  // [j][i]
  std::vector<std::vector<GradedFunction>> eta_eta; // [i][j]
  PolyMatrix eta_x;                                 // [j][u]
};

GeneratorTable bracket_table(const PoissonStructure2& p);
bool tables_equal(const GeneratorTable& a, const GeneratorTable& b);

// Reads (partial, anchor, connection, structure functions, curvature) off a
// generator table; the second connection is the dual of the first. Throws
// when the table does not close on the generators.
TwoRep rep_from_bracket(const Chart& chart, const GeneratorTable& table);

// True iff the anchor and the complex map are square with constant nonzero
// determinant (non-square inputs yield false, not an error).
bool is_symplectic(const PoissonStructure2& p);

// (Id via the metric, nabla, nabla, R_nabla) over the tangent algebroid;
// rejects non-metric connections.
PoissonStructure2 symplectic_from_metric_bundle(const FiberMetric& g,
                                                const Connection& metric_conn);

// --- the dual linear Poisson structure ---------------------------------------

// Generator functions on the involutive side: ell of isotropic lifts, ell of
// core sections, pullbacks of fiber-linear and base functions.
struct DGen {
  enum Kind { kChi, kCoreEll, kPi1Ell, kBase } kind = kBase;
  PolyVec b;      // kChi: base section of B
  PolyMatrix w;   // kChi: antisymmetric section map
  PolyVec tau;    // kCoreEll / kPi1Ell
  Poly f;         // kBase
};

class LinearPoissonOnD {
 public:
  // host: kappa = 0; rep: the defining data in the Lagrangian splitting.
  LinearPoissonOnD(InvolutiveDVB host, TwoRep rep);

  const InvolutiveDVB& host() const { return host_; }
  const TwoRep& rep() const { return rep_; }

  Poly function_of(const DGen& g) const;
  // I^* g as a (generator, sign) pair; the generator family is closed.
  std::pair<DGen, Ratio> involution_image(const DGen& g) const;
  // The bracket of two generators per the table, as a function on D.
  Poly bracket(const DGen& g1, const DGen& g2) const;

  // Representative generator instances (frame lifts, wedges, frame cores,
  // frame pullbacks, coordinates), used by the verification suites.
  std::vector<std::pair<std::string, DGen>> generator_instances() const;

 private:
  InvolutiveDVB host_;
  TwoRep rep_;
  VBAlgebroidRealization real_;
};

LinearPoissonOnD dual_linear_poisson(const InvolutiveDVB& host, const TwoRep& rep);

// I^* {F, F'} = -{I^* F, I^* F'} on all generator pairs, case by case.
Report anti_poisson_report(const LinearPoissonOnD& l);

// Exact table round trips through the two Poisson functors, both ways.
Report poisson_roundtrip(const PoissonStructure2& p);
Report poisson_roundtrip(const LinearPoissonOnD& l);

}  // namespace dvbkit
