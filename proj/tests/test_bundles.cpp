// Connections, curvature, Lie algebroid checks, fiber metrics, and the
// bundle-map <-> module-map correspondence.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dvbkit/tworep.hpp"
#include "support/gen.hpp"

using namespace dvbkit;

namespace {
const Chart r2{2, {"x0", "x1"}};
const Chart r1{1, {"x"}};
}

TEST_CASE("flat connection has zero curvature") {
  VBundle e{r2, 2};
  Connection flat = tm_connection(e, {PolyMatrix(2, 2, 2), PolyMatrix(2, 2, 2)});
  CHECK(connection_curvature(flat, 0, 1).is_zero());
}

TEST_CASE("rank-1 curvature over R^2 equals the mixed-derivative expansion") {
  // Gamma_0 = (x1), Gamma_1 = (0): R(d0, d1) = d0 Gamma_1 - d1 Gamma_0 = -1.
  VBundle e{r2, 1};
  PolyMatrix g0(1, 1, 2), g1(1, 1, 2);
  g0.at(0, 0) = Poly::var(2, 1);
  Connection c = tm_connection(e, {g0, g1});
  PolyMatrix r = connection_curvature(c, 0, 1);
  CHECK(r.at(0, 0) == Poly::constant(2, Ratio(-1)));

  // Direct expansion of the commutator on a generic section (f).
  Poly f = Poly::var(2, 0) * Poly::var(2, 1) + Poly::var(2, 0).pow(2);
  PolyVec s = {f};
  PolyVec lhs = connection_apply(c, 0, connection_apply(c, 1, s)) -
                connection_apply(c, 1, connection_apply(c, 0, s));
  CHECK(lhs[0] == r.at(0, 0) * f);
}

TEST_CASE("curvature is antisymmetric on random instances") {
  RatRng rng(5);
  for (int t = 0; t < 5; ++t) {
    Connection c = gen::random_tm_connection(rng, {r2, 2});
    CHECK((connection_curvature(c, 0, 1) + connection_curvature(c, 1, 0)).is_zero());
  }
}

TEST_CASE("lie algebroid checks: abelian, tangent, so(3), perturbation") {
  CHECK(check_lie_algebroid(abelian_algebroid(r2, 2)).all_pass());
  CHECK(check_lie_algebroid(tangent_algebroid(r2)).all_pass());

  Chart pt{0, {}};
  LieAlgebroidModel so3 = abelian_algebroid(pt, 3);
  auto set = [&](int i, int j, int k, long s) {
    so3.structure[i][j][k] = Poly::constant(0, Ratio(s));
    so3.structure[j][i][k] = Poly::constant(0, Ratio(-s));
  };
  set(0, 1, 2, 1);
  set(1, 2, 0, 1);
  set(2, 0, 1, 1);
  CHECK(check_lie_algebroid(so3).all_pass());

  // Perturbing one structure constant must produce a named Jacobi residual.
  // (Perturbing c^2_{01} alone would rescale within the same bracket and
  // stay a Lie algebra; c^0_{01} genuinely breaks Jacobi.)
  LieAlgebroidModel bad = so3;
  bad.structure[0][1][0] += Poly::constant(0, Ratio(1));
  bad.structure[1][0][0] -= Poly::constant(0, Ratio(1));
  Report r = check_lie_algebroid(bad);
  CHECK_FALSE(r.all_pass());
  REQUIRE(r.first_failure() != nullptr);
  CHECK(r.first_failure()->name.find("jacobi") != std::string::npos);
}

TEST_CASE("random gauged algebroids pass, and residuals survive relabeling") {
  RatRng rng(17);
  for (int t = 0; t < 6; ++t) {
    LieAlgebroidModel l = gen::random_algebroid(rng, r2, 1 + rng.index(3));
    CHECK(check_lie_algebroid(l).all_pass());
  }
  // Relabeling the chart coordinates (x0 <-> x1) preserves residual cleanliness.
  LieAlgebroidModel l = gen::random_algebroid(rng, r2, 3);
  LieAlgebroidModel swapped = l;
  std::vector<Poly> images = {Poly::var(2, 1), Poly::var(2, 0)};
  swapped.anchor = PolyMatrix(3, 2, 2);
  for (int i = 0; i < 3; ++i) {
    swapped.anchor.at(i, 0) = l.anchor.at(i, 1).subst(images);
    swapped.anchor.at(i, 1) = l.anchor.at(i, 0).subst(images);
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        swapped.structure[i][j][k] = l.structure[i][j][k].subst(images);
  CHECK(check_lie_algebroid(swapped).all_pass());
}

TEST_CASE("metric compatibility") {
  VBundle e{r2, 2};
  FiberMetric id{{r2, 2}, PolyMatrix::identity(2, 2)};

  PolyMatrix a0(2, 2, 2), a1(2, 2, 2);
  a0.at(0, 1) = Poly::var(2, 0);
  a0.at(1, 0) = -Poly::var(2, 0);
  Connection antisym = tm_connection(e, {a0, a1});
  CHECK(metric_compatibility(antisym, id));

  PolyMatrix s0 = a0;
  s0.at(0, 0) = Poly::var(2, 1);  // symmetric part
  Connection bad = tm_connection(e, {s0, a1});
  CHECK_FALSE(metric_compatibility(bad, id));

  RatRng rng(23);
  for (int t = 0; t < 5; ++t) {
    FiberMetric g = gen::random_metric(rng, r2, 2);
    CHECK(check_fiber_metric(g).all_pass());
    CHECK(metric_compatibility(gen::random_metric_connection(rng, g), g));
  }
}

TEST_CASE("dual connection pairing identity and dual curvature") {
  RatRng rng(31);
  Connection c = gen::random_tm_connection(rng, {r2, 3});
  Connection d = dual_connection(c);
  // <nabla* eps, e> + <eps, nabla e> = d<eps, e> for generic sections.
  PolyVec e(3), eps(3);
  for (int i = 0; i < 3; ++i) {
    e[i] = random_poly(rng, 2, 2);
    eps[i] = random_poly(rng, 2, 2);
  }
  for (int u = 0; u < 2; ++u) {
    Poly lhs = dot(connection_apply(d, u, eps), e) + dot(eps, connection_apply(c, u, e));
    CHECK(lhs == dot(eps, e).diff(u));
  }
  for (int u = 0; u < 2; ++u)
    for (int v = u + 1; v < 2; ++v)
      CHECK(connection_curvature(d, u, v) ==
            -connection_curvature(c, u, v).transpose());
}

TEST_CASE("star correspondence") {
  // Identity morphism.
  VBundle e{r1, 2};
  BundleMorphism idm{e, e, {Poly::var(1, 0)}, PolyMatrix::identity(2, 1)};
  CHECK(star_correspondence(idm).matrix == PolyMatrix::identity(2, 1));

  // Constant matrix over a point: star is the transpose.
  Chart pt{0, {}};
  VBundle ep{pt, 2};
  PolyMatrix m(2, 2, 0);
  m.at(0, 0) = Poly::constant(0, Ratio(1));
  m.at(0, 1) = Poly::constant(0, Ratio(2));
  m.at(1, 1) = Poly::constant(0, Ratio(3));
  BundleMorphism cm{ep, ep, {}, m};
  CHECK(star_correspondence(cm).matrix == m.transpose());
  CHECK(unstar_correspondence(star_correspondence(cm)).matrix == m);

  // Random morphism over x |-> x^2: module property and the pairing check
  // ell_{w* beta} = w^* ell_beta at sample points.
  RatRng rng(7);
  VBundle src{r1, 2}, dst{r1, 2};
  PolyMatrix w(2, 2, 1);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) w.at(i, j) = random_poly(rng, 1, 2);
  Poly base = Poly::var(1, 0) * Poly::var(1, 0);
  BundleMorphism wm{src, dst, {base}, w};
  ModuleMorphism ws = star_correspondence(wm);
  CHECK(unstar_correspondence(ws).matrix == w);

  PolyVec beta = {random_poly(rng, 1, 2), random_poly(rng, 1, 2)};
  Poly f = random_poly(rng, 1, 2);
  PolyVec lhs = module_apply(ws, f * beta);
  PolyVec rhs = base_pullback(ws.base_map, f) * module_apply(ws, beta);
  CHECK(is_zero(lhs - rhs));

  SamplePlan plan = make_plan(2024, 25, 1);
  for (const auto& pt_m : plan.points) {
    // <w*(beta)(m), a> = <beta(w0(m)), w(a)> for random fiber vectors a.
    RatVec a = {Ratio(3, 2), Ratio(-1, 3)};
    PolyVec wsb = module_apply(ws, beta);
    Ratio lhs_v = wsb[0].eval(pt_m) * a[0] + wsb[1].eval(pt_m) * a[1];
    RatVec image{Ratio(0), Ratio(0)};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) image[i] += w.at(i, j).eval(pt_m) * a[j];
    RatVec base_pt = {base.eval(pt_m)};
    Ratio rhs_v = beta[0].eval(base_pt) * image[0] + beta[1].eval(base_pt) * image[1];
    CHECK(lhs_v == rhs_v);
  }
}
