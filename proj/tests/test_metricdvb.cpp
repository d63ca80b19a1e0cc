// Linear metrics, Lagrangian symmetrization, isotropic sections, the
// metric <-> involutive duality, involutive splittings, and the psi
// embedding into functions on the involutive side.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dvbkit/metricdvb.hpp"
#include "support/gen.hpp"

using namespace dvbkit;

namespace {
const Chart r2{2, {"x0", "x1"}};

MetricDVB random_mdvb(RatRng& rng, const Chart& chart, int rq, int rb) {
  return make_metric_dvb(chart, rq, rb,
                         gen::random_symmetric_cube(rng, rq, rb, chart.dim, 2));
}

RatVec random_rv(RatRng& rng, int len) {
  RatVec v(len);
  for (auto& x : v) x = rng.small();
  return v;
}
}  // namespace

TEST_CASE("pairing: defining identities and symmetry") {
  RatRng rng(5);
  MetricDVB m = random_mdvb(rng, r2, 2, 2);
  CHECK(check_metric(m).all_pass());

  for (int t = 0; t < 25; ++t) {
    RatVec base = random_rv(rng, 2);
    RatVec b = random_rv(rng, 2);
    // Two core points pair to zero.
    EPoint c1{base, {Ratio(0), Ratio(0)}, b, random_rv(rng, 2)};
    EPoint c2{base, {Ratio(0), Ratio(0)}, b, random_rv(rng, 2)};
    CHECK(pairing_eval(m, c1, c2) == 0);

    // sigma_Q(q) against tau^+ gives <q, tau> at the base point.
    EPoint lin{base, random_rv(rng, 2), b, {Ratio(0), Ratio(0)}};
    EPoint core{base, {Ratio(0), Ratio(0)}, b, random_rv(rng, 2)};
    Ratio expect = lin.q[0] * core.tau[0] + lin.q[1] * core.tau[1];
    CHECK(pairing_eval(m, lin, core) == expect);

    // Symmetry on random admissible pairs.
    EPoint e1{base, random_rv(rng, 2), b, random_rv(rng, 2)};
    EPoint e2{base, random_rv(rng, 2), b, random_rv(rng, 2)};
    CHECK(pairing_eval(m, e1, e2) == pairing_eval(m, e2, e1));
  }

  // Lambda = 0: split points with zero cores pair to zero.
  MetricDVB lag = make_metric_dvb(r2, 2, 2, PolyCube(2, 2, 2, 2));
  EPoint s1{{Ratio(1), Ratio(2)}, {Ratio(3), Ratio(1)}, {Ratio(1), Ratio(1)}, {Ratio(0), Ratio(0)}};
  EPoint s2{{Ratio(1), Ratio(2)}, {Ratio(-2), Ratio(5)}, {Ratio(1), Ratio(1)}, {Ratio(0), Ratio(0)}};
  CHECK(pairing_eval(lag, s1, s2) == 0);
}

TEST_CASE("lambda_of_splitting and symmetrization") {
  RatRng rng(7);
  MetricDVB m = random_mdvb(rng, r2, 2, 2);

  SplittingChange zero{PolyCube(2, 2, 2, 2)};
  CHECK(lambda_of_splitting(m, zero) == m.lambda);

  // A Q-antisymmetric change preserves Lagrangian splittings.
  MetricDVB lag = make_metric_dvb(r2, 2, 2, PolyCube(2, 2, 2, 2));
  PolyCube anti(2, 2, 2, 2);
  for (int b = 0; b < 2; ++b) {
    Poly p = random_poly(rng, 2, 2);
    anti.at(0, b, 1) = p;
    anti.at(1, b, 0) = -p;
  }
  CHECK(lambda_of_splitting(lag, SplittingChange{anti}).is_zero());

  // A symmetric change doubles into Lambda'; cross-checked pointwise.
  PolyCube symm(2, 2, 2, 2);
  for (int b = 0; b < 2; ++b)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (i <= j) {
          Poly p = random_poly(rng, 2, 2);
          symm.at(i, b, j) = p;
          symm.at(j, b, i) = p;
        }
  PolyCube doubled = lambda_of_splitting(lag, SplittingChange{symm});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int b = 0; b < 2; ++b)
        CHECK(doubled.at(i, j, b) == symm.at(i, b, j) * Ratio(2));
  MetricDVB shifted = make_metric_dvb(r2, 2, 2, doubled);
  SamplePlan plan = make_plan(11, 25, 2);
  for (const auto& base : plan.points) {
    RatVec b = {Ratio(1), Ratio(-2)};
    RatVec q1 = {Ratio(2), Ratio(1)}, q2 = {Ratio(-1), Ratio(3)};
    // In the shifted splitting the lift of q picks up the core term symm(q)(.),
    // so the pairing of shifted lifts reproduces Lambda'.
    EPoint e1{base, q1, b, RatVec{Ratio(0), Ratio(0)}};
    EPoint e2{base, q2, b, RatVec{Ratio(0), Ratio(0)}};
    for (int i = 0; i < 2; ++i) {
      for (int bb = 0; bb < 2; ++bb) {
        e1.tau[i] += symm.at(0, bb, i).eval(base) * q1[0] * b[bb] +
                     symm.at(1, bb, i).eval(base) * q1[1] * b[bb];
        e2.tau[i] += symm.at(0, bb, i).eval(base) * q2[0] * b[bb] +
                     symm.at(1, bb, i).eval(base) * q2[1] * b[bb];
      }
    }
    Ratio viaL(0);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int bb = 0; bb < 2; ++bb)
          viaL += doubled.at(i, j, bb).eval(base) * q1[i] * q2[j] * b[bb];
    CHECK(pairing_eval(lag, e1, e2) == viaL);
  }

  // Symmetrization: Lambda = 0 gives the zero change; in general the result
  // is exactly Lagrangian.
  CHECK(symmetrize_splitting(lag).phi.is_zero());
  for (int t = 0; t < 10; ++t) {
    MetricDVB mm = random_mdvb(rng, r2, 1 + rng.index(3), 1 + rng.index(3));
    CHECK(lambda_of_splitting(mm, symmetrize_splitting(mm)).is_zero());
  }
}

TEST_CASE("isotropic sections") {
  RatRng rng(15);
  MetricDVB lag = make_metric_dvb(r2, 2, 1, PolyCube(2, 2, 1, 2));

  LinearSection zero;
  zero.over = Side::A;
  zero.base = {random_poly(rng, 2, 1)};
  zero.core_part = PolyMatrix(2, 2, 2);
  CHECK(isotropic_test(lag, zero));

  // tau (x) tau is symmetric, hence not isotropic.
  LinearSection sym = zero;
  sym.core_part.at(0, 0) = Poly::constant(2, Ratio(1));
  CHECK_FALSE(isotropic_test(lag, sym));

  // tau_1 ^ tau_2 is isotropic; its lift pairs to zero pointwise.
  LinearSection wedge = zero;
  wedge.core_part.at(0, 1) = Poly::constant(2, Ratio(1));
  wedge.core_part.at(1, 0) = Poly::constant(2, Ratio(-1));
  CHECK(isotropic_test(lag, wedge));
  SamplePlan plan = make_plan(19, 25, 2);
  RatRng prng(19);
  for (const auto& base : plan.points) {
    RatVec q1 = random_rv(prng, 2), q2 = random_rv(prng, 2);
    auto [b1, t1] = section_value(lag.host, wedge, base, q1);
    auto [b2, t2] = section_value(lag.host, wedge, base, q2);
    EPoint e1{base, q1, b1, t1};
    EPoint e2{base, q2, b2, t2};
    CHECK(pairing_eval(lag, e1, e2) == 0);
  }
}

TEST_CASE("the metric map sends lifts to dual lifts exactly when Lagrangian") {
  // In decomposed coordinates the metric-induced map reads
  // (q, b, tau) |-> (q, b, tau + Lambda(q, .)(b)); on the data of a B-lift
  // (tau = 0) the image is the dual lift exactly when Lambda vanishes.
  RatRng rng(61);
  auto beta_image = [&](const MetricDVB& m, const EPoint& e) {
    int rq = m.host.side_a.rank, rb = m.host.side_b.rank;
    RatVec alpha = e.tau;
    for (int i = 0; i < rq; ++i)
      for (int j = 0; j < rq; ++j)
        for (int b = 0; b < rb; ++b)
          alpha[j] += m.lambda.at(i, j, b).eval(e.base) * e.q[i] * e.b[b];
    return alpha;
  };
  // The defining property: <beta(e), e'> through the dual pairing equals the
  // metric of e against e'.
  MetricDVB m = random_mdvb(rng, r2, 2, 2);
  for (int t = 0; t < 10; ++t) {
    RatVec base = random_rv(rng, 2), b = random_rv(rng, 2);
    EPoint e{base, random_rv(rng, 2), b, random_rv(rng, 2)};
    EPoint f{base, random_rv(rng, 2), b, random_rv(rng, 2)};
    RatVec alpha = beta_image(m, e);
    Ratio dual_pairing(0);
    for (int i = 0; i < 2; ++i) dual_pairing += e.q[i] * f.tau[i] + alpha[i] * f.q[i];
    CHECK(dual_pairing == pairing_eval(m, e, f));
  }
  // Lift data: image core part vanishes (the dual-lift data) iff Lagrangian.
  MetricDVB lag = make_metric_dvb(r2, 2, 2, PolyCube(2, 2, 2, 2));
  RatVec base = random_rv(rng, 2), b = random_rv(rng, 2), q = random_rv(rng, 2);
  EPoint lift{base, q, b, {Ratio(0), Ratio(0)}};
  CHECK(beta_image(lag, lift) == RatVec{Ratio(0), Ratio(0)});
  bool nonzero_somewhere = false;
  for (int t = 0; t < 10 && !nonzero_somewhere; ++t) {
    EPoint probe{random_rv(rng, 2), random_rv(rng, 2), random_rv(rng, 2),
                 {Ratio(0), Ratio(0)}};
    nonzero_somewhere = beta_image(m, probe) != RatVec{Ratio(0), Ratio(0)};
  }
  CHECK(nonzero_somewhere);
}

TEST_CASE("involutive structures and the duality round trip") {
  RatRng rng(29);

  // kappa = 0 gives I(q1, q2, beta) = (q2, q1, -beta).
  InvolutiveDVB d0 = make_involutive_dvb(r2, 2, 2, PolyCube(2, 2, 2, 2));
  CHECK(check_involutive(d0).all_pass());
  DPoint p{{Ratio(1), Ratio(1)}, {Ratio(2), Ratio(0)}, {Ratio(0), Ratio(3)}, {Ratio(4), Ratio(5)}};
  DPoint ip = involution_apply(d0, p);
  CHECK(ip.q1 == p.q2);
  CHECK(ip.q2 == p.q1);
  CHECK(ip.beta == RatVec{Ratio(-4), Ratio(-5)});

  // Lambda = 0 dualizes to kappa = 0 and back.
  MetricDVB lag = make_metric_dvb(r2, 2, 2, PolyCube(2, 2, 2, 2));
  InvolutiveDVB dual = metric_to_involutive(lag);
  CHECK(dual.kappa.is_zero());
  CHECK(involutive_to_metric(dual).lambda.is_zero());

  // Round trips are exact on (Lambda, kappa) data.
  for (int t = 0; t < 10; ++t) {
    int rq = 1 + rng.index(3), rb = 1 + rng.index(3);
    MetricDVB m = random_mdvb(rng, r2, rq, rb);
    InvolutiveDVB d = metric_to_involutive(m, 1000 + t);
    CHECK(check_involutive(d).all_pass());
    MetricDVB back = involutive_to_metric(d);
    CHECK(back.lambda == m.lambda);

    InvolutiveDVB d2 = make_involutive_dvb(
        r2, rq, rb, gen::random_symmetric_cube(rng, rq, rb, 2, 2));
    MetricDVB m2 = involutive_to_metric(d2);
    InvolutiveDVB d2back = metric_to_involutive(m2, 2000 + t);
    CHECK(d2back.kappa == d2.kappa);
  }

  // Independence of the auxiliary element: two admissible d differing by a
  // core shift produce equal pairings.
  InvolutiveDVB d = make_involutive_dvb(
      r2, 2, 2, gen::random_symmetric_cube(rng, 2, 2, 2, 2));
  MetricDVB m = involutive_to_metric(d);
  for (int t = 0; t < 10; ++t) {
    RatVec base = random_rv(rng, 2), b = random_rv(rng, 2);
    EPoint e1{base, random_rv(rng, 2), b, random_rv(rng, 2)};
    EPoint e2{base, random_rv(rng, 2), b, random_rv(rng, 2)};
    auto pair_via = [&](const RatVec& beta) {
      DPoint dd{base, e1.q, e2.q, beta};
      DPoint idd = involution_apply(d, dd);
      // <e1, d>_Q + <e2, I(d)>_Q in decomposed coordinates.
      Ratio acc(0);
      for (int i = 0; i < 2; ++i) acc += dd.q2[i] * e1.tau[i];
      for (int j = 0; j < 2; ++j) acc += dd.beta[j] * b[j];
      for (int i = 0; i < 2; ++i) acc += idd.q2[i] * e2.tau[i];
      for (int j = 0; j < 2; ++j) acc += idd.beta[j] * b[j];
      return acc;
    };
    Ratio v1 = pair_via(random_rv(rng, 2));
    Ratio v2 = pair_via(random_rv(rng, 2));
    CHECK(v1 == v2);
    CHECK(v1 == pairing_eval(m, e1, e2));
  }
}

TEST_CASE("involutive splittings") {
  RatRng rng(41);
  // kappa = 0 and the ambient splitting: zero change.
  InvolutiveDVB d0 = make_involutive_dvb(r2, 2, 2, PolyCube(2, 2, 2, 2));
  CHECK(involutive_splitting(d0, PolyCube(2, 2, 2, 2)).is_zero());

  // Nonzero symmetric kappa: the averaged splitting kills kappa.
  for (int t = 0; t < 8; ++t) {
    int rq = 1 + rng.index(3), rb = 1 + rng.index(2);
    InvolutiveDVB d = make_involutive_dvb(
        r2, rq, rb, gen::random_symmetric_cube(rng, rq, rb, 2, 2));
    PolyCube zeta = gen::random_cube(rng, rq, rq, rb, 2, 1);
    PolyCube delta = involutive_splitting(d, zeta);
    PolyCube total = zeta + delta;
    CHECK(kappa_after_change(d, total).is_zero());
  }

  // Antisymmetric perturbations of an involutive splitting are fixed by the
  // averaging.
  for (int t = 0; t < 5; ++t) {
    InvolutiveDVB d = make_involutive_dvb(r2, 2, 2, PolyCube(2, 2, 2, 2));
    PolyCube zeta(2, 2, 2, 2);
    for (int b = 0; b < 2; ++b) {
      Poly p = random_poly(rng, 2, 1);
      zeta.at(0, 1, b) = p;
      zeta.at(1, 0, b) = -p;
    }
    CHECK(involutive_splitting(d, zeta).is_zero());
  }
}

TEST_CASE("psi embedding and the involution pullback on generators") {
  RatRng rng(53);
  InvolutiveDVB d = make_involutive_dvb(r2, 2, 2, PolyCube(2, 2, 2, 2));
  DRing ring = d_ring(d);

  // tau with q1 = q2: psi(tau^+) vanishes on the diagonal.
  PolyVec tau = {random_poly(rng, 2, 2), random_poly(rng, 2, 2)};
  Poly f = psi_embed_core(d, tau);
  std::vector<Poly> diag(ring.vars(), Poly(ring.vars()));
  for (int u = 0; u < ring.n; ++u) diag[ring.x(u)] = Poly::var(ring.vars(), ring.x(u));
  for (int i = 0; i < ring.rq; ++i) {
    Poly q = Poly::var(ring.vars(), ring.q1(i));
    diag[ring.q1(i)] = q;
    diag[ring.q2(i)] = q;
  }
  for (int j = 0; j < ring.rb; ++j) diag[ring.be(j)] = Poly::var(ring.vars(), ring.be(j));
  CHECK(f.subst(diag).is_zero());

  // psi(tau1 ^ tau2) = 1/2 (pi1 ell_tau1 pi2 ell_tau2 - pi1 ell_tau2 pi2 ell_tau1),
  // with the averaged wedge as the section's 2-form.
  PolyVec tau1 = {random_poly(rng, 2, 1), random_poly(rng, 2, 1)};
  PolyVec tau2 = {random_poly(rng, 2, 1), random_poly(rng, 2, 1)};
  IsotropicLinearSection wedge;
  wedge.base_b = zero_vec(2, 2);
  wedge.omega = PolyMatrix(2, 2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      wedge.omega.at(a, b) = (tau2[a] * tau1[b] - tau1[a] * tau2[b]) * Ratio(1, 2);
  Poly lhs = psi_embed_isotropic(d, wedge);
  Poly rhs = (pi1_ell(d, tau1) * pi2_ell(d, tau2) -
              pi1_ell(d, tau2) * pi2_ell(d, tau1)) * Ratio(1, 2);
  CHECK(lhs == rhs);
  // Same function through the psi(tau^+) products.
  Poly rhs2 = ((pi1_ell(d, tau1) + pi2_ell(d, tau1)) * psi_embed_core(d, tau2) -
               (pi1_ell(d, tau2) + pi2_ell(d, tau2)) * psi_embed_core(d, tau1)) *
              Ratio(1, 2);
  CHECK(lhs == rhs2);

  // I^* psi = -psi on both kinds of generators, for random instances.
  for (int t = 0; t < 25; ++t) {
    PolyVec tt = {random_poly(rng, 2, 2), random_poly(rng, 2, 2)};
    Poly g = psi_embed_core(d, tt);
    CHECK(involution_pullback(d, g) == -g);
    IsotropicLinearSection s;
    s.base_b = {random_poly(rng, 2, 1), random_poly(rng, 2, 1)};
    s.omega = gen::random_antisym(rng, 2, 2, 1);
    Poly h = psi_embed_isotropic(d, s);
    CHECK(involution_pullback(d, h) == -h);
  }

  // Lemma on generators: I^* exchanges pi2 ell_tau and pi1 ell_tau and fixes
  // base functions; ell_chi is anti-fixed exactly for isotropic chi.
  PolyVec tau3 = {random_poly(rng, 2, 2), random_poly(rng, 2, 2)};
  CHECK(involution_pullback(d, pi2_ell(d, tau3)) == pi1_ell(d, tau3));
  CHECK(involution_pullback(d, pi1_ell(d, tau3)) == pi2_ell(d, tau3));
  Poly base = base_fn(d, random_poly(rng, 2, 2));
  CHECK(involution_pullback(d, base) == base);

  LinearSection chi;
  chi.over = Side::A;
  chi.base = {random_poly(rng, 2, 1), random_poly(rng, 2, 1)};
  chi.core_part = gen::random_antisym(rng, 2, 2, 1);
  Poly ell = ell_of_section(d, chi);
  CHECK(involution_pullback(d, ell) == -ell);
  chi.core_part.at(0, 0) = Poly::constant(2, Ratio(1));  // break isotropy
  Poly bad = ell_of_section(d, chi);
  CHECK_FALSE(involution_pullback(d, bad) == -bad);

  // The span check: sigma_B(b_i), wedges, and cores together have full rank
  // in the fiber of E -> Q at a generic point.
  int rq = 2, rb = 2;
  RatMatrix span(rb + 1 + rq, rb + rq);
  // Rows: sigma_B(b_0), sigma_B(b_1) -> (e_i, 0); wedge01 at q = (2, 3);
  // cores tau_k -> (0, e_k).
  span.at(0, 0) = 1;
  span.at(1, 1) = 1;
  RatVec q = {Ratio(2), Ratio(3)};
  // wedge01 = tau0 ^ tau1 (averaged): omega(q) = 1/2 (q_1, -q_0) pattern.
  span.at(2, rb + 0) = Ratio(-1, 2) * q[1];
  span.at(2, rb + 1) = Ratio(1, 2) * q[0];
  span.at(3, rb + 0) = 1;
  span.at(4, rb + 1) = 1;
  CHECK(span.rank() == rb + rq);
}
