// Decomposed double vector bundles: interchange law, splitting changes,
// duals, the canonical pairing, and atlas cocycle checking.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dvbkit/dvb.hpp"
#include "support/gen.hpp"

using namespace dvbkit;

namespace {
const Chart r2{2, {"x0", "x1"}};

DecomposedDVB make_d(int ra, int rb, int rc) {
  return {r2, {r2, ra}, {r2, rb}, {r2, rc}};
}

RatVec rv(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.push_back(Ratio(x));
  return v;
}

RatVec random_rv(RatRng& rng, int len) {
  RatVec v(len);
  for (auto& x : v) x = rng.small();
  return v;
}

RatVec add(const RatVec& a, const RatVec& b) {
  RatVec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}
}  // namespace

TEST_CASE("interchange law in the decomposed addition model") {
  // (d1 +_A d2) +_B (d3 +_A d4) = (d1 +_B d3) +_A (d2 +_B d4) on random
  // quadruples with compatible projections.
  RatRng rng(3);
  for (int t = 0; t < 25; ++t) {
    RatVec a1 = random_rv(rng, 2), a2 = random_rv(rng, 2);
    RatVec b1 = random_rv(rng, 2), b2 = random_rv(rng, 2);
    RatVec c1 = random_rv(rng, 2), c2 = random_rv(rng, 2), c3 = random_rv(rng, 2),
           c4 = random_rv(rng, 2);
    // d1 = (a1,b1,c1), d2 = (a1,b2,c2), d3 = (a2,b1,c3), d4 = (a2,b2,c4).
    // +_A adds (b, c) over a shared a; +_B adds (a, c) over a shared b.
    RatVec lhs_c = add(add(c1, c2), add(c3, c4));
    RatVec rhs_c = add(add(c1, c3), add(c2, c4));
    CHECK(lhs_c == rhs_c);
    CHECK(add(add(b1, b2), add(b1, b2)) == add(add(b1, b1), add(b2, b2)));
    CHECK(add(add(a1, a1), add(a2, a2)) == add(add(a1, a2), add(a1, a2)));
  }
}

TEST_CASE("dualization rank bookkeeping and double dual") {
  DecomposedDVB d = make_d(1, 1, 1);
  DecomposedDVB da = dualize_decomposed(d, Side::A);
  CHECK(da.side_a.rank == 1);
  CHECK(da.side_b.rank == 1);
  CHECK(da.core.rank == 1);

  DecomposedDVB d2 = make_d(2, 3, 1);
  DecomposedDVB d2a = dualize_decomposed(d2, Side::A);
  CHECK(d2a.side_a.rank == 2);   // A
  CHECK(d2a.side_b.rank == 1);   // C*
  CHECK(d2a.core.rank == 3);     // B*
  // Double dual over the same side restores (A, B; C) literally.
  CHECK(dualize_decomposed(d2a, Side::A) == d2);
  DecomposedDVB d2b = dualize_decomposed(d2, Side::B);
  CHECK(d2b.side_a.rank == 1);   // C*
  CHECK(d2b.side_b.rank == 3);   // B
  CHECK(d2b.core.rank == 2);     // A*
  CHECK(dualize_decomposed(d2b, Side::B) == d2);

  // Tangent-double shape: (TE; TM, E; M) with core E dualized over E gives
  // sides (E, E*) and core T*M. Here over side B = E of (TM, E; E).
  Chart c2 = r2;
  DecomposedDVB te{c2, {c2, 2}, {c2, 3}, {c2, 3}};  // A = TM, B = E, core = E
  DecomposedDVB dual_e = dualize_decomposed(te, Side::B);
  CHECK(dual_e.side_a.rank == 3);  // E* (core dual)
  CHECK(dual_e.side_b.rank == 3);  // E
  CHECK(dual_e.core.rank == 2);    // T*M
}

TEST_CASE("canonical pairing: independence of d, bilinearity, core elements") {
  RatRng rng(9);
  for (int t = 0; t < 25; ++t) {
    RatVec base = random_rv(rng, 2);
    RatVec a = random_rv(rng, 1), b = random_rv(rng, 1), gamma = random_rv(rng, 1);
    DualAPoint phi{base, a, gamma, random_rv(rng, 1)};
    DualBPoint psi{base, gamma, b, random_rv(rng, 1)};
    DVBPoint d1{base, a, b, random_rv(rng, 1)};
    DVBPoint d2 = d1;
    d2.c = add(d2.c, random_rv(rng, 1));  // core shift
    CHECK(canonical_pair(phi, psi, d1) == canonical_pair(phi, psi, d2));

    // Bilinearity over the C*-fiber additions: Phi1 +_{C*} Phi2 adds the
    // A-projections and the core parts over a shared gamma.
    DualAPoint phi2{base, random_rv(rng, 1), gamma, random_rv(rng, 1)};
    DualAPoint phi_sum{base, add(phi.a, phi2.a), gamma, add(phi.beta, phi2.beta)};
    DVBPoint d_for_sum{base, phi_sum.a, b, random_rv(rng, 1)};
    DVBPoint d_for_1{base, phi.a, b, d_for_sum.c};
    DVBPoint d_for_2{base, phi2.a, b, d_for_sum.c};
    CHECK(canonical_pair(phi_sum, psi, d_for_sum) ==
          canonical_pair(phi, psi, d_for_1) + canonical_pair(phi2, psi, d_for_2));
    // Second slot likewise.
    DualBPoint psi2{base, gamma, random_rv(rng, 1), random_rv(rng, 1)};
    DualBPoint psi_sum{base, gamma, add(psi.b, psi2.b), add(psi.alpha, psi2.alpha)};
    DVBPoint e_sum{base, a, psi_sum.b, random_rv(rng, 1)};
    DVBPoint e_1{base, a, psi.b, e_sum.c};
    DVBPoint e_2{base, a, psi2.b, e_sum.c};
    CHECK(canonical_pair(phi, psi_sum, e_sum) ==
          canonical_pair(phi, psi, e_1) + canonical_pair(phi, psi2, e_2));
  }

  // Zero elements pair to zero.
  DualAPoint phi0{rv({0, 0}), rv({0}), rv({0}), rv({0})};
  DualBPoint psi0{rv({0, 0}), rv({0}), rv({0}), rv({0})};
  DVBPoint d0{rv({0, 0}), rv({0}), rv({0}), rv({7})};
  CHECK(canonical_pair(phi0, psi0, d0) == 0);

  // A core element Phi = bar{beta} sits at (a, gamma, beta) = (0, 0, beta),
  // so <Phi, d>_A = <beta, pi_B d> and the canonical pairing reduces to
  // beta(pi_B(Psi)) - <Psi, d>_B.
  RatVec base = rv({1, 2});
  RatVec beta = rv({3});
  DualAPoint core_phi{base, rv({0}), rv({0}), beta};
  DualBPoint psi{base, rv({0}), rv({5}), rv({-1})};
  DVBPoint d{base, rv({0}), rv({5}), rv({4})};
  Ratio expect = beta[0] * d.b[0] - pair_over_b(psi, d);
  CHECK(canonical_pair(core_phi, psi, d) == expect);
}

TEST_CASE("apply_change_of_splitting: group action and cross-side consistency") {
  DecomposedDVB d = make_d(2, 2, 1);
  RatRng rng(21);
  SplittingChange phi{gen::random_cube(rng, 2, 2, 1, 2)};
  SplittingChange neg{-phi.phi};

  LinearSection s;
  s.over = Side::B;
  s.base = {random_poly(rng, 2, 1), random_poly(rng, 2, 1)};
  s.core_part = gen::random_matrix(rng, 1, 2, 2);

  LinearSection same = apply_change_of_splitting(d, s, SplittingChange{PolyCube(2, 2, 1, 2)});
  CHECK(is_zero(same.base - s.base));
  CHECK(same.core_part == s.core_part);

  LinearSection round =
      apply_change_of_splitting(d, apply_change_of_splitting(d, s, phi), neg);
  CHECK(round.core_part == s.core_part);

  // sigma_B(b)(a(m)) = sigma_A(a)(b(m)) is preserved under the paired shifts.
  LinearSection sb;
  sb.over = Side::A;
  sb.base = {random_poly(rng, 2, 1), random_poly(rng, 2, 1)};
  sb.core_part = PolyMatrix(1, 2, 2);
  LinearSection sa;
  sa.over = Side::B;
  sa.base = {random_poly(rng, 2, 1), random_poly(rng, 2, 1)};
  sa.core_part = PolyMatrix(1, 2, 2);
  LinearSection sa2 = apply_change_of_splitting(d, sa, phi);
  LinearSection sb2 = apply_change_of_splitting(d, sb, phi);
  SamplePlan plan = make_plan(77, 25, 2);
  for (const auto& m : plan.points) {
    RatVec a_val(2), b_val(2);
    for (int i = 0; i < 2; ++i) {
      a_val[i] = sa.base[i].eval(m);
      b_val[i] = sb.base[i].eval(m);
    }
    auto [abase, acore] = section_value(d, sa2, m, b_val);
    auto [bbase, bcore] = section_value(d, sb2, m, a_val);
    CHECK(abase == a_val);
    CHECK(bbase == b_val);
    CHECK(acore == bcore);
  }
}

TEST_CASE("atlas checks: single chart, identity transitions, refinement, perturbation") {
  DVBAtlas single;
  single.chart = r2;
  single.m1 = single.m2 = single.m0 = 1;
  single.regions.push_back({{{Ratio(0), Ratio(1)}, {Ratio(0), Ratio(1)}}});
  CHECK(check_atlas(single).all_pass());

  DVBAtlas two = single;
  two.regions.push_back({{{Ratio(0), Ratio(2)}, {Ratio(0), Ratio(2)}}});
  two.transitions[{0, 1}] = identity_transition(1, 1, 1, 2);
  two.transitions[{1, 0}] = identity_transition(1, 1, 1, 2);
  CHECK(check_atlas(two).all_pass());

  // Three charts built from a common refinement: transitions are gauge
  // quotients, so all cocycle laws hold by construction.
  RatRng rng(13);
  DVBAtlas three;
  three.chart = r2;
  three.m1 = 2;
  three.m2 = 2;
  three.m0 = 2;
  for (int i = 0; i < 3; ++i)
    three.regions.push_back({{{Ratio(-3), Ratio(3)}, {Ratio(-3), Ratio(3)}}});
  std::vector<PolyMatrix> g1, g2, g0;
  std::vector<PolyCube> t;
  for (int i = 0; i < 3; ++i) {
    g1.push_back(gen::random_unit_det(rng, 2, 2));
    g2.push_back(gen::random_unit_det(rng, 2, 2));
    g0.push_back(gen::random_unit_det(rng, 2, 2));
    t.push_back(gen::random_cube(rng, 2, 2, 2, 2));
  }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      DVBTransition tr;
      tr.a1 = g1[a] * g1[b].inverse();
      tr.a2 = g2[a] * g2[b].inverse();
      tr.a0 = g0[a] * g0[b].inverse();
      // Coboundary mix: mix^{ab}(v1, v2) = s_a(A1 v1, A2 v2) - A0 s_b(v1, v2),
      // with s_c(w, v)_k = sum t_c(k, i, j) w_i v_j.
      tr.mix = PolyCube(2, 2, 2, 2);
      for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            Poly acc(2);
            for (int p = 0; p < 2; ++p)
              for (int q = 0; q < 2; ++q)
                acc += t[a].at(k, p, q) * tr.a1.at(p, i) * tr.a2.at(q, j);
            for (int l = 0; l < 2; ++l) acc -= tr.a0.at(k, l) * t[b].at(l, i, j);
            tr.mix.at(k, i, j) = acc;
          }
      three.transitions[{a, b}] = tr;
    }
  three.triples = {{0, 1, 2}};
  CHECK(check_atlas(three).all_pass());

  // Perturb one mix entry: the violated triple must be named.
  DVBAtlas broken = three;
  broken.transitions[{2, 0}].mix.at(0, 0, 0) += Poly::constant(2, Ratio(1));
  Report r = check_atlas(broken);
  CHECK_FALSE(r.all_pass());
  bool found = false;
  for (const auto& c : r.checks)
    if (!c.pass && c.name.find("cocycle(0,1,2)") != std::string::npos) found = true;
  CHECK(found);

  // A declared overlap without a transition is an input error.
  DVBAtlas missing = three;
  missing.transitions.erase({2, 1});
  CHECK_THROWS_AS(check_atlas(missing), std::invalid_argument);
}
