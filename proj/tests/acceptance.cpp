// Acceptance suite: one line per criterion, exact (zero-tolerance) symbolic
// assertions throughout, seeded instance generation, pinned runtime bounds.
#include "dvbkit/verify.hpp"
#include "support/gen.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace dvbkit;

namespace {

const Chart kR1{1, {"x"}};
const Chart kR2{2, {"x0", "x1"}};

struct Criterion {
  int number;
  std::string name;
  double time_limit_s;
  std::function<bool(std::ostream&)> run;
};

Chart chart_for(RatRng& rng) { return rng.index(2) == 0 ? kR1 : kR2; }

// --- 1: duality round trip ----------------------------------------------------

bool criterion_duality(std::ostream& why) {
  RatRng rng(101);
  int ok = 0;
  for (int t = 0; t < 50; ++t) {
    Chart chart = chart_for(rng);
    int rq = 1 + rng.index(3), rb = 1 + rng.index(3);
    if (t % 2 == 0) {
      MetricDVB m = make_metric_dvb(
          chart, rq, rb, gen::random_symmetric_cube(rng, rq, rb, chart.dim, 2));
      InvolutiveDVB d = metric_to_involutive(m, 7000 + t);
      if (involutive_to_metric(d).lambda == m.lambda) ++ok;
    } else {
      InvolutiveDVB d = make_involutive_dvb(
          chart, rq, rb, gen::random_symmetric_cube(rng, rq, rb, chart.dim, 2));
      MetricDVB m = involutive_to_metric(d);
      if (metric_to_involutive(m, 7000 + t).kappa == d.kappa) ++ok;
    }
  }
  why << ok << "/50 exact";
  return ok == 50;
}

// --- 2: splitting theorem ------------------------------------------------------

TwoRep invertible_complex_rep(RatRng& rng) {
  // Tangent or adjoint-over-gauged-tangent instances: the complex map is
  // invertible, so each mutation below provably leaves a residual.
  if (rng.index(2) == 0) {
    int rank = 1 + rng.index(3);
    TwoRep rep = tangent_rep(gen::random_tm_connection(rng, {kR2, rank}));
    if (rng.index(2) == 0) rep = twist(rep, gen::random_twist(rng, rep));
    return rep;
  }
  LieAlgebroidModel l = gen::random_algebroid(rng, kR2, 2);
  // Force an invertible anchor by gauging the tangent model when needed.
  if (!l.anchor.has_unit_det()) l = tangent_algebroid(kR2);
  TwoRep rep = adjoint_rep(l, gen::random_tm_connection(rng, l.bundle));
  if (rng.index(2) == 0) rep = twist(rep, gen::random_twist(rng, rep));
  return rep;
}

bool criterion_splitting(std::ostream& why) {
  RatRng rng(202);
  int clean = 0, detected = 0;
  const int n_inst = 25;
  for (int t = 0; t < n_inst; ++t) {
    TwoRep rep = invertible_complex_rep(rng);
    VBAlgebroidRealization real(rep);
    if (real.jacobi_report().all_pass()) ++clean;

    int n = rep.algebroid.bundle.chart.dim;
    // Curvature axiom mutation.
    {
      TwoRep bad = rep;
      bad.curv[0][1].at(0, 0) += Poly::constant(n, Ratio(1));
      bad.curv[1][0].at(0, 0) -= Poly::constant(n, Ratio(1));
      Report r = VBAlgebroidRealization(bad).jacobi_report();
      if (!r.all_pass() && r.first_failure() && !r.first_failure()->name.empty())
        ++detected;
    }
    // Complex-compatibility mutation.
    {
      TwoRep bad = rep;
      bad.conn0.gamma[0].at(0, 0) += Poly::constant(n, Ratio(1));
      Report r = VBAlgebroidRealization(bad).jacobi_report();
      if (!r.all_pass() && r.first_failure()) ++detected;
    }
    // Algebroid bracket mutation.
    {
      TwoRep bad = rep;
      bad.algebroid.structure[0][1][0] += Poly::constant(n, Ratio(1));
      bad.algebroid.structure[1][0][0] -= Poly::constant(n, Ratio(1));
      Report r = VBAlgebroidRealization(bad).jacobi_report();
      if (!r.all_pass() && r.first_failure()) ++detected;
    }
  }
  why << clean << "/" << n_inst << " clean, " << detected << "/" << 3 * n_inst
      << " mutations detected";
  return clean == n_inst && detected == 3 * n_inst;
}

// --- 3: twist group law ---------------------------------------------------------

bool reps_data_equal(const TwoRep& a, const TwoRep& b) {
  if (!(a.partial == b.partial)) return false;
  for (int i = 0; i < a.algebroid.bundle.rank; ++i) {
    if (!(a.conn0.gamma[i] == b.conn0.gamma[i])) return false;
    if (!(a.conn1.gamma[i] == b.conn1.gamma[i])) return false;
    for (int j = 0; j < a.algebroid.bundle.rank; ++j)
      if (!(a.curv[i][j] == b.curv[i][j])) return false;
  }
  return true;
}

bool criterion_twist(std::ostream& why) {
  RatRng rng(303);
  int ok = 0;
  for (int t = 0; t < 25; ++t) {
    TwoRep rep = gen::random_valid_rep(rng, chart_for(rng));
    TwistTensor phi = gen::random_twist(rng, rep);
    TwistTensor neg;
    for (const auto& p : phi) neg.push_back(-p);
    if (reps_data_equal(twist(twist(rep, phi), neg), rep)) ++ok;
  }
  // Adjoint representations of two connections are twist-related.
  bool adjoint_ok = true;
  for (int t = 0; t < 5 && adjoint_ok; ++t) {
    LieAlgebroidModel l = gen::random_algebroid(rng, kR2, 1 + rng.index(3));
    Connection c1 = gen::random_tm_connection(rng, l.bundle);
    Connection c2 = gen::random_tm_connection(rng, l.bundle);
    adjoint_ok = reps_data_equal(twist(adjoint_rep(l, c1), adjoint_twist(l, c1, c2)),
                                 adjoint_rep(l, c2));
  }
  why << ok << "/25 group law, adjoint twist-relation "
      << (adjoint_ok ? "exact" : "FAILED");
  return ok == 25 && adjoint_ok;
}

// --- 4: Poisson <-> self-dual ----------------------------------------------------

TwoRep invertible_selfdual(RatRng& rng) {
  if (rng.index(2) == 0) {
    int rank = 2 + rng.index(2);
    FiberMetric g = gen::random_metric(rng, kR2, rank);
    return gen::selfdual_from_metric(g, gen::random_metric_connection(rng, g));
  }
  int rank = 1 + rng.index(2);
  return direct_sum_double(tangent_rep(gen::random_tm_connection(rng, {kR2, rank})));
}

bool criterion_poisson_selfdual(std::ostream& why) {
  RatRng rng(404);
  int clean = 0, detected = 0;
  const int n_inst = 25;
  for (int t = 0; t < n_inst; ++t) {
    TwoRep sd = invertible_selfdual(rng);
    PoissonStructure2 p = make_poisson2(sd);
    if (check_graded_axioms(p).all_pass()) ++clean;
    int n = sd.algebroid.bundle.chart.dim;

    auto named_failure = [](const Report& r, const char* pattern) {
      for (const auto& c : r.checks)
        if (!c.pass && c.name.find(pattern) != std::string::npos) return true;
      return false;
    };
    // partial symmetry.
    {
      TwoRep bad = sd;
      bad.partial.at(0, 1) += Poly::constant(n, Ratio(1));
      Report r = check_graded_axioms(make_poisson2(bad, false));
      if (named_failure(r, "skew{xi")) ++detected;
    }
    // connection duality.
    {
      TwoRep bad = sd;
      bad.conn0.gamma[0].at(0, 1) += Poly::constant(n, Ratio(1));
      Report r = check_graded_axioms(make_poisson2(bad, false));
      if (named_failure(r, "jacobi{")) ++detected;
    }
    // curvature antisymmetry (symmetric part plus a non-closed skew part).
    {
      TwoRep bad = sd;
      PolyMatrix s(bad.e0.rank, bad.e1.rank, n);
      s.at(0, 0) = Poly::constant(n, Ratio(1));
      s.at(0, 1) = Poly::var(n, 0);
      s.at(1, 0) = -Poly::var(n, 0);
      bad.curv[0][1] = bad.curv[0][1] + s;
      bad.curv[1][0] = bad.curv[1][0] - s.transpose();
      Report r = check_graded_axioms(make_poisson2(bad, false));
      if (named_failure(r, "jacobi{")) ++detected;
    }
  }
  why << clean << "/" << n_inst << " clean, " << detected << "/" << 3 * n_inst
      << " mutations named";
  return clean == n_inst && detected == 3 * n_inst;
}

// --- 5: cocycles and metric well-definedness -------------------------------------

bool criterion_cocycles(std::ostream& why) {
  RatRng rng(505);
  int clean = 0, detected = 0;
  for (int t = 0; t < 10; ++t) {
    TwoManChart inst = gen::random_twoman(rng, kR2, 2, 2, 3);
    if (geometrize_report(inst).all_pass()) ++clean;
    TwoManChart bad = inst;
    auto& tr = bad.transitions[{2, 0}];
    tr.rho[0].at(0, 1) += Poly::constant(2, Ratio(1));
    tr.rho[0].at(1, 0) -= Poly::constant(2, Ratio(1));
    if (!check_twoman_cocycles(bad).all_pass()) ++detected;
  }
  why << clean << "/10 clean, " << detected << "/10 perturbations detected";
  return clean == 10 && detected == 10;
}

// --- 6: functor round trips -------------------------------------------------------

bool criterion_roundtrips(std::ostream& why) {
  RatRng rng(606);
  int geo = 0, alg = 0, poisson_split = 0, poisson_geo = 0;
  for (int t = 0; t < 25; ++t) {
    TwoManChart inst =
        gen::random_twoman(rng, kR2, 1 + rng.index(2), 1 + rng.index(2), 1 + rng.index(3));
    if (roundtrip_twoman(inst).all_pass()) ++alg;
    GeometrizeResult g = geometrize(inst);
    if (roundtrip_atlas(g.involutive_atlas).all_pass()) ++geo;
  }
  for (int t = 0; t < 25; ++t) {
    PoissonStructure2 p = make_poisson2(gen::random_selfdual_rep(rng, kR2));
    if (poisson_roundtrip(p).all_pass()) ++poisson_split;
    InvolutiveDVB host = make_involutive_dvb(
        kR2, p.ring.r_odd, p.ring.r_even,
        PolyCube(p.ring.r_odd, p.ring.r_odd, p.ring.r_even, 2));
    LinearPoissonOnD l = dual_linear_poisson(host, p.rep);
    if (poisson_roundtrip(l).all_pass()) ++poisson_geo;
  }
  why << alg << "/25 chart data, " << geo << "/25 atlases, " << poisson_split
      << "/25 split Poisson, " << poisson_geo << "/25 geometric Poisson";
  return alg == 25 && geo == 25 && poisson_split == 25 && poisson_geo == 25;
}

// --- 7: symplectic criterion --------------------------------------------------------

bool criterion_symplectic(std::ostream& why) {
  RatRng rng(707);
  int pos = 0;
  for (int t = 0; t < 10; ++t) {
    Chart chart = chart_for(rng);
    FiberMetric g = gen::random_metric(rng, chart, 1 + rng.index(3));
    PoissonStructure2 p =
        symplectic_from_metric_bundle(g, gen::random_metric_connection(rng, g));
    if (is_symplectic(p)) ++pos;
  }
  // Singular complex map and singular / non-square anchors are rejected.
  bool neg = true;
  neg = neg && !is_symplectic(make_poisson2(zero_rep(tangent_algebroid(kR2), 2, 2)));
  neg = neg && !is_symplectic(make_poisson2(
                   direct_sum_double(zero_rep(abelian_algebroid(kR2, 2), 1, 1))));
  neg = neg && !is_symplectic(make_poisson2(zero_rep(abelian_algebroid(kR2, 3), 2, 2)));

  // The cotangent-double bracket table is reproduced exactly on generators.
  int tables = 0;
  for (int t = 0; t < 3; ++t) {
    FiberMetric g = gen::random_metric(rng, kR2, 2);
    Connection mc = gen::random_metric_connection(rng, g);
    if (cotangent_involution_check(g, mc, 900 + t).all_pass()) ++tables;
  }
  why << pos << "/10 symplectic, negatives " << (neg ? "rejected" : "FAILED")
      << ", " << tables << "/3 bracket tables exact";
  return pos == 10 && neg && tables == 3;
}

// --- 8: basic 2-representation --------------------------------------------------------

bool criterion_basic(std::ostream& why) {
  RatRng rng(808);
  int valid = 0, selfdual = 0, pairings = 0, mutations = 0;
  for (int t = 0; t < 5; ++t) {
    LieAlgebroidModel l = tangent_algebroid(kR2);
    DullBracket skew = gen::random_skew_dull(rng, kR2, 2);
    DorfmanConnection d = dull_to_dorfman(skew);
    TwoRep basic = basic_tworep(l, d);
    if (check_tworep(basic).all_pass()) ++valid;
    PolyMatrix j = basic_selfdual_identification(l);
    if (is_selfdual(basic, &j)) ++selfdual;
    if (pontryagin_pairing_check(d).all_pass()) ++pairings;

    DullBracket bad = skew;
    bad.table[2][2][2] += Poly::constant(2, Ratio(1));  // symmetric injection
    TwoRep notsd = basic_tworep(l, dull_to_dorfman(bad));
    Report r = selfdual_report(notsd, &j);
    bool duality_clause = false;
    for (const auto& c : r.checks)
      if (!c.pass && c.name.find("connections-dual") != std::string::npos)
        duality_clause = true;
    if (duality_clause) ++mutations;
  }
  why << valid << "/5 valid, " << selfdual << "/5 self-dual, " << pairings
      << "/5 pairing identities, " << mutations << "/5 non-skew mutations on the duality clause";
  return valid == 5 && selfdual == 5 && pairings == 5 && mutations == 5;
}

// --- 9: Lagrangian symmetrization -------------------------------------------------------

bool criterion_symmetrization(std::ostream& why) {
  RatRng rng(909);
  int lagr = 0;
  for (int t = 0; t < 25; ++t) {
    Chart chart = chart_for(rng);
    int rq = 1 + rng.index(3), rb = 1 + rng.index(3);
    MetricDVB m = make_metric_dvb(
        chart, rq, rb, gen::random_symmetric_cube(rng, rq, rb, chart.dim, 2));
    if (lambda_of_splitting(m, symmetrize_splitting(m)).is_zero()) ++lagr;
  }
  // Tangent double with a non-metric connection: the symmetrized splitting
  // corresponds to a metric connection.
  bool tangent_ok = true;
  for (int t = 0; t < 3 && tangent_ok; ++t) {
    FiberMetric g = gen::random_metric(rng, kR2, 2);
    Connection nabla = gen::random_tm_connection(rng, g.bundle);
    // Lambda tensor of the tangent-double splitting defined by nabla.
    PolyCube lambda(2, 2, 2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int u = 0; u < 2; ++u) {
          Poly acc = g.g.at(i, j).diff(u);
          for (int k = 0; k < 2; ++k)
            acc -= nabla.gamma[u].at(k, i) * g.g.at(k, j) +
                   nabla.gamma[u].at(k, j) * g.g.at(i, k);
          lambda.at(i, j, u) = acc;
        }
    MetricDVB m = make_metric_dvb(kR2, 2, 2, lambda);
    SplittingChange phi = symmetrize_splitting(m);
    if (!lambda_of_splitting(m, phi).is_zero()) {
      tangent_ok = false;
      break;
    }
    // Translate the change back into a connection shift:
    // g dGamma_u column i = -phi(e_i)(d_u).
    Connection shifted = nabla;
    PolyMatrix ginv = g.g.inverse();
    for (int u = 0; u < 2; ++u) {
      PolyMatrix rhs(2, 2, 2);
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) rhs.at(k, i) = -phi.phi.at(i, u, k);
      shifted.gamma[u] = nabla.gamma[u] + ginv * rhs;
    }
    tangent_ok = metric_compatibility(shifted, g);
  }
  why << lagr << "/25 exactly Lagrangian, tangent-double connection "
      << (tangent_ok ? "metric" : "NOT metric");
  return lagr == 25 && tangent_ok;
}

// --- 10: CLI contract ---------------------------------------------------------------------

bool criterion_cli(std::ostream& why) {
  RatRng rng(1010);
  VerifyOptions opt;
  bool serializer = true;
  for (const std::string kind :
       {"lie-algebroid", "tworep", "metric-dvb", "involutive-dvb", "two-man-atlas",
        "dorfman", "poisson2"}) {
    Instance inst;
    inst.kind = kind;
    if (kind == "lie-algebroid") {
      inst.algebroid = gen::random_algebroid(rng, kR2, 2);
      inst.tm_connection = gen::random_tm_connection(rng, inst.algebroid->bundle);
    } else if (kind == "tworep") {
      inst.rep = gen::random_valid_rep(rng, kR2);
    } else if (kind == "metric-dvb") {
      inst.metric = make_metric_dvb(kR2, 2, 2, gen::random_symmetric_cube(rng, 2, 2, 2, 2));
    } else if (kind == "involutive-dvb") {
      inst.involutive =
          make_involutive_dvb(kR2, 2, 2, gen::random_symmetric_cube(rng, 2, 2, 2, 2));
    } else if (kind == "two-man-atlas") {
      inst.twoman = gen::random_twoman(rng, kR2, 2, 2, 2);
    } else if (kind == "dorfman") {
      inst.dorfman = gen::random_dorfman(rng, kR2, 2);
    } else {
      inst.rep = gen::random_selfdual_rep(rng, kR2);
    }
    Json a = instance_to_json(inst);
    serializer = serializer && (instance_to_json(parse_instance_json(a)) == a);
  }

  Instance p;
  p.kind = "poisson2";
  p.rep = gen::random_selfdual_rep(rng, kR2);
  bool exit0 = run_verify(p, opt).exit_code == 0;
  VerifyOptions mopt = opt;
  mopt.mutate = "partial-symmetry";
  bool exit1 = run_verify(p, mopt).exit_code == 1;
  bool exit2 = false;
  try {
    Json bad;
    bad["format"] = "dvbkit/1";
    bad["kind"] = "no-such-kind";
    bad["payload"] = Json::object();
    parse_instance_json(bad);
  } catch (const SerializeError&) {
    exit2 = true;  // the CLI maps this to exit code 2
  }
  std::string r1 = report_to_json(run_verify(p, opt).report, opt, p.kind).dump(2);
  std::string r2 = report_to_json(run_verify(p, opt).report, opt, p.kind).dump(2);
  bool deterministic = r1 == r2;

  why << "serializer " << (serializer ? "identity" : "FAILED") << ", exit codes "
      << (exit0 && exit1 && exit2 ? "0/1/2 honored" : "FAILED") << ", reports "
      << (deterministic ? "byte-identical" : "NOT deterministic");
  return serializer && exit0 && exit1 && exit2 && deterministic;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "duality round trip", 30.0, criterion_duality},
      {2, "splitting theorem (realization Jacobi + mutations)", 60.0, criterion_splitting},
      {3, "twist group law", 60.0, criterion_twist},
      {4, "Poisson bracket <-> self-dual representation", 60.0, criterion_poisson_selfdual},
      {5, "cocycle laws and chartwise metric", 60.0, criterion_cocycles},
      {6, "functor round trips", 60.0, criterion_roundtrips},
      {7, "symplectic criterion and cotangent table", 60.0, criterion_symplectic},
      {8, "basic 2-representation", 60.0, criterion_basic},
      {9, "Lagrangian symmetrization", 60.0, criterion_symmetrization},
      {10, "CLI contract", 60.0, criterion_cli},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::ostringstream why;
    bool ok = false;
    try {
      ok = c.run(why);
    } catch (const std::exception& e) {
      why << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs <= c.time_limit_s;
    if (!in_time) why << " [exceeded " << c.time_limit_s << "s limit]";
    bool pass = ok && in_time;
    if (!pass) ++failures;
    std::cout << "criterion " << c.number << " [" << c.name << "]: "
              << (pass ? "PASS" : "FAIL") << " (" << why.str() << ", "
              << secs << "s)\n";
  }
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
