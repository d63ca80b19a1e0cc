#include "dvbkit/verify.hpp"

#include "dvbkit/poisson2.hpp"

#include <sstream>

namespace dvbkit {

namespace {

[[noreturn]] void input_error(const std::string& what) {
  throw std::invalid_argument(what);
}

Report metric_suite(const MetricDVB& m, const VerifyOptions& opt) {
  Report rep{"metric"};
  rep.absorb(check_metric(m));
  PolyCube after = lambda_of_splitting(m, symmetrize_splitting(m));
  rep.add("lagrangian-symmetrization", after.is_zero());
  InvolutiveDVB dual = metric_to_involutive(m, opt.seed);
  rep.absorb(check_involutive(dual), "dual");
  MetricDVB back = involutive_to_metric(dual);
  rep.add("duality-roundtrip", back.lambda == m.lambda);
  return rep;
}

Report involutive_suite(const InvolutiveDVB& d, const VerifyOptions& opt) {
  Report rep{"involutive"};
  rep.absorb(check_involutive(d));
  MetricDVB dual = involutive_to_metric(d);
  rep.absorb(check_metric(dual), "dual");
  InvolutiveDVB back = metric_to_involutive(dual, opt.seed);
  rep.add("duality-roundtrip", back.kappa == d.kappa);
  if (d.kappa.is_zero()) {
    // psi embedding lands in the anti-fixed functions.
    RatRng rng(opt.seed);
    int n = d.host.chart.dim, rq = d.host.side_a.rank, rb = d.host.core.rank;
    bool ok = true;
    for (int t = 0; t < 5 && ok; ++t) {
      PolyVec tau(rq);
      for (auto& c : tau) c = random_poly(rng, n, 2, 2);
      Poly f = psi_embed_core(d, tau);
      ok = involution_pullback(d, f) == -f;
      IsotropicLinearSection s;
      s.base_b = PolyVec(rb);
      for (auto& c : s.base_b) c = random_poly(rng, n, 1, 2);
      PolyMatrix w(rq, rq, n);
      for (int i = 0; i < rq; ++i)
        for (int j = i + 1; j < rq; ++j) {
          Poly v = random_poly(rng, n, 1, 2);
          w.at(i, j) = v;
          w.at(j, i) = -v;
        }
      s.omega = w;
      Poly h = psi_embed_isotropic(d, s);
      ok = ok && involution_pullback(d, h) == -h;
    }
    rep.add("psi-image-anti-fixed", ok);
  }
  return rep;
}

Report dorfman_suite(const Instance& inst, const VerifyOptions& opt) {
  const DorfmanConnection& d = *inst.dorfman;
  Report rep{"dorfman"};
  rep.absorb(d.verify_axioms(opt.seed));
  DullBracket dull = dorfman_dull_duality(d);
  rep.absorb(check_dull(dull), "dull");
  DorfmanConnection back = dull_to_dorfman(dull);
  bool round = true;
  for (int i = 0; i < d.model().q_rank() && round; ++i)
    for (int j = 0; j < d.model().e_rank && round; ++j)
      round = is_zero(d.frame_value(i, j) - back.frame_value(i, j));
  rep.add("duality-roundtrip", round);
  rep.absorb(pontryagin_pairing_check(d), "pairing");
  bool skew = dull_is_skew(dull);
  rep.add("dull-bracket-skew", true,
          skew ? "skew: Lagrangian splitting" : "not skew: splitting not Lagrangian");
  rep.add("lambda-matches-skewness", pontryagin_lambda(d).is_zero() == skew);
  if (inst.algebroid) {
    TwoRep basic = basic_tworep(*inst.algebroid, d);
    rep.absorb(check_tworep(basic), "basic-rep");
    PolyMatrix j = basic_selfdual_identification(*inst.algebroid);
    if (skew) {
      rep.absorb(selfdual_report(basic, &j), "basic-rep");
    } else {
      // Self-duality can survive a non-skew bracket only when the anchor
      // degenerates; record the outcome without failing the suite.
      rep.add("basic-rep-selfdual", true,
              is_selfdual(basic, &j) ? "self-dual (degenerate anchor)"
                                     : "not self-dual, as expected for a non-skew bracket");
    }
  }
  return rep;
}

Report poisson_suite(const Instance& inst, const VerifyOptions& opt,
                     const std::string& suite) {
  PoissonStructure2 p = make_poisson2(*inst.rep, /*enforce=*/false, opt.degree_cap);
  if (suite == "axioms" || suite.empty()) {
    Report rep = check_graded_axioms(p);
    RatRng rng(opt.seed);
    rep.absorb(check_bracket_properties(p, rng, std::min(opt.samples, 10)), "properties");
    return rep;
  }
  if (suite == "roundtrip") return poisson_roundtrip(p);
  if (suite == "symplectic") {
    Report rep{"symplectic"};
    rep.absorb(selfdual_report(p.rep), "selfdual");
    rep.add("symplectic", is_symplectic(p));
    return rep;
  }
  input_error("unknown suite '" + suite + "' for kind poisson2");
}

}  // namespace

std::vector<std::string> suites_for_kind(const std::string& kind) {
  if (kind == "lie-algebroid") return {"axioms"};
  if (kind == "tworep") return {"axioms", "realize", "selfdual"};
  if (kind == "metric-dvb") return {"metric"};
  if (kind == "involutive-dvb") return {"involutive"};
  if (kind == "two-man-atlas") return {"cocycles", "roundtrip"};
  if (kind == "dorfman") return {"dorfman"};
  if (kind == "poisson2") return {"axioms", "roundtrip", "symplectic"};
  return {};
}

std::vector<std::string> mutations_for_kind(const std::string& kind) {
  if (kind == "lie-algebroid") return {"jacobi"};
  if (kind == "tworep")
    return {"curvature", "partial-symmetry", "connection-duality",
            "curvature-antisymmetry"};
  if (kind == "poisson2")
    return {"partial-symmetry", "connection-duality", "curvature-antisymmetry"};
  if (kind == "two-man-atlas") return {"rho"};
  if (kind == "dorfman") return {"dull-skew"};
  return {};
}

void apply_mutation(Instance& inst, const std::string& name) {
  if (inst.kind == "lie-algebroid" && name == "jacobi") {
    LieAlgebroidModel& l = *inst.algebroid;
    if (l.bundle.rank < 2) input_error("mutation 'jacobi' needs rank >= 2");
    int n = l.bundle.chart.dim;
    l.structure[0][1][0] += Poly::constant(n, Ratio(1));
    l.structure[1][0][0] -= Poly::constant(n, Ratio(1));
    return;
  }
  if ((inst.kind == "tworep" || inst.kind == "poisson2") && inst.rep) {
    TwoRep& r = *inst.rep;
    int n = r.algebroid.bundle.chart.dim;
    if (name == "curvature") {
      if (r.algebroid.bundle.rank < 2) input_error("mutation needs algebroid rank >= 2");
      r.curv[0][1].at(0, 0) += Poly::constant(n, Ratio(1));
      r.curv[1][0].at(0, 0) -= Poly::constant(n, Ratio(1));
      return;
    }
    if (name == "partial-symmetry") {
      if (r.partial.rows() < 2 || r.partial.cols() < 2)
        input_error("mutation needs rank >= 2");
      r.partial.at(0, 1) += Poly::constant(n, Ratio(1));
      return;
    }
    if (name == "connection-duality") {
      if (r.e0.rank < 2) input_error("mutation needs rank >= 2");
      r.conn0.gamma[0].at(0, 1) += Poly::constant(n, Ratio(1));
      return;
    }
    if (name == "curvature-antisymmetry") {
      if (r.algebroid.bundle.rank < 2 || r.e0.rank < 2 || n < 1)
        input_error("mutation needs algebroid and fiber rank >= 2 over a chart");
      PolyMatrix s(r.e0.rank, r.e1.rank, n);
      s.at(0, 0) = Poly::constant(n, Ratio(1));
      s.at(0, 1) = Poly::var(n, 0);
      s.at(1, 0) = -Poly::var(n, 0);
      r.curv[0][1] = r.curv[0][1] + s;
      r.curv[1][0] = r.curv[1][0] - s.transpose();
      return;
    }
  }
  if (inst.kind == "two-man-atlas" && name == "rho") {
    TwoManChart& t = *inst.twoman;
    if (t.transitions.empty() || t.m < 2) input_error("mutation 'rho' needs overlaps and m >= 2");
    auto& tr = t.transitions.rbegin()->second;
    int n = t.chart.dim;
    tr.rho[0].at(0, 1) += Poly::constant(n, Ratio(1));
    tr.rho[0].at(1, 0) -= Poly::constant(n, Ratio(1));
    return;
  }
  if (inst.kind == "dorfman" && name == "dull-skew") {
    DullBracket dull = dorfman_dull_duality(*inst.dorfman);
    const PontryaginModel& m = dull.model;
    if (m.e_rank < 1) input_error("mutation 'dull-skew' needs a dual frame");
    // Symmetric part on the dual-frame block.
    dull.table[m.chart.dim][m.chart.dim][m.chart.dim] +=
        Poly::constant(m.chart.dim, Ratio(1));
    inst.dorfman = dull_to_dorfman(dull);
    return;
  }
  input_error("unknown mutation '" + name + "' for kind " + inst.kind);
}

VerifyResult run_verify(const Instance& inst, const VerifyOptions& opt) {
  Instance work = inst;
  if (!opt.mutate.empty()) apply_mutation(work, opt.mutate);
  std::string suite = opt.suite;
  Report rep;
  if (work.kind == "lie-algebroid") {
    if (!suite.empty() && suite != "axioms")
      input_error("unknown suite '" + suite + "' for kind lie-algebroid");
    rep = check_lie_algebroid(*work.algebroid);
    if (work.tm_connection) {
      TwoRep ad = adjoint_rep(*work.algebroid, *work.tm_connection);
      rep.absorb(check_tworep(ad), "adjoint-rep");
    }
  } else if (work.kind == "tworep") {
    if (suite.empty() || suite == "axioms") {
      rep = check_tworep(*work.rep);
    } else if (suite == "realize") {
      VBAlgebroidRealization real(*work.rep);
      rep = real.jacobi_report();
    } else if (suite == "selfdual") {
      rep = selfdual_report(*work.rep);
    } else {
      input_error("unknown suite '" + suite + "' for kind tworep");
    }
  } else if (work.kind == "metric-dvb") {
    if (!suite.empty() && suite != "metric")
      input_error("unknown suite '" + suite + "' for kind metric-dvb");
    rep = metric_suite(*work.metric, opt);
  } else if (work.kind == "involutive-dvb") {
    if (!suite.empty() && suite != "involutive")
      input_error("unknown suite '" + suite + "' for kind involutive-dvb");
    rep = involutive_suite(*work.involutive, opt);
  } else if (work.kind == "two-man-atlas") {
    if (suite.empty() || suite == "cocycles") {
      rep = geometrize_report(*work.twoman);
    } else if (suite == "roundtrip") {
      rep = roundtrip_twoman(*work.twoman);
      GeometrizeResult g = geometrize(*work.twoman);
      rep.absorb(roundtrip_atlas(g.involutive_atlas), "atlas");
    } else {
      input_error("unknown suite '" + suite + "' for kind two-man-atlas");
    }
  } else if (work.kind == "dorfman") {
    if (!suite.empty() && suite != "dorfman")
      input_error("unknown suite '" + suite + "' for kind dorfman");
    rep = dorfman_suite(work, opt);
  } else if (work.kind == "poisson2") {
    rep = poisson_suite(work, opt, suite);
  } else {
    input_error("unknown kind '" + work.kind + "'");
  }
  return {rep, rep.all_pass() ? 0 : 1};
}

Json run_build(const Instance& inst, const std::string& constructor,
               const VerifyOptions& opt) {
  Json out;
  out["format"] = "dvbkit-build/1";
  out["constructor"] = constructor;
  if (constructor == "geometrize") {
    if (!inst.twoman) input_error("geometrize expects a two-man-atlas instance");
    GeometrizeResult g = geometrize(*inst.twoman);
    out["metric_atlas"] = atlas_to_json(g.metric_atlas);
    out["involutive_atlas"] = atlas_to_json(g.involutive_atlas);
    return out;
  }
  if (constructor == "adjoint-rep") {
    if (!inst.algebroid || !inst.tm_connection)
      input_error("adjoint-rep expects a lie-algebroid instance with tm_connection");
    Instance result;
    result.kind = "tworep";
    result.rep = adjoint_rep(*inst.algebroid, *inst.tm_connection);
    out["result"] = instance_to_json(result);
    return out;
  }
  if (constructor == "dualize" || constructor == "direct-sum") {
    if (!inst.rep) input_error(constructor + " expects a tworep instance");
    Instance result;
    result.kind = "tworep";
    result.rep = constructor == "dualize" ? dualize_rep(*inst.rep)
                                          : direct_sum_double(*inst.rep);
    out["result"] = instance_to_json(result);
    return out;
  }
  if (constructor == "symmetrize") {
    if (!inst.metric) input_error("symmetrize expects a metric-dvb instance");
    SplittingChange change = symmetrize_splitting(*inst.metric);
    out["change"] = cube_to_json(change.phi);
    Instance result;
    result.kind = "metric-dvb";
    result.metric = make_metric_dvb(inst.metric->host.chart,
                                    inst.metric->host.side_a.rank,
                                    inst.metric->host.side_b.rank,
                                    lambda_of_splitting(*inst.metric, change));
    out["result"] = instance_to_json(result);
    return out;
  }
  if (constructor == "metric-to-involutive") {
    if (!inst.metric) input_error("metric-to-involutive expects a metric-dvb instance");
    Instance result;
    result.kind = "involutive-dvb";
    result.involutive = metric_to_involutive(*inst.metric, opt.seed);
    out["result"] = instance_to_json(result);
    return out;
  }
  if (constructor == "involutive-to-metric") {
    if (!inst.involutive)
      input_error("involutive-to-metric expects an involutive-dvb instance");
    Instance result;
    result.kind = "metric-dvb";
    result.metric = involutive_to_metric(*inst.involutive);
    out["result"] = instance_to_json(result);
    return out;
  }
  if (constructor == "basic-rep") {
    if (!inst.dorfman || !inst.algebroid)
      input_error("basic-rep expects a dorfman instance with an algebroid");
    Instance result;
    result.kind = "tworep";
    result.rep = basic_tworep(*inst.algebroid, *inst.dorfman);
    out["result"] = instance_to_json(result);
    return out;
  }
  input_error("unknown constructor '" + constructor + "'");
}

VerifyResult run_roundtrip(const Instance& inst, const VerifyOptions& opt) {
  Report rep;
  if (inst.kind == "two-man-atlas") {
    rep = roundtrip_twoman(*inst.twoman);
    GeometrizeResult g = geometrize(*inst.twoman);
    rep.absorb(roundtrip_atlas(g.involutive_atlas), "atlas");
  } else if (inst.kind == "metric-dvb") {
    rep.suite = "duality-roundtrip";
    InvolutiveDVB dual = metric_to_involutive(*inst.metric, opt.seed);
    rep.add("metric-to-involutive-to-metric",
            involutive_to_metric(dual).lambda == inst.metric->lambda);
  } else if (inst.kind == "involutive-dvb") {
    rep.suite = "duality-roundtrip";
    MetricDVB dual = involutive_to_metric(*inst.involutive);
    rep.add("involutive-to-metric-to-involutive",
            metric_to_involutive(dual, opt.seed).kappa == inst.involutive->kappa);
  } else if (inst.kind == "poisson2" || inst.kind == "tworep") {
    PoissonStructure2 p = make_poisson2(*inst.rep, /*enforce=*/false, opt.degree_cap);
    rep = poisson_roundtrip(p);
  } else {
    input_error("no round trip defined for kind '" + inst.kind + "'");
  }
  return {rep, rep.all_pass() ? 0 : 1};
}

Json report_to_json(const Report& report, const VerifyOptions& opt,
                    const std::string& kind) {
  Json j;
  j["format"] = "dvbkit-report/1";
  j["kind"] = kind;
  j["suite"] = report.suite;
  j["seed"] = opt.seed;
  j["samples"] = opt.samples;
  j["degree_cap"] = opt.degree_cap;
  if (!opt.mutate.empty()) j["mutate"] = opt.mutate;
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["status"] = c.pass ? "pass" : "fail";
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["verdict"] = report.all_pass() ? "pass" : "fail";
  return j;
}

std::string report_to_text(const Report& report) {
  std::ostringstream os;
  for (const auto& c : report.checks) {
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  os << (report.all_pass() ? "verdict: pass" : "verdict: fail") << "\n";
  return os.str();
}

}  // namespace dvbkit
