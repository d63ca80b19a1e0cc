// Instance files and the verification driver: serializer round trips on
// every kind, exit-code contract, schema errors with field paths, named
// mutations, and byte-level determinism of structured reports.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dvbkit/verify.hpp"
#include "support/gen.hpp"

using namespace dvbkit;

namespace {
const Chart r2{2, {"x0", "x1"}};

Instance make_kind(const std::string& kind, RatRng& rng) {
  Instance inst;
  inst.kind = kind;
  if (kind == "lie-algebroid") {
    inst.algebroid = gen::random_algebroid(rng, r2, 2);
    inst.tm_connection = gen::random_tm_connection(rng, inst.algebroid->bundle);
  } else if (kind == "tworep") {
    inst.rep = gen::random_valid_rep(rng, r2);
  } else if (kind == "metric-dvb") {
    inst.metric = make_metric_dvb(r2, 2, 2, gen::random_symmetric_cube(rng, 2, 2, 2, 2));
  } else if (kind == "involutive-dvb") {
    inst.involutive =
        make_involutive_dvb(r2, 2, 2, gen::random_symmetric_cube(rng, 2, 2, 2, 2));
  } else if (kind == "two-man-atlas") {
    inst.twoman = gen::random_twoman(rng, r2, 2, 2, 3);
  } else if (kind == "dorfman") {
    inst.dorfman = gen::random_dorfman(rng, r2, 2);
    inst.algebroid = gen::random_algebroid(rng, r2, 2);
  } else if (kind == "poisson2") {
    inst.rep = gen::random_selfdual_rep(rng, r2);
  }
  return inst;
}
}  // namespace

TEST_CASE("serializer round trip is structural identity on every kind") {
  RatRng rng(3);
  for (const std::string kind :
       {"lie-algebroid", "tworep", "metric-dvb", "involutive-dvb", "two-man-atlas",
        "dorfman", "poisson2"}) {
    Instance inst = make_kind(kind, rng);
    Json once = instance_to_json(inst);
    Instance back = parse_instance_json(once);
    Json twice = instance_to_json(back);
    CHECK(once == twice);
    CHECK(back.kind == kind);
  }
}

TEST_CASE("schema errors name the offending field") {
  Json j;
  j["format"] = "dvbkit/1";
  j["kind"] = "metric-dvb";
  j["payload"] = {
      {"chart", {{"dim", 1}}},
      {"rank_q", 1},
      {"rank_b", 1},
      {"lambda",
       {{"d0", 1}, {"d1", 1}, {"d2", 1}, {"entries", Json::array({Json::array({Json::array({Json::array({1}), "1.5", "1"})})})}}}};
  try {
    parse_instance_json(j);
    CHECK(false);
  } catch (const SerializeError& e) {
    std::string msg = e.what();
    CHECK(msg.find("lambda.entries[0]") != std::string::npos);
  }

  Json missing;
  missing["format"] = "dvbkit/1";
  missing["kind"] = "tworep";
  missing["payload"] = Json::object();
  CHECK_THROWS_AS(parse_instance_json(missing), SerializeError);
}

TEST_CASE("exit-code contract and mutation detection") {
  RatRng rng(7);
  VerifyOptions opt;

  Instance good = make_kind("poisson2", rng);
  CHECK(run_verify(good, opt).exit_code == 0);

  for (const std::string axis :
       {"partial-symmetry", "connection-duality", "curvature-antisymmetry"}) {
    VerifyOptions mopt = opt;
    mopt.mutate = axis;
    VerifyResult r = run_verify(good, mopt);
    CHECK(r.exit_code == 1);
    CHECK(r.report.first_failure() != nullptr);
  }

  Instance rep = make_kind("tworep", rng);
  CHECK(run_verify(rep, opt).exit_code == 0);
  VerifyOptions mopt = opt;
  mopt.mutate = "curvature";
  mopt.suite = "realize";
  VerifyResult mutated = run_verify(rep, mopt);
  CHECK(mutated.exit_code == 1);

  Instance atlas = make_kind("two-man-atlas", rng);
  CHECK(run_verify(atlas, opt).exit_code == 0);
  VerifyOptions ropt = opt;
  ropt.suite = "roundtrip";
  CHECK(run_verify(atlas, ropt).exit_code == 0);
  ropt.suite = "cocycles";
  ropt.mutate = "rho";
  CHECK(run_verify(atlas, ropt).exit_code == 1);

  VerifyOptions badopt;
  badopt.suite = "no-such-suite";
  CHECK_THROWS_AS(run_verify(rep, badopt), std::invalid_argument);
  VerifyOptions badmut;
  badmut.mutate = "no-such-axis";
  CHECK_THROWS_AS(run_verify(rep, badmut), std::invalid_argument);
}

TEST_CASE("remaining kinds run their default suites cleanly") {
  RatRng rng(11);
  VerifyOptions opt;
  for (const std::string kind :
       {"lie-algebroid", "metric-dvb", "involutive-dvb", "dorfman"}) {
    Instance inst = make_kind(kind, rng);
    VerifyResult r = run_verify(inst, opt);
    CHECK(r.exit_code == 0);
  }
  // Round trips through the driver.
  Instance m = make_kind("metric-dvb", rng);
  CHECK(run_roundtrip(m, opt).exit_code == 0);
  Instance p = make_kind("poisson2", rng);
  CHECK(run_roundtrip(p, opt).exit_code == 0);
}

TEST_CASE("structured reports are byte-identical under fixed inputs") {
  RatRng rng(13);
  Instance inst = make_kind("poisson2", rng);
  VerifyOptions opt;
  opt.seed = 99;
  std::string a = report_to_json(run_verify(inst, opt).report, opt, inst.kind).dump(2);
  std::string b = report_to_json(run_verify(inst, opt).report, opt, inst.kind).dump(2);
  CHECK(a == b);

  Instance atlas = make_kind("two-man-atlas", rng);
  std::string c = report_to_json(run_verify(atlas, opt).report, opt, atlas.kind).dump(2);
  std::string d = report_to_json(run_verify(atlas, opt).report, opt, atlas.kind).dump(2);
  CHECK(c == d);
}

TEST_CASE("build constructors emit parseable instances") {
  RatRng rng(17);
  VerifyOptions opt;

  Instance la = make_kind("lie-algebroid", rng);
  Json built = run_build(la, "adjoint-rep", opt);
  Instance rep = parse_instance_json(built["result"]);
  CHECK(rep.kind == "tworep");
  CHECK(run_verify(rep, opt).exit_code == 0);

  Instance m = make_kind("metric-dvb", rng);
  Json sym = run_build(m, "symmetrize", opt);
  Instance lag = parse_instance_json(sym["result"]);
  CHECK(lag.metric->lambda.is_zero());

  Json dual = run_build(m, "metric-to-involutive", opt);
  Instance inv = parse_instance_json(dual["result"]);
  CHECK(inv.kind == "involutive-dvb");
  Json back = run_build(inv, "involutive-to-metric", opt);
  Instance m2 = parse_instance_json(back["result"]);
  CHECK(m2.metric->lambda == m.metric->lambda);

  Instance atlas = make_kind("two-man-atlas", rng);
  Json geo = run_build(atlas, "geometrize", opt);
  CHECK(geo.contains("metric_atlas"));
  CHECK(geo.contains("involutive_atlas"));

  CHECK_THROWS_AS(run_build(atlas, "no-such-constructor", opt), std::invalid_argument);
}
