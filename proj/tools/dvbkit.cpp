// dvbkit command line: verify instance files, run constructors, check round
// trips. Exit codes: 0 all checks pass, 1 a check failed, 2 input error.
#include "dvbkit/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("DVBKIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring malformed DVBKIT_SEED\n";
    }
  }
  return 42;
}

void write_report(const std::string& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw dvbkit::SerializeError("cannot write report to '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dvbkit: exact verification of double vector bundle constructions"};
  app.require_subcommand(1);

  dvbkit::VerifyOptions opt;
  opt.seed = default_seed();
  std::string input, report_path, constructor, output_path;

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite on an instance file");
  verify->add_option("file", input, "instance file")->required();
  verify->add_option("--suite", opt.suite, "suite name (default: the kind's default suite)");
  verify->add_option("--seed", opt.seed, "sample seed (env DVBKIT_SEED overrides the default)");
  verify->add_option("--samples", opt.samples, "sample count for pointwise checks");
  verify->add_option("--degree-cap", opt.degree_cap, "degree cap for graded brackets");
  verify->add_option("--mutate", opt.mutate, "apply a named mutation before verifying");
  verify->add_option("--report", report_path, "write the structured report to this path");

  CLI::App* build = app.add_subcommand("build", "run a constructor and emit the result");
  build->add_option("constructor", constructor,
                    "one of: geometrize, adjoint-rep, dualize, direct-sum, symmetrize, "
                    "metric-to-involutive, involutive-to-metric, basic-rep")
      ->required();
  build->add_option("file", input, "instance file")->required();
  build->add_option("--seed", opt.seed, "sample seed");
  build->add_option("-o,--output", output_path, "write the result to this path");

  CLI::App* roundtrip = app.add_subcommand("roundtrip", "run the functor round trip for the kind");
  roundtrip->add_option("file", input, "instance file")->required();
  roundtrip->add_option("--seed", opt.seed, "sample seed");
  roundtrip->add_option("--degree-cap", opt.degree_cap, "degree cap for graded brackets");
  roundtrip->add_option("--report", report_path, "write the structured report to this path");

  CLI11_PARSE(app, argc, argv);

  try {
    dvbkit::Instance inst = dvbkit::parse_instance(input);
    if (verify->parsed() || roundtrip->parsed()) {
      dvbkit::VerifyResult result = verify->parsed()
                                        ? dvbkit::run_verify(inst, opt)
                                        : dvbkit::run_roundtrip(inst, opt);
      std::cout << "kind: " << inst.kind << "\nsuite: " << result.report.suite << "\n";
      std::cout << dvbkit::report_to_text(result.report);
      if (!report_path.empty())
        write_report(report_path, dvbkit::report_to_json(result.report, opt, inst.kind));
      return result.exit_code;
    }
    dvbkit::Json out = dvbkit::run_build(inst, constructor, opt);
    if (output_path.empty())
      std::cout << out.dump(2) << "\n";
    else {
      std::ofstream os(output_path);
      if (!os) throw dvbkit::SerializeError("cannot write '" + output_path + "'");
      os << out.dump(2) << "\n";
      std::cout << "wrote " << output_path << "\n";
    }
    return 0;
  } catch (const dvbkit::SerializeError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
