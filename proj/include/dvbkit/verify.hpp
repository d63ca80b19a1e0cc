// Verification driver shared by the CLI and the test suites: suite dispatch
// per instance kind, named mutations for the mutation-testing demos, and
// deterministic report rendering.
#pragma once

#include "dvbkit/serialize.hpp"

namespace dvbkit {

struct VerifyOptions {
  std::string suite;  // empty selects the default suite for the kind
  std::uint64_t seed = 42;
  int samples = 25;
  int degree_cap = 4;
  std::string mutate;  // optional named mutation
};

// Exit codes: 0 all checks pass, 1 at least one check fails, 2 input error
// (the input-error case surfaces as SerializeError / invalid_argument).
struct VerifyResult {
  Report report;
  int exit_code = 0;
};

std::vector<std::string> suites_for_kind(const std::string& kind);
std::vector<std::string> mutations_for_kind(const std::string& kind);

// Applies a named mutation in place; throws std::invalid_argument for an
// unknown name.
void apply_mutation(Instance& inst, const std::string& name);

VerifyResult run_verify(const Instance& inst, const VerifyOptions& opt);

// Constructors for the build subcommand; result is a full JSON document.
Json run_build(const Instance& inst, const std::string& constructor,
               const VerifyOptions& opt);

// Round-trip dispatch per kind.
VerifyResult run_roundtrip(const Instance& inst, const VerifyOptions& opt);

Json report_to_json(const Report& report, const VerifyOptions& opt,
                    const std::string& kind);
std::string report_to_text(const Report& report);

}  // namespace dvbkit
