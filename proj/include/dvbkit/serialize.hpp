// Instance files: a JSON-based exact interchange format. Polynomials are
// term lists of (exponent vector, numerator, denominator); every number in a
// payload is a rational carried as a string or integer.
#pragma once

#include "dvbkit/examples.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace dvbkit {

struct SerializeError : std::runtime_error {
  explicit SerializeError(const std::string& what) : std::runtime_error(what) {}
};

// One parsed instance file; exactly the members implied by `kind` are set.
// Kinds: lie-algebroid, tworep, metric-dvb, involutive-dvb, two-man-atlas,
// dorfman, poisson2.
struct Instance {
  std::string kind;
  std::optional<LieAlgebroidModel> algebroid;
  std::optional<Connection> tm_connection;  // optional rider on lie-algebroid
  std::optional<TwoRep> rep;                // tworep and poisson2
  std::optional<MetricDVB> metric;
  std::optional<InvolutiveDVB> involutive;
  std::optional<TwoManChart> twoman;
  std::optional<DorfmanConnection> dorfman;
  int degree_cap = 4;
};

using Json = nlohmann::ordered_json;

Instance parse_instance_json(const Json& j);
Instance parse_instance(const std::string& path);

Json instance_to_json(const Instance& inst);
void write_instance(const std::string& path, const Instance& inst);

// Shared fragment encoders (also used by build outputs).
Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j, int n_vars, const std::string& where);
Json matrix_to_json(const PolyMatrix& m);
Json cube_to_json(const PolyCube& c);
Json atlas_to_json(const DVBAtlas& a);

}  // namespace dvbkit
