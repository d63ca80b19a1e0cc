#include "dvbkit/serialize.hpp"

#include <fstream>
#include <sstream>

namespace dvbkit {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw SerializeError(where + ": " + what);
}

Ratio ratio_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Ratio(j.get<long long>());
  if (j.is_string()) {
    auto r = parse_ratio(j.get<std::string>());
    if (!r) fail(where, "malformed rational '" + j.get<std::string>() + "'");
    return *r;
  }
  fail(where, "expected a rational (integer or \"n/d\" string)");
}

Json ratio_to_json(const Ratio& r) { return to_string(r); }

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) fail(where, std::string("missing field '") + name + "'");
  return j[name];
}

int int_field(const Json& j, const char* name, const std::string& where) {
  const Json& v = field(j, name, where);
  if (!v.is_number_integer()) fail(where + "." + name, "expected an integer");
  return v.get<int>();
}

Chart chart_from_json(const Json& j, const std::string& where) {
  Chart c;
  c.dim = int_field(j, "dim", where);
  if (c.dim < 0) fail(where, "dim must be nonnegative");
  if (j.contains("coords")) {
    for (const auto& name : j["coords"]) c.coords.push_back(name.get<std::string>());
  }
  return c;
}

Json chart_to_json(const Chart& c) {
  Json j;
  j["dim"] = c.dim;
  if (!c.coords.empty()) j["coords"] = c.coords;
  return j;
}

PolyMatrix matrix_from_json(const Json& j, int n_vars, const std::string& where) {
  int rows = int_field(j, "rows", where);
  int cols = int_field(j, "cols", where);
  const Json& entries = field(j, "entries", where);
  if (static_cast<int>(entries.size()) != rows * cols)
    fail(where, "entry count does not match rows*cols");
  PolyMatrix m(rows, cols, n_vars);
  int idx = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      std::ostringstream w;
      w << where << ".entries[" << idx << "]";
      m.at(r, c) = poly_from_json(entries[idx], n_vars, w.str());
      ++idx;
    }
  return m;
}

PolyCube cube_from_json(const Json& j, int n_vars, const std::string& where) {
  int d0 = int_field(j, "d0", where);
  int d1 = int_field(j, "d1", where);
  int d2 = int_field(j, "d2", where);
  const Json& entries = field(j, "entries", where);
  if (static_cast<int>(entries.size()) != d0 * d1 * d2)
    fail(where, "entry count does not match d0*d1*d2");
  PolyCube c(d0, d1, d2, n_vars);
  int idx = 0;
  for (int i = 0; i < d0; ++i)
    for (int k = 0; k < d1; ++k)
      for (int l = 0; l < d2; ++l) {
        std::ostringstream w;
        w << where << ".entries[" << idx << "]";
        c.at(i, k, l) = poly_from_json(entries[idx], n_vars, w.str());
        ++idx;
      }
  return c;
}

PolyVec vector_from_json(const Json& j, int n_vars, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of polynomials");
  PolyVec v;
  int idx = 0;
  for (const auto& e : j) {
    std::ostringstream w;
    w << where << "[" << idx++ << "]";
    v.push_back(poly_from_json(e, n_vars, w.str()));
  }
  return v;
}

Json vector_to_json(const PolyVec& v) {
  Json j = Json::array();
  for (const auto& p : v) j.push_back(poly_to_json(p));
  return j;
}

std::vector<PolyMatrix> matrices_from_json(const Json& j, int n_vars,
                                           const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of matrices");
  std::vector<PolyMatrix> out;
  int idx = 0;
  for (const auto& e : j) {
    std::ostringstream w;
    w << where << "[" << idx++ << "]";
    out.push_back(matrix_from_json(e, n_vars, w.str()));
  }
  return out;
}

Json matrices_to_json(const std::vector<PolyMatrix>& ms) {
  Json j = Json::array();
  for (const auto& m : ms) j.push_back(matrix_to_json(m));
  return j;
}

LieAlgebroidModel algebroid_from_json(const Json& j, const std::string& where) {
  Chart chart = chart_from_json(field(j, "chart", where), where + ".chart");
  int rank = int_field(j, "rank", where);
  LieAlgebroidModel l = abelian_algebroid(chart, rank);
  l.anchor = matrix_from_json(field(j, "anchor", where), chart.dim, where + ".anchor");
  if (l.anchor.rows() != rank || l.anchor.cols() != chart.dim)
    fail(where + ".anchor", "shape must be rank x dim");
  const Json& st = field(j, "structure", where);
  if (static_cast<int>(st.size()) != rank) fail(where + ".structure", "rank rows expected");
  for (int i = 0; i < rank; ++i) {
    if (static_cast<int>(st[i].size()) != rank)
      fail(where + ".structure", "rank columns expected");
    for (int k = 0; k < rank; ++k) {
      std::ostringstream w;
      w << where << ".structure[" << i << "][" << k << "]";
      PolyVec v = vector_from_json(st[i][k], chart.dim, w.str());
      if (static_cast<int>(v.size()) != rank) fail(w.str(), "length must equal rank");
      l.structure[i][k] = v;
    }
  }
  for (int i = 0; i < rank; ++i)
    for (int k = 0; k < rank; ++k)
      if (!is_zero(l.structure[i][k] + l.structure[k][i]))
        fail(where + ".structure", "must be antisymmetric in the frame indices");
  return l;
}

Json algebroid_to_json(const LieAlgebroidModel& l) {
  Json j;
  j["chart"] = chart_to_json(l.bundle.chart);
  j["rank"] = l.bundle.rank;
  j["anchor"] = matrix_to_json(l.anchor);
  Json st = Json::array();
  for (int i = 0; i < l.bundle.rank; ++i) {
    Json row = Json::array();
    for (int k = 0; k < l.bundle.rank; ++k) row.push_back(vector_to_json(l.structure[i][k]));
    st.push_back(row);
  }
  j["structure"] = st;
  return j;
}

TwoRep tworep_from_json(const Json& j, const std::string& where) {
  LieAlgebroidModel l = algebroid_from_json(field(j, "algebroid", where), where + ".algebroid");
  int n = l.bundle.chart.dim, ra = l.bundle.rank;
  int r0 = int_field(j, "e0_rank", where);
  int r1 = int_field(j, "e1_rank", where);
  PolyMatrix partial = matrix_from_json(field(j, "partial", where), n, where + ".partial");
  std::vector<PolyMatrix> g0 = matrices_from_json(field(j, "conn0", where), n, where + ".conn0");
  std::vector<PolyMatrix> g1 = matrices_from_json(field(j, "conn1", where), n, where + ".conn1");
  const Json& cj = field(j, "curv", where);
  if (static_cast<int>(cj.size()) != ra) fail(where + ".curv", "one row per frame index");
  std::vector<std::vector<PolyMatrix>> curv;
  for (int i = 0; i < ra; ++i) {
    std::ostringstream w;
    w << where << ".curv[" << i << "]";
    curv.push_back(matrices_from_json(cj[i], n, w.str()));
    if (static_cast<int>(curv.back().size()) != ra) fail(w.str(), "one entry per frame index");
  }
  Chart chart = l.bundle.chart;
  try {
    return make_tworep(std::move(l), {chart, r0}, {chart, r1}, std::move(partial),
                       std::move(g0), std::move(g1), std::move(curv));
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

Json tworep_to_json(const TwoRep& r) {
  Json j;
  j["algebroid"] = algebroid_to_json(r.algebroid);
  j["e0_rank"] = r.e0.rank;
  j["e1_rank"] = r.e1.rank;
  j["partial"] = matrix_to_json(r.partial);
  j["conn0"] = matrices_to_json(r.conn0.gamma);
  j["conn1"] = matrices_to_json(r.conn1.gamma);
  Json curv = Json::array();
  for (const auto& row : r.curv) curv.push_back(matrices_to_json(row));
  j["curv"] = curv;
  return j;
}

std::vector<Box> regions_from_json(const Json& j, int dim, const std::string& where) {
  std::vector<Box> out;
  int idx = 0;
  for (const auto& rj : j) {
    Box b;
    if (static_cast<int>(rj.size()) != dim) {
      std::ostringstream w;
      w << where << "[" << idx << "]";
      fail(w.str(), "one interval per chart coordinate");
    }
    int c = 0;
    for (const auto& iv : rj) {
      std::ostringstream w;
      w << where << "[" << idx << "][" << c++ << "]";
      if (!iv.is_array() || iv.size() != 2) fail(w.str(), "expected [lo, hi]");
      b.bounds.push_back({ratio_from_json(iv[0], w.str()), ratio_from_json(iv[1], w.str())});
    }
    out.push_back(std::move(b));
    ++idx;
  }
  return out;
}

Json regions_to_json(const std::vector<Box>& regions) {
  Json j = Json::array();
  for (const auto& b : regions) {
    Json rj = Json::array();
    for (const auto& [lo, hi] : b.bounds) rj.push_back({ratio_to_json(lo), ratio_to_json(hi)});
    j.push_back(rj);
  }
  return j;
}

TwoManChart twoman_from_json(const Json& j, const std::string& where) {
  TwoManChart t;
  t.chart = chart_from_json(field(j, "chart", where), where + ".chart");
  t.m = int_field(j, "m", where);
  t.n2 = int_field(j, "n2", where);
  t.regions = regions_from_json(field(j, "regions", where), t.chart.dim, where + ".regions");
  for (const auto& trj : field(j, "transitions", where)) {
    int to = int_field(trj, "to", where + ".transitions");
    int from = int_field(trj, "from", where + ".transitions");
    std::ostringstream w;
    w << where << ".transitions[" << to << "<-" << from << "]";
    TwoManChart::Transition tr;
    tr.omega = matrix_from_json(field(trj, "omega", w.str()), t.chart.dim, w.str() + ".omega");
    tr.psi = matrix_from_json(field(trj, "psi", w.str()), t.chart.dim, w.str() + ".psi");
    tr.rho = matrices_from_json(field(trj, "rho", w.str()), t.chart.dim, w.str() + ".rho");
    t.transitions[{to, from}] = std::move(tr);
  }
  if (j.contains("triples"))
    for (const auto& tri : j["triples"])
      t.triples.push_back({tri[0].get<int>(), tri[1].get<int>(), tri[2].get<int>()});
  return t;
}

Json twoman_to_json(const TwoManChart& t) {
  Json j;
  j["chart"] = chart_to_json(t.chart);
  j["m"] = t.m;
  j["n2"] = t.n2;
  j["regions"] = regions_to_json(t.regions);
  Json trs = Json::array();
  for (const auto& [key, tr] : t.transitions) {
    Json trj;
    trj["to"] = key.first;
    trj["from"] = key.second;
    trj["omega"] = matrix_to_json(tr.omega);
    trj["psi"] = matrix_to_json(tr.psi);
    trj["rho"] = matrices_to_json(tr.rho);
    trs.push_back(trj);
  }
  j["transitions"] = trs;
  Json tris = Json::array();
  for (const auto& tri : t.triples) tris.push_back({tri[0], tri[1], tri[2]});
  j["triples"] = tris;
  return j;
}

DorfmanConnection dorfman_from_json(const Json& j, const std::string& where) {
  PontryaginModel m;
  m.chart = chart_from_json(field(j, "chart", where), where + ".chart");
  m.e_rank = int_field(j, "e_rank", where);
  const Json& fj = field(j, "free", where);
  if (static_cast<int>(fj.size()) != m.q_rank())
    fail(where + ".free", "one row per side frame element");
  std::vector<std::vector<PolyVec>> free;
  for (int i = 0; i < m.q_rank(); ++i) {
    std::vector<PolyVec> row;
    if (static_cast<int>(fj[i].size()) != m.e_rank)
      fail(where + ".free", "one entry per dual frame element");
    for (int k = 0; k < m.e_rank; ++k) {
      std::ostringstream w;
      w << where << ".free[" << i << "][" << k << "]";
      PolyVec v = vector_from_json(fj[i][k], m.chart.dim, w.str());
      if (static_cast<int>(v.size()) != m.t_rank())
        fail(w.str(), "entry length must match the dual frame");
      row.push_back(std::move(v));
    }
    free.push_back(std::move(row));
  }
  return DorfmanConnection::from_free_part(m, std::move(free));
}

Json dorfman_to_json(const DorfmanConnection& d) {
  Json j;
  j["chart"] = chart_to_json(d.model().chart);
  j["e_rank"] = d.model().e_rank;
  Json fj = Json::array();
  for (int i = 0; i < d.model().q_rank(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < d.model().e_rank; ++k)
      row.push_back(vector_to_json(d.frame_value(i, k)));
    fj.push_back(row);
  }
  j["free"] = fj;
  return j;
}

}  // namespace

Json poly_to_json(const Poly& p) {
  Json terms = Json::array();
  for (const auto& [mono, coeff] : p.terms()) {
    Json t = Json::array();
    Json exps = Json::array();
    for (auto e : mono) exps.push_back(e);
    t.push_back(exps);
    t.push_back(to_string(Ratio(numerator(coeff))));
    t.push_back(to_string(Ratio(denominator(coeff))));
    terms.push_back(t);
  }
  return terms;
}

Poly poly_from_json(const Json& j, int n_vars, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a term list");
  Poly p(n_vars);
  int idx = 0;
  for (const auto& t : j) {
    std::ostringstream w;
    w << where << "[" << idx++ << "]";
    if (!t.is_array() || t.size() != 3)
      fail(w.str(), "expected [exponents, numerator, denominator]");
    Mono mono;
    for (const auto& e : t[0]) {
      if (!e.is_number_integer() || e.get<long long>() < 0)
        fail(w.str(), "exponents must be nonnegative integers");
      mono.push_back(static_cast<std::uint32_t>(e.get<long long>()));
    }
    if (static_cast<int>(mono.size()) != n_vars)
      fail(w.str(), "exponent vector length must equal the variable count");
    Ratio num = ratio_from_json(t[1], w.str());
    Ratio den = ratio_from_json(t[2], w.str());
    if (denominator(num) != 1 || denominator(den) != 1)
      fail(w.str(), "numerator and denominator must be integers");
    if (den == 0) fail(w.str(), "zero denominator");
    p.add_term(mono, num / den);
  }
  return p;
}

Json matrix_to_json(const PolyMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json entries = Json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) entries.push_back(poly_to_json(m.at(r, c)));
  j["entries"] = entries;
  return j;
}

Json cube_to_json(const PolyCube& c) {
  Json j;
  j["d0"] = c.d0();
  j["d1"] = c.d1();
  j["d2"] = c.d2();
  Json entries = Json::array();
  for (int i = 0; i < c.d0(); ++i)
    for (int k = 0; k < c.d1(); ++k)
      for (int l = 0; l < c.d2(); ++l) entries.push_back(poly_to_json(c.at(i, k, l)));
  j["entries"] = entries;
  return j;
}

Json atlas_to_json(const DVBAtlas& a) {
  Json j;
  j["chart"] = chart_to_json(a.chart);
  j["m1"] = a.m1;
  j["m2"] = a.m2;
  j["m0"] = a.m0;
  j["regions"] = regions_to_json(a.regions);
  Json trs = Json::array();
  for (const auto& [key, tr] : a.transitions) {
    Json trj;
    trj["to"] = key.first;
    trj["from"] = key.second;
    trj["a1"] = matrix_to_json(tr.a1);
    trj["a2"] = matrix_to_json(tr.a2);
    trj["a0"] = matrix_to_json(tr.a0);
    trj["mix"] = cube_to_json(tr.mix);
    trs.push_back(trj);
  }
  j["transitions"] = trs;
  Json tris = Json::array();
  for (const auto& tri : a.triples) tris.push_back({tri[0], tri[1], tri[2]});
  j["triples"] = tris;
  return j;
}

Instance parse_instance_json(const Json& j) {
  if (!j.is_object()) throw SerializeError("instance: expected an object");
  std::string format = field(j, "format", "instance").get<std::string>();
  if (format != "dvbkit/1") fail("instance.format", "unsupported format '" + format + "'");
  Instance inst;
  inst.kind = field(j, "kind", "instance").get<std::string>();
  const Json& p = field(j, "payload", "instance");
  const std::string where = "payload";
  if (inst.kind == "lie-algebroid") {
    inst.algebroid = algebroid_from_json(p, where);
    if (p.contains("tm_connection")) {
      auto gamma = matrices_from_json(p["tm_connection"], inst.algebroid->bundle.chart.dim,
                                      where + ".tm_connection");
      inst.tm_connection = tm_connection(inst.algebroid->bundle, std::move(gamma));
    }
  } else if (inst.kind == "tworep") {
    inst.rep = tworep_from_json(p, where);
  } else if (inst.kind == "metric-dvb") {
    Chart chart = chart_from_json(field(p, "chart", where), where + ".chart");
    int rq = int_field(p, "rank_q", where);
    int rb = int_field(p, "rank_b", where);
    PolyCube lambda = cube_from_json(field(p, "lambda", where), chart.dim, where + ".lambda");
    try {
      inst.metric = make_metric_dvb(chart, rq, rb, std::move(lambda));
    } catch (const std::invalid_argument& e) {
      fail(where, e.what());
    }
  } else if (inst.kind == "involutive-dvb") {
    Chart chart = chart_from_json(field(p, "chart", where), where + ".chart");
    int rq = int_field(p, "rank_q", where);
    int rb = int_field(p, "rank_b", where);
    PolyCube kappa = cube_from_json(field(p, "kappa", where), chart.dim, where + ".kappa");
    try {
      inst.involutive = make_involutive_dvb(chart, rq, rb, std::move(kappa));
    } catch (const std::invalid_argument& e) {
      fail(where, e.what());
    }
  } else if (inst.kind == "two-man-atlas") {
    inst.twoman = twoman_from_json(p, where);
  } else if (inst.kind == "dorfman") {
    inst.dorfman = dorfman_from_json(p, where);
    if (p.contains("algebroid"))
      inst.algebroid = algebroid_from_json(p["algebroid"], where + ".algebroid");
  } else if (inst.kind == "poisson2") {
    inst.rep = tworep_from_json(field(p, "tworep", where), where + ".tworep");
    if (p.contains("degree_cap")) inst.degree_cap = p["degree_cap"].get<int>();
  } else {
    fail("instance.kind", "unknown kind '" + inst.kind + "'");
  }
  return inst;
}

Instance parse_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SerializeError("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw SerializeError(path + ": " + e.what());
  }
  return parse_instance_json(j);
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["format"] = "dvbkit/1";
  j["kind"] = inst.kind;
  Json p;
  if (inst.kind == "lie-algebroid") {
    p = algebroid_to_json(*inst.algebroid);
    if (inst.tm_connection) p["tm_connection"] = matrices_to_json(inst.tm_connection->gamma);
  } else if (inst.kind == "tworep") {
    p = tworep_to_json(*inst.rep);
  } else if (inst.kind == "metric-dvb") {
    p["chart"] = chart_to_json(inst.metric->host.chart);
    p["rank_q"] = inst.metric->host.side_a.rank;
    p["rank_b"] = inst.metric->host.side_b.rank;
    p["lambda"] = cube_to_json(inst.metric->lambda);
  } else if (inst.kind == "involutive-dvb") {
    p["chart"] = chart_to_json(inst.involutive->host.chart);
    p["rank_q"] = inst.involutive->host.side_a.rank;
    p["rank_b"] = inst.involutive->host.core.rank;
    p["kappa"] = cube_to_json(inst.involutive->kappa);
  } else if (inst.kind == "two-man-atlas") {
    p = twoman_to_json(*inst.twoman);
  } else if (inst.kind == "dorfman") {
    p = dorfman_to_json(*inst.dorfman);
    if (inst.algebroid) p["algebroid"] = algebroid_to_json(*inst.algebroid);
  } else if (inst.kind == "poisson2") {
    p["tworep"] = tworep_to_json(*inst.rep);
    p["degree_cap"] = inst.degree_cap;
  } else {
    throw SerializeError("instance_to_json: unknown kind '" + inst.kind + "'");
  }
  j["payload"] = p;
  return j;
}

void write_instance(const std::string& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw SerializeError("cannot write '" + path + "'");
  out << instance_to_json(inst).dump(2) << "\n";
}

}  // namespace dvbkit
