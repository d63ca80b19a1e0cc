#include "dvbkit/dvb.hpp"

#include <sstream>
#include <stdexcept>

namespace dvbkit {

namespace {
Ratio dot_rat(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("pairing: lengths");
  Ratio r(0);
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}
}  // namespace

LinearSection apply_change_of_splitting(const DecomposedDVB& d,
                                        const LinearSection& s,
                                        const SplittingChange& change) {
  const PolyCube& phi = change.phi;
  int ra = d.side_a.rank, rb = d.side_b.rank, rc = d.core.rank;
  if (phi.d0() != ra || phi.d1() != rb || phi.d2() != rc)
    throw std::invalid_argument("apply_change_of_splitting: tensor shape");
  LinearSection out = s;
  if (s.over == Side::B) {
    // sigma^1_A(a) = sigma^2_A(a) + ~phi(a): the core part gains phi(a).
    if (static_cast<int>(s.base.size()) != ra ||
        s.core_part.rows() != rc || s.core_part.cols() != rb)
      throw std::invalid_argument("apply_change_of_splitting: section shape");
    for (int k = 0; k < rc; ++k)
      for (int j = 0; j < rb; ++j)
        for (int i = 0; i < ra; ++i)
          out.core_part.at(k, j) += s.base[i] * phi.at(i, j, k);
  } else {
    // Same tensor with the side slots swapped.
    if (static_cast<int>(s.base.size()) != rb ||
        s.core_part.rows() != rc || s.core_part.cols() != ra)
      throw std::invalid_argument("apply_change_of_splitting: section shape");
    for (int k = 0; k < rc; ++k)
      for (int i = 0; i < ra; ++i)
        for (int j = 0; j < rb; ++j)
          out.core_part.at(k, i) += s.base[j] * phi.at(i, j, k);
  }
  return out;
}

std::pair<RatVec, RatVec> section_value(const DecomposedDVB& d,
                                        const LinearSection& s,
                                        const RatVec& base_point,
                                        const RatVec& fiber_point) {
  int expect = s.over == Side::B ? d.side_b.rank : d.side_a.rank;
  if (static_cast<int>(fiber_point.size()) != expect)
    throw std::invalid_argument("section_value: fiber dimension");
  RatVec base_part(s.base.size());
  for (std::size_t i = 0; i < s.base.size(); ++i)
    base_part[i] = s.base[i].eval(base_point);
  RatVec core_part(s.core_part.rows(), Ratio(0));
  for (int k = 0; k < s.core_part.rows(); ++k) {
    Ratio acc(0);
    for (int j = 0; j < s.core_part.cols(); ++j)
      acc += s.core_part.at(k, j).eval(base_point) * fiber_point[j];
    core_part[k] = acc;
  }
  return {base_part, core_part};
}

DecomposedDVB dualize_decomposed(const DecomposedDVB& d, Side over) {
  DecomposedDVB out;
  out.chart = d.chart;
  if (over == Side::A) {
    out.side_a = d.side_a;
    out.side_b = {d.chart, d.core.rank};   // C*
    out.core = {d.chart, d.side_b.rank};   // B*
  } else {
    out.side_a = {d.chart, d.core.rank};   // C*
    out.side_b = d.side_b;
    out.core = {d.chart, d.side_a.rank};   // A*
  }
  return out;
}

Ratio pair_over_a(const DualAPoint& phi, const DVBPoint& d) {
  if (phi.base != d.base || phi.a != d.a)
    throw std::invalid_argument("pair_over_a: projection mismatch");
  return dot_rat(phi.gamma, d.c) + dot_rat(phi.beta, d.b);
}

Ratio pair_over_b(const DualBPoint& psi, const DVBPoint& d) {
  if (psi.base != d.base || psi.b != d.b)
    throw std::invalid_argument("pair_over_b: projection mismatch");
  return dot_rat(psi.gamma, d.c) + dot_rat(psi.alpha, d.a);
}

Ratio canonical_pair(const DualAPoint& phi, const DualBPoint& psi, const DVBPoint& d) {
  if (phi.base != psi.base || phi.gamma != psi.gamma)
    throw std::invalid_argument("canonical_pair: C*-projection mismatch");
  return pair_over_a(phi, d) - pair_over_b(psi, d);
}

DVBTransition identity_transition(int m1, int m2, int m0, int n_vars) {
  return {PolyMatrix::identity(m1, n_vars), PolyMatrix::identity(m2, n_vars),
          PolyMatrix::identity(m0, n_vars), PolyCube(m0, m1, m2, n_vars)};
}

DVBTransition compose_transitions(const DVBTransition& ab, const DVBTransition& bc) {
  DVBTransition r;
  r.a1 = ab.a1 * bc.a1;
  r.a2 = ab.a2 * bc.a2;
  r.a0 = ab.a0 * bc.a0;
  // mix^{ac}(v1, v2) = A0^{ab} mix^{bc}(v1, v2) + mix^{ab}(A1^{bc} v1, A2^{bc} v2)
  int m0 = ab.a0.rows(), m1 = bc.a1.cols(), m2 = bc.a2.cols();
  int nv = ab.a0.n_vars();
  r.mix = PolyCube(m0, m1, m2, nv);
  for (int k = 0; k < m0; ++k)
    for (int i = 0; i < m1; ++i)
      for (int j = 0; j < m2; ++j) {
        Poly acc(nv);
        for (int l = 0; l < m0; ++l) acc += ab.a0.at(k, l) * bc.mix.at(l, i, j);
        for (int p = 0; p < ab.mix.d1(); ++p)
          for (int q = 0; q < ab.mix.d2(); ++q)
            acc += ab.mix.at(k, p, q) * bc.a1.at(p, i) * bc.a2.at(q, j);
        r.mix.at(k, i, j) = acc;
      }
  return r;
}

bool transitions_equal(const DVBTransition& s, const DVBTransition& t) {
  return s.a1 == t.a1 && s.a2 == t.a2 && s.a0 == t.a0 && s.mix == t.mix;
}

namespace {
const DVBTransition& lookup(const DVBAtlas& atlas, int to, int from) {
  auto it = atlas.transitions.find({to, from});
  if (it == atlas.transitions.end()) {
    std::ostringstream os;
    os << "check_atlas: missing transition " << to << "<-" << from
       << " for a declared overlap";
    throw std::invalid_argument(os.str());
  }
  return it->second;
}
}  // namespace

Report check_atlas(const DVBAtlas& atlas) {
  Report rep{"dvb-atlas"};
  int nc = static_cast<int>(atlas.regions.size());
  for (const auto& [key, t] : atlas.transitions) {
    if (key.first < 0 || key.first >= nc || key.second < 0 || key.second >= nc)
      throw std::invalid_argument("check_atlas: transition indices out of range");
    std::ostringstream name;
    name << "unit-det(" << key.first << "<-" << key.second << ")";
    bool ok = t.a1.has_unit_det() && t.a2.has_unit_det() && t.a0.has_unit_det();
    rep.add(name.str(), ok);
  }
  // Pairwise: T^{ab} o T^{ba} = id.
  for (const auto& [key, t] : atlas.transitions) {
    if (key.first >= key.second) continue;
    const DVBTransition& back = lookup(atlas, key.second, key.first);
    DVBTransition round = compose_transitions(t, back);
    DVBTransition id = identity_transition(atlas.m1, atlas.m2, atlas.m0,
                                           atlas.chart.dim);
    std::ostringstream name;
    name << "pair-inverse(" << key.first << "," << key.second << ")";
    rep.add(name.str(), transitions_equal(round, id));
  }
  // Triples: T^{ca} = T^{cb} o T^{ba} on each declared (a, b, c).
  for (const auto& tri : atlas.triples) {
    int a = tri[0], b = tri[1], c = tri[2];
    const DVBTransition& ca = lookup(atlas, c, a);
    const DVBTransition& cb = lookup(atlas, c, b);
    const DVBTransition& ba = lookup(atlas, b, a);
    DVBTransition composite = compose_transitions(cb, ba);
    std::ostringstream name;
    name << "cocycle(" << a << "," << b << "," << c << ")";
    bool ok = transitions_equal(ca, composite);
    std::string detail;
    if (!ok) {
      std::ostringstream os;
      os << "transition " << c << "<-" << a << " differs from composite via " << b;
      detail = os.str();
    }
    rep.add(name.str(), ok, detail);
  }
  return rep;
}

}  // namespace dvbkit
