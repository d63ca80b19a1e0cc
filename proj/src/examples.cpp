#include "dvbkit/examples.hpp"

#include <sstream>
#include <stdexcept>

namespace dvbkit {

namespace {
void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}
}  // namespace

Ratio pontryagin_frame_pairing(const PontryaginModel& m, int i, int j) {
  int n = m.chart.dim, r = m.e_rank;
  if (i < n) return j >= r && (j - r) == i ? Ratio(1) : Ratio(0);
  return j < r && (i - n) == j ? Ratio(1) : Ratio(0);
}

Poly pontryagin_pairing(const PontryaginModel& m, const PolyVec& q, const PolyVec& t) {
  int nv = q.empty() ? m.chart.dim : q[0].n_vars();
  Poly acc(nv);
  for (int i = 0; i < m.q_rank(); ++i)
    for (int j = 0; j < m.t_rank(); ++j) {
      Ratio p = pontryagin_frame_pairing(m, i, j);
      if (p != 0) acc += q[i] * t[j] * p;
    }
  return acc;
}

PolyVec q_projection(const PontryaginModel& m, const PolyVec& q) {
  return PolyVec(q.begin(), q.begin() + m.chart.dim);
}

PolyVec exact_t_section(const PontryaginModel& m, const Poly& f) {
  int n = m.chart.dim, r = m.e_rank;
  PolyVec t = zero_vec(f.n_vars(), m.t_rank());
  for (int u = 0; u < n; ++u) t[r + u] = f.diff(u);
  return t;
}

DorfmanConnection DorfmanConnection::from_free_part(
    const PontryaginModel& m, std::vector<std::vector<PolyVec>> free) {
  int n = m.chart.dim, r = m.e_rank;
  require(static_cast<int>(free.size()) == m.q_rank(),
          "DorfmanConnection: one row per q-frame element");
  DorfmanConnection d;
  d.model_ = m;
  d.table_.assign(m.q_rank(),
                  std::vector<PolyVec>(m.t_rank(), zero_vec(n, m.t_rank())));
  for (int i = 0; i < m.q_rank(); ++i) {
    require(static_cast<int>(free[i].size()) == r,
            "DorfmanConnection: free part covers the E-frame columns");
    for (int j = 0; j < r; ++j) {
      require(static_cast<int>(free[i][j].size()) == m.t_rank(),
              "DorfmanConnection: entry length");
      d.table_[i][j] = free[i][j];
    }
    // Entries on exact covector frames are forced by the exactness axiom;
    // frame anchors are constant, so they vanish.
  }
  return d;
}

PolyVec DorfmanConnection::apply(const PolyVec& q, const PolyVec& t) const {
  const PontryaginModel& m = model_;
  int n = m.chart.dim;
  require(static_cast<int>(q.size()) == m.q_rank() &&
              static_cast<int>(t.size()) == m.t_rank(),
          "DorfmanConnection::apply: section shapes");
  PolyVec out = zero_vec(n, m.t_rank());
  for (int i = 0; i < m.q_rank(); ++i) {
    if (q[i].is_zero()) continue;
    // Delta over the i-th frame element applied to t (module rule in tau).
    PolyVec frame_part = zero_vec(n, m.t_rank());
    for (int j = 0; j < m.t_rank(); ++j) {
      if (!t[j].is_zero()) frame_part = frame_part + (t[j] * table_[i][j]);
      if (i < n) frame_part[j] += t[j].diff(i);
    }
    out = out + (q[i] * frame_part);
    // Anchor rule in the q slot: Delta_{f q} tau = f Delta_q tau + <q, tau>(0, df).
    PolyVec unit_q = zero_vec(n, m.q_rank());
    unit_q[i] = Poly::constant(n, Ratio(1));
    Poly pair = pontryagin_pairing(m, unit_q, t);
    if (!pair.is_zero()) out = out + (pair * exact_t_section(m, q[i]));
  }
  return out;
}

Report DorfmanConnection::verify_axioms(std::uint64_t seed) const {
  Report rep{"dorfman-axioms"};
  const PontryaginModel& m = model_;
  int n = m.chart.dim;
  RatRng rng(seed);
  for (int trial = 0; trial < 3; ++trial) {
    PolyVec q(m.q_rank()), t(m.t_rank());
    for (auto& c : q) c = random_poly(rng, n, 1, 2);
    for (auto& c : t) c = random_poly(rng, n, 1, 2);
    Poly f = random_poly(rng, n, 2, 3);
    PolyVec prq = q_projection(m, q);

    PolyVec lhs1 = apply(q, f * t);
    PolyVec rhs1 = (f * apply(q, t)) + (vf_apply(prq, f) * t);
    std::ostringstream n1;
    n1 << "module-rule-in-tau[" << trial << "]";
    rep.add(n1.str(), is_zero(lhs1 - rhs1));

    PolyVec lhs2 = apply(f * q, t);
    PolyVec rhs2 = (f * apply(q, t)) +
                   (pontryagin_pairing(m, q, t) * exact_t_section(m, f));
    std::ostringstream n2;
    n2 << "anchor-rule-in-q[" << trial << "]";
    rep.add(n2.str(), is_zero(lhs2 - rhs2));

    PolyVec lhs3 = apply(q, exact_t_section(m, f));
    PolyVec rhs3 = exact_t_section(m, vf_apply(prq, f));
    std::ostringstream n3;
    n3 << "exactness[" << trial << "]";
    rep.add(n3.str(), is_zero(lhs3 - rhs3));
  }
  return rep;
}

PolyVec DullBracket::apply(const PolyVec& q1, const PolyVec& q2) const {
  int n = model.chart.dim;
  PolyVec out = zero_vec(n, model.q_rank());
  PolyVec pr1 = q_projection(model, q1);
  PolyVec pr2 = q_projection(model, q2);
  for (int i = 0; i < model.q_rank(); ++i)
    for (int j = 0; j < model.q_rank(); ++j)
      out = out + ((q1[i] * q2[j]) * table[i][j]);
  for (int k = 0; k < model.q_rank(); ++k) {
    out[k] += vf_apply(pr1, q2[k]);
    out[k] -= vf_apply(pr2, q1[k]);
  }
  return out;
}

Report check_dull(const DullBracket& b) {
  Report rep{"dull-bracket"};
  const PontryaginModel& m = b.model;
  int n = m.chart.dim;
  rep.add("shapes", static_cast<int>(b.table.size()) == m.q_rank());
  // Anchor condition on frames: the TM part of a frame bracket must match
  // the (vanishing) bracket of the constant frame anchors.
  bool anchor_ok = true;
  for (int i = 0; i < m.q_rank() && anchor_ok; ++i)
    for (int j = 0; j < m.q_rank() && anchor_ok; ++j)
      for (int u = 0; u < n; ++u)
        if (!b.table[i][j][u].is_zero()) {
          anchor_ok = false;
          break;
        }
  rep.add("anchor-condition", anchor_ok);
  return rep;
}

bool dull_is_skew(const DullBracket& b) {
  for (int i = 0; i < b.model.q_rank(); ++i)
    for (int j = 0; j <= i; ++j)
      if (!is_zero(b.table[i][j] + b.table[j][i])) return false;
  return true;
}

DullBracket dorfman_dull_duality(const DorfmanConnection& d) {
  const PontryaginModel& m = d.model();
  int n = m.chart.dim, r = m.e_rank;
  DullBracket b;
  b.model = m;
  b.table.assign(m.q_rank(),
                 std::vector<PolyVec>(m.q_rank(), zero_vec(n, m.q_rank())));
  for (int i = 0; i < m.q_rank(); ++i)
    for (int j = 0; j < m.q_rank(); ++j) {
      // <[[q_i, q_j]], t_k> = pr(q_i)<q_j, t_k> - <q_j, Delta_{q_i} t_k>;
      // frame pairings are constant, so only the second term survives.
      PolyVec out = zero_vec(n, m.q_rank());
      for (int k = 0; k < m.t_rank(); ++k) {
        Poly val(n);
        const PolyVec& dv = d.frame_value(i, k);
        for (int l = 0; l < m.t_rank(); ++l) {
          Ratio p = pontryagin_frame_pairing(m, j, l);
          if (p != 0) val -= dv[l] * p;
        }
        // The component dual to t-frame k.
        if (k < r)
          out[n + k] += val;
        else
          out[k - r] += val;
      }
      b.table[i][j] = out;
    }
  return b;
}

DorfmanConnection dull_to_dorfman(const DullBracket& b) {
  const PontryaginModel& m = b.model;
  int n = m.chart.dim, r = m.e_rank;
  std::vector<std::vector<PolyVec>> free(
      m.q_rank(), std::vector<PolyVec>(r, zero_vec(n, m.t_rank())));
  for (int i = 0; i < m.q_rank(); ++i)
    for (int j = 0; j < r; ++j) {
      // <q_l, Delta_{q_i} e_j> = -<[[q_i, q_l]], e_j> on frames; recover the
      // t-section through the pairing.
      PolyVec t = zero_vec(n, m.t_rank());
      for (int l = 0; l < m.q_rank(); ++l) {
        Poly val = -b.table[i][l][n + j];
        if (l < n)
          t[r + l] += val;
        else
          t[l - n] += val;
      }
      free[i][j] = t;
    }
  return DorfmanConnection::from_free_part(m, std::move(free));
}

Report pontryagin_pairing_check(const DorfmanConnection& d) {
  Report rep{"pontryagin-pairing"};
  const PontryaginModel& m = d.model();
  int n = m.chart.dim, r = m.e_rank;
  int nv = n + r;  // functions on the total space of E
  auto y = [&](int k) { return Poly::var(nv, n + k); };

  // Elements of the Pontryagin bundle over E, written as a vector field and
  // a one-form with polynomial components.
  struct PontElement {
    PolyVec dx, dy, px, py;
  };
  auto sigma = [&](int i) {
    PontElement e{zero_vec(nv, n), zero_vec(nv, r), zero_vec(nv, n), zero_vec(nv, r)};
    if (i < n) e.dx[i] = Poly::constant(nv, Ratio(1));
    if (i >= n) e.py[i - n] = Poly::constant(nv, Ratio(1));
    for (int j = 0; j < r; ++j) {
      const PolyVec& core = d.frame_value(i, j);
      for (int k = 0; k < r; ++k) e.dy[k] -= y(j) * core[k].promote(nv, 0);
      for (int u = 0; u < n; ++u) e.px[u] -= y(j) * core[r + u].promote(nv, 0);
    }
    return e;
  };
  auto core_elt = [&](int j) {
    PontElement e{zero_vec(nv, n), zero_vec(nv, r), zero_vec(nv, n), zero_vec(nv, r)};
    if (j < r)
      e.dy[j] = Poly::constant(nv, Ratio(1));
    else
      e.px[j - r] = Poly::constant(nv, Ratio(1));
    return e;
  };
  auto pair = [&](const PontElement& a, const PontElement& b) {
    return dot(a.px, b.dx) + dot(a.py, b.dy) + dot(b.px, a.dx) + dot(b.py, a.dy);
  };

  DullBracket dull = dorfman_dull_duality(d);
  for (int i = 0; i < m.q_rank(); ++i)
    for (int j = 0; j < m.q_rank(); ++j) {
      PolyVec sum = dull.table[i][j] + dull.table[j][i];
      std::ostringstream name;
      name << "lift-pairing(" << i << "," << j << ")";
      bool tm_zero = true;
      for (int u = 0; u < n; ++u)
        if (!sum[u].is_zero()) tm_zero = false;
      Poly expect(nv);
      for (int k = 0; k < r; ++k) expect += sum[n + k].promote(nv, 0) * y(k);
      rep.add(name.str(), tm_zero && (pair(sigma(i), sigma(j)) - expect).is_zero());
    }
  for (int i = 0; i < m.q_rank(); ++i)
    for (int j = 0; j < m.t_rank(); ++j) {
      std::ostringstream name;
      name << "lift-core-pairing(" << i << "," << j << ")";
      Poly expect = Poly::constant(nv, pontryagin_frame_pairing(m, i, j));
      rep.add(name.str(), (pair(sigma(i), core_elt(j)) - expect).is_zero());
    }
  bool cores_isotropic = true;
  for (int i = 0; i < m.t_rank() && cores_isotropic; ++i)
    for (int j = 0; j < m.t_rank(); ++j)
      if (!pair(core_elt(i), core_elt(j)).is_zero()) {
        cores_isotropic = false;
        break;
      }
  rep.add("core-pairing-vanishes", cores_isotropic);
  return rep;
}

PolyCube pontryagin_lambda(const DorfmanConnection& d) {
  const PontryaginModel& m = d.model();
  int n = m.chart.dim, r = m.e_rank;
  DullBracket dull = dorfman_dull_duality(d);
  PolyCube lambda(m.q_rank(), m.q_rank(), r, n);
  for (int i = 0; i < m.q_rank(); ++i)
    for (int j = 0; j < m.q_rank(); ++j) {
      PolyVec sum = dull.table[i][j] + dull.table[j][i];
      for (int k = 0; k < r; ++k) lambda.at(i, j, k) = sum[n + k];
    }
  return lambda;
}

TwoRep basic_tworep(const LieAlgebroidModel& l, const DorfmanConnection& d) {
  const PontryaginModel& m = d.model();
  require(m.e_rank == l.bundle.rank && m.chart == l.bundle.chart,
          "basic_tworep: Dorfman model must sit over the algebroid bundle");
  int n = m.chart.dim, r = m.e_rank;
  int rq = m.q_rank(), rt = m.t_rank();

  // (rho, rho*): A (+) T*M -> TM (+) A*.
  auto pair_map = [&](const PolyVec& t) {
    PolyVec q = zero_vec(n, rq);
    for (int u = 0; u < n; ++u)
      for (int k = 0; k < r; ++k) q[u] += l.anchor.at(k, u) * t[k];
    for (int i = 0; i < r; ++i)
      for (int u = 0; u < n; ++u) q[n + i] += l.anchor.at(i, u) * t[r + u];
    return q;
  };
  // Omega_{(X, alpha)} a = Delta_{(X, alpha)}(a, 0) - (0, d<alpha, a>).
  auto omega = [&](const PolyVec& q, const PolyVec& a) {
    PolyVec t = zero_vec(n, rt);
    for (int k = 0; k < r; ++k) t[k] = a[k];
    PolyVec out = d.apply(q, t);
    Poly pairing(n);
    for (int k = 0; k < r; ++k) pairing += q[n + k] * a[k];
    return out - exact_t_section(m, pairing);
  };
  auto lie_t = [&](const PolyVec& a, const PolyVec& t) {
    // ([a, b], L_{rho(a)} theta).
    PolyVec b(t.begin(), t.begin() + r);
    PolyVec theta(t.begin() + r, t.end());
    PolyVec rho_a = algebroid_anchor(l, a);
    PolyVec br = algebroid_bracket(l, a, b);
    PolyVec out = zero_vec(n, rt);
    for (int k = 0; k < r; ++k) out[k] = br[k];
    for (int u = 0; u < n; ++u) {
      Poly acc = vf_apply(rho_a, theta[u]);
      for (int v = 0; v < n; ++v) acc += theta[v] * rho_a[v].diff(u);
      out[r + u] = acc;
    }
    return out;
  };
  auto lie_q = [&](const PolyVec& a, const PolyVec& q) {
    // ([rho(a), X], L_a alpha), <L_a alpha, b> = rho(a)<alpha, b> - <alpha, [a, b]>.
    PolyVec x(q.begin(), q.begin() + n);
    PolyVec alpha(q.begin() + n, q.end());
    PolyVec rho_a = algebroid_anchor(l, a);
    PolyVec out = zero_vec(n, rq);
    PolyVec xb = vf_bracket(rho_a, x);
    for (int u = 0; u < n; ++u) out[u] = xb[u];
    for (int k = 0; k < r; ++k) {
      PolyVec frame = zero_vec(n, r);
      frame[k] = Poly::constant(n, Ratio(1));
      Poly acc = vf_apply(rho_a, alpha[k]);
      PolyVec br = algebroid_bracket(l, a, frame);
      for (int mth = 0; mth < r; ++mth) acc -= alpha[mth] * br[mth];
      out[n + k] = acc;
    }
    return out;
  };
  auto a_frame = [&](int i) {
    PolyVec a = zero_vec(n, r);
    a[i] = Poly::constant(n, Ratio(1));
    return a;
  };
  auto q_frame = [&](int u) {
    PolyVec q = zero_vec(n, rq);
    q[u] = Poly::constant(n, Ratio(1));
    return q;
  };
  auto t_frame = [&](int j) {
    PolyVec t = zero_vec(n, rt);
    t[j] = Poly::constant(n, Ratio(1));
    return t;
  };

  auto nabla_t = [&](const PolyVec& a, const PolyVec& t) {
    return omega(pair_map(t), a) + lie_t(a, t);
  };
  auto nabla_q = [&](const PolyVec& a, const PolyVec& q) {
    return pair_map(omega(q, a)) + lie_q(a, q);
  };

  std::vector<PolyMatrix> gamma0(r, PolyMatrix(rt, rt, n));
  std::vector<PolyMatrix> gamma1(r, PolyMatrix(rq, rq, n));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < rt; ++j) {
      PolyVec col = nabla_t(a_frame(i), t_frame(j));
      for (int k = 0; k < rt; ++k) gamma0[i].at(k, j) = col[k];
    }
    for (int u = 0; u < rq; ++u) {
      PolyVec col = nabla_q(a_frame(i), q_frame(u));
      for (int k = 0; k < rq; ++k) gamma1[i].at(k, u) = col[k];
    }
  }

  PolyMatrix partial(rq, rt, n);
  for (int j = 0; j < rt; ++j) {
    PolyVec col = pair_map(t_frame(j));
    for (int k = 0; k < rq; ++k) partial.at(k, j) = col[k];
  }

  std::vector<std::vector<PolyMatrix>> curv(
      r, std::vector<PolyMatrix>(r, PolyMatrix(rt, rq, n)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      PolyVec ai = a_frame(i), aj = a_frame(j);
      PolyVec bracket_ij = algebroid_bracket(l, ai, aj);
      for (int u = 0; u < rq; ++u) {
        PolyVec qf = q_frame(u);
        PolyVec col = zero_vec(n, rt) - omega(qf, bracket_ij);
        col = col + lie_t(ai, omega(qf, aj));
        col = col - lie_t(aj, omega(qf, ai));
        col = col + omega(nabla_q(aj, qf), ai);
        col = col - omega(nabla_q(ai, qf), aj);
        for (int k = 0; k < rt; ++k) curv[i][j].at(k, u) = col[k];
      }
    }

  return make_tworep(l, {m.chart, rt}, {m.chart, rq}, std::move(partial),
                     std::move(gamma0), std::move(gamma1), std::move(curv));
}

PolyMatrix basic_selfdual_identification(const LieAlgebroidModel& l) {
  int n = l.bundle.chart.dim, r = l.bundle.rank;
  PolyMatrix j(n + r, r + n, n);
  for (int u = 0; u < n; ++u) j.at(u, r + u) = Poly::constant(n, Ratio(1));
  for (int k = 0; k < r; ++k) j.at(n + k, k) = Poly::constant(n, Ratio(1));
  return j;
}

Report cotangent_involution_check(const FiberMetric& g, const Connection& metric_conn,
                                  std::uint64_t seed) {
  Report rep{"cotangent-double"};
  require(metric_compatibility(metric_conn, g),
          "cotangent_involution_check: connection must be metric");
  const Chart& chart = g.bundle.chart;
  int n = chart.dim, r = g.bundle.rank;

  // Tangent double as a metric double vector bundle: sides E and TM, core
  // identified with E* through the metric; Lambda is the compatibility
  // defect of the splitting connection (zero for a metric connection).
  PolyCube lambda(r, r, n, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int u = 0; u < n; ++u) {
        Poly acc = g.g.at(i, j).diff(u);
        for (int k = 0; k < r; ++k)
          acc -= metric_conn.gamma[u].at(k, i) * g.g.at(k, j) +
                 metric_conn.gamma[u].at(k, j) * g.g.at(i, k);
        lambda.at(i, j, u) = acc;
      }
  MetricDVB tangent_double = make_metric_dvb(chart, r, n, lambda);
  InvolutiveDVB dual = metric_to_involutive(tangent_double, seed);
  rep.add("lagrangian-splitting", lambda.is_zero());
  rep.add("kappa-vanishes", dual.kappa.is_zero());

  // The reversal formula in cotangent coordinates, over [x | e1 | e2 | theta]:
  // the involution sends the element with core coordinates
  //   beta_u = theta_u + sum d_u(g e2) e1 - sum (g e2) Gamma_u e1
  // to the element built from (e2, e1, -(theta + d<e1, e2>)).
  {
    int nv = n + 2 * r + n;
    auto e1 = [&](int i) { return Poly::var(nv, n + i); };
    auto e2 = [&](int i) { return Poly::var(nv, n + r + i); };
    auto th = [&](int u) { return Poly::var(nv, n + 2 * r + u); };
    auto beta_of = [&](auto ea, auto eb, const Poly& theta_u, int u) {
      Poly acc = theta_u;
      for (int i = 0; i < r; ++i)
        for (int jj = 0; jj < r; ++jj)
          acc += g.g.at(i, jj).diff(u).promote(nv, 0) * eb(jj) * ea(i);
      for (int k = 0; k < r; ++k)
        for (int i = 0; i < r; ++i)
          for (int jj = 0; jj < r; ++jj)
            acc -= g.g.at(k, jj).promote(nv, 0) * eb(jj) *
                   metric_conn.gamma[u].at(k, i).promote(nv, 0) * ea(i);
      return acc;
    };
    bool ok = true;
    for (int u = 0; u < n && ok; ++u) {
      // Involution with kappa = 0: beta |-> -beta.
      Poly lhs = -beta_of(e1, e2, th(u), u);
      // Target coordinates: theta replaced by -(theta + d<e1, e2>) and the
      // roles of e1, e2 exchanged.
      Poly dpair(nv);
      for (int i = 0; i < r; ++i)
        for (int jj = 0; jj < r; ++jj)
          dpair += g.g.at(i, jj).diff(u).promote(nv, 0) * e1(i) * e2(jj);
      Poly rhs = beta_of(e2, e1, -th(u) - dpair, u);
      ok = (lhs - rhs).is_zero();
    }
    rep.add("reversal-formula", ok);
  }

  // Degree-2 bracket table on metric derivations, through the graded bracket.
  PoissonStructure2 p = symplectic_from_metric_bundle(g, metric_conn);
  const GradedRing& ring = p.ring;
  RatRng rng(seed);
  auto random_metric_derivation = [&]() {
    // delta = nabla_X + A with g A + A^t g = 0.
    PolyVec x(n);
    for (auto& c : x) c = random_poly(rng, n, 1, 2);
    PolyMatrix s(r, r, n);
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        Poly v = random_poly(rng, n, 1, 2);
        s.at(i, j) = v;
        s.at(j, i) = -v;
      }
    PolyMatrix a = g.g.inverse() * s;
    return std::pair<PolyVec, PolyMatrix>(x, a);
  };
  auto delta_fn = [&](const PolyVec& x, const PolyMatrix& a) {
    // The isotropic lift of the derivation: sigma_B(X) + ~W with W = -g A.
    return section_to_graded(ring, x, -(g.g * a));
  };
  auto delta_apply = [&](const PolyVec& x, const PolyMatrix& a, const PolyVec& e) {
    return connection_apply_vf(metric_conn, x, e) + a.apply(e);
  };
  auto e_fn = [&](const PolyVec& e) {
    GradedFunction acc(ring);
    for (int k = 0; k < r; ++k)
      for (int i = 0; i < r; ++i)
        acc += g.g.at(k, i) * e[i] * GradedFunction::odd_gen(ring, k);
    return acc;
  };

  auto [x1, a1] = random_metric_derivation();
  auto [x2, a2] = random_metric_derivation();
  PolyVec e1s(r), e2s(r);
  for (auto& c : e1s) c = random_poly(rng, n, 1, 2);
  for (auto& c : e2s) c = random_poly(rng, n, 1, 2);
  Poly f = random_poly(rng, n, 2, 3);

  {
    // {delta1-hat, delta2-hat} = [delta1, delta2]-hat.
    PolyVec x3 = vf_bracket(x1, x2);
    PolyMatrix a3(r, r, n);
    for (int j = 0; j < r; ++j) {
      PolyVec ej = zero_vec(n, r);
      ej[j] = Poly::constant(n, Ratio(1));
      PolyVec col = delta_apply(x1, a1, delta_apply(x2, a2, ej)) -
                    delta_apply(x2, a2, delta_apply(x1, a1, ej)) -
                    connection_apply_vf(metric_conn, x3, ej);
      for (int k = 0; k < r; ++k) a3.at(k, j) = col[k];
    }
    GradedFunction lhs = poisson_bracket(p, delta_fn(x1, a1), delta_fn(x2, a2));
    rep.add("table{delta,delta}", lhs == delta_fn(x3, a3));
  }
  rep.add("table{delta,e}",
          poisson_bracket(p, delta_fn(x1, a1), e_fn(e1s)) ==
              e_fn(delta_apply(x1, a1, e1s)));
  rep.add("table{delta,f}",
          poisson_bracket(p, delta_fn(x1, a1), GradedFunction::base(ring, f)) ==
              GradedFunction::base(ring, vf_apply(x1, f)));
  {
    Poly expect(n);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) expect += g.g.at(i, j) * e1s[i] * e2s[j];
    rep.add("table{e,e}", poisson_bracket(p, e_fn(e1s), e_fn(e2s)) ==
                              GradedFunction::base(ring, expect));
  }
  rep.add("table{e,f}",
          poisson_bracket(p, e_fn(e1s), GradedFunction::base(ring, f)).is_zero());
  rep.add("table{f,f}",
          poisson_bracket(p, GradedFunction::base(ring, f),
                          GradedFunction::base(ring, f * f)).is_zero());

  // The dual structure on the involutive side is anti-Poisson, and the
  // associated split structure is symplectic.
  LinearPoissonOnD l = dual_linear_poisson(dual, p.rep);
  rep.absorb(anti_poisson_report(l), "dual");
  rep.add("symplectic", is_symplectic(p));
  return rep;
}

}  // namespace dvbkit
