#include "dvbkit/metricdvb.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace dvbkit {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

Ratio dot_rat(const RatVec& a, const RatVec& b) {
  require(a.size() == b.size(), "pairing: lengths");
  Ratio r(0);
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

// Monomials over n variables of total degree <= d, in a fixed order.
std::vector<Mono> monomials_up_to(int n, int d) {
  std::vector<Mono> out;
  Mono cur(n, 0);
  // Iterate lexicographically with a degree cap.
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[pos] = e;
      rec(pos + 1, left - e);
    }
    cur[pos] = 0;
  };
  if (n == 0) {
    out.push_back(Mono{});
    return out;
  }
  rec(0, d);
  return out;
}

}  // namespace

MetricDVB make_metric_dvb(const Chart& chart, int rank_q, int rank_b, PolyCube lambda) {
  require(lambda.d0() == rank_q && lambda.d1() == rank_q && lambda.d2() == rank_b,
          "make_metric_dvb: Lambda shape");
  require(lambda.n_vars() == chart.dim, "make_metric_dvb: Lambda variable count");
  for (int i = 0; i < rank_q; ++i)
    for (int j = 0; j < rank_q; ++j)
      for (int b = 0; b < rank_b; ++b)
        require((lambda.at(i, j, b) - lambda.at(j, i, b)).is_zero(),
                "make_metric_dvb: Lambda must be symmetric in its Q slots");
  MetricDVB m;
  m.host = {chart, {chart, rank_q}, {chart, rank_b}, {chart, rank_q}};
  m.lambda = std::move(lambda);
  return m;
}

InvolutiveDVB make_involutive_dvb(const Chart& chart, int rank_q, int rank_b, PolyCube kappa) {
  require(kappa.d0() == rank_q && kappa.d1() == rank_q && kappa.d2() == rank_b,
          "make_involutive_dvb: kappa shape");
  require(kappa.n_vars() == chart.dim, "make_involutive_dvb: kappa variable count");
  InvolutiveDVB d;
  d.host = {chart, {chart, rank_q}, {chart, rank_q}, {chart, rank_b}};
  d.kappa = std::move(kappa);
  return d;
}

Ratio pairing_eval(const MetricDVB& m, const EPoint& e1, const EPoint& e2) {
  require(e1.base == e2.base && e1.b == e2.b,
          "pairing_eval: base and B projections must agree");
  int rq = m.host.side_a.rank, rb = m.host.side_b.rank;
  require(static_cast<int>(e1.q.size()) == rq &&
              static_cast<int>(e1.tau.size()) == rq &&
              static_cast<int>(e1.b.size()) == rb,
          "pairing_eval: point shape");
  Ratio acc = dot_rat(e1.q, e2.tau) + dot_rat(e2.q, e1.tau);
  for (int i = 0; i < rq; ++i)
    for (int j = 0; j < rq; ++j)
      for (int b = 0; b < rb; ++b)
        acc += m.lambda.at(i, j, b).eval(e1.base) * e1.q[i] * e2.q[j] * e1.b[b];
  return acc;
}

DPoint involution_apply(const InvolutiveDVB& d, const DPoint& p) {
  int rq = d.host.side_a.rank, rb = d.host.core.rank;
  require(static_cast<int>(p.q1.size()) == rq &&
              static_cast<int>(p.q2.size()) == rq &&
              static_cast<int>(p.beta.size()) == rb,
          "involution_apply: point shape");
  DPoint out;
  out.base = p.base;
  out.q1 = p.q2;
  out.q2 = p.q1;
  out.beta.assign(rb, Ratio(0));
  for (int j = 0; j < rb; ++j) {
    Ratio acc = -p.beta[j];
    for (int i = 0; i < rq; ++i)
      for (int k = 0; k < rq; ++k)
        acc += d.kappa.at(i, k, j).eval(p.base) * p.q1[i] * p.q2[k];
    out.beta[j] = acc;
  }
  return out;
}

Report check_involutive(const InvolutiveDVB& d) {
  Report rep{"involutive-dvb"};
  int rq = d.host.side_a.rank, rb = d.host.core.rank;
  rep.add("sides-equal-rank", d.host.side_a.rank == d.host.side_b.rank);

  // I^2 = Id, computed symbolically through the pullback on coordinates.
  DRing ring = d_ring(d);
  bool involutory = true;
  std::string detail;
  for (int j = 0; j < rb && involutory; ++j) {
    Poly beta = Poly::var(ring.vars(), ring.be(j));
    Poly twice = involution_pullback(d, involution_pullback(d, beta));
    if (!(twice == beta)) {
      involutory = false;
      std::ostringstream os;
      os << "I^2 on core coordinate " << j << ": " << (twice - beta).str();
      detail = os.str();
    }
  }
  for (int i = 0; i < rq && involutory; ++i) {
    Poly q1 = Poly::var(ring.vars(), ring.q1(i));
    Poly q2 = Poly::var(ring.vars(), ring.q2(i));
    if (!(involution_pullback(d, q1) == q2) ||
        !(involution_pullback(d, involution_pullback(d, q1)) == q1))
      involutory = false;
  }
  rep.add("involution-squares-to-identity", involutory, detail);

  bool sym = true;
  for (int i = 0; i < rq && sym; ++i)
    for (int k = 0; k < rq && sym; ++k)
      for (int j = 0; j < rb; ++j)
        if (!(d.kappa.at(i, k, j) - d.kappa.at(k, i, j)).is_zero()) {
          sym = false;
          break;
        }
  rep.add("kappa-symmetric", sym);
  return rep;
}

Report check_metric(const MetricDVB& m) {
  Report rep{"metric-dvb"};
  rep.add("core-identified-with-Q*", m.host.core.rank == m.host.side_a.rank);
  bool sym = true;
  for (int i = 0; i < m.lambda.d0() && sym; ++i)
    for (int j = 0; j < m.lambda.d1() && sym; ++j)
      for (int b = 0; b < m.lambda.d2(); ++b)
        if (!(m.lambda.at(i, j, b) - m.lambda.at(j, i, b)).is_zero()) {
          sym = false;
          break;
        }
  rep.add("lambda-symmetric", sym);

  // Induced pairing matrix over a generic point of B, in the fiber frame
  // (q, tau): [[Lambda(y), I], [I, 0]]. Nondegeneracy = unit determinant.
  int n = m.host.chart.dim, rq = m.host.side_a.rank, rb = m.host.side_b.rank;
  int nv = n + rb;
  PolyMatrix g(2 * rq, 2 * rq, nv);
  for (int i = 0; i < rq; ++i) {
    g.at(i, rq + i) = Poly::constant(nv, Ratio(1));
    g.at(rq + i, i) = Poly::constant(nv, Ratio(1));
    for (int j = 0; j < rq; ++j) {
      Poly acc(nv);
      for (int b = 0; b < rb; ++b)
        acc += m.lambda.at(i, j, b).promote(nv, 0) * Poly::var(nv, n + b);
      g.at(i, j) = acc;
    }
  }
  rep.add("beta-map-unit-determinant", g.has_unit_det());
  return rep;
}

PolyCube lambda_of_splitting(const MetricDVB& m, const SplittingChange& change) {
  int rq = m.host.side_a.rank, rb = m.host.side_b.rank;
  const PolyCube& phi = change.phi;
  require(phi.d0() == rq && phi.d1() == rb && phi.d2() == rq,
          "lambda_of_splitting: change shape");
  PolyCube out = m.lambda;
  for (int i = 0; i < rq; ++i)
    for (int j = 0; j < rq; ++j)
      for (int b = 0; b < rb; ++b)
        out.at(i, j, b) += phi.at(i, b, j) + phi.at(j, b, i);
  return out;
}

SplittingChange symmetrize_splitting(const MetricDVB& m) {
  int rq = m.host.side_a.rank, rb = m.host.side_b.rank;
  PolyCube phi(rq, rb, rq, m.host.chart.dim);
  for (int i = 0; i < rq; ++i)
    for (int b = 0; b < rb; ++b)
      for (int j = 0; j < rq; ++j)
        phi.at(i, b, j) = m.lambda.at(i, j, b) * Ratio(-1, 2);
  return {phi};
}

bool isotropic_test(const MetricDVB& m, const LinearSection& s) {
  require(s.over == Side::A, "isotropic_test: section must live over Q");
  require(s.core_part.rows() == m.host.core.rank &&
              s.core_part.cols() == m.host.side_a.rank,
          "isotropic_test: section shape");
  return (s.core_part + s.core_part.transpose()).is_zero();
}

// --- duality ----------------------------------------------------------------

namespace {

// Variable layout for the confirmation ring of metric_to_involutive:
// [x | q1 | q2 | tau | b | beta | t].
struct ConfirmRing {
  int n, rq, rb;
  int vars() const { return n + 3 * rq + 2 * rb + rq; }
  int x(int u) const { return u; }
  int q1(int i) const { return n + i; }
  int q2(int i) const { return n + rq + i; }
  int tau(int i) const { return n + 2 * rq + i; }
  int b(int j) const { return n + 3 * rq + j; }
  int be(int j) const { return n + 3 * rq + rb + j; }
  int t(int i) const { return n + 3 * rq + 2 * rb + i; }
};

// Residual of the defining relation <I(d), e>_Q = <<e, d>> for a candidate
// kappa, as a polynomial in all coordinates. Zero iff kappa realizes the
// dual involution.
Poly duality_residual(const MetricDVB& m, const PolyCube& kappa) {
  int n = m.host.chart.dim, rq = m.host.side_a.rank, rb = m.host.side_b.rank;
  ConfirmRing r{n, rq, rb};
  int nv = r.vars();
  auto v = [&](int idx) { return Poly::var(nv, idx); };

  // <I(d), e>_Q with d = (q1, q2, beta), I(d) = (q2, q1, -beta + kappa(q1, q2)),
  // e = (q2, b, tau):
  Poly lhs(nv);
  for (int i = 0; i < rq; ++i) lhs += v(r.q1(i)) * v(r.tau(i));
  for (int j = 0; j < rb; ++j) {
    Poly core = -v(r.be(j));
    for (int i = 0; i < rq; ++i)
      for (int k = 0; k < rq; ++k)
        core += kappa.at(i, k, j).promote(nv, 0) * v(r.q1(i)) * v(r.q2(k));
    lhs += core * v(r.b(j));
  }

  // <<e, d>> = <beta_map(e), aux>_B - <d, aux>_Q with aux = (q1, b, t);
  // the first pairing is the metric of e against aux.
  Poly metric_part(nv);
  for (int i = 0; i < rq; ++i)
    metric_part += v(r.q2(i)) * v(r.t(i)) + v(r.q1(i)) * v(r.tau(i));
  for (int i = 0; i < rq; ++i)
    for (int k = 0; k < rq; ++k)
      for (int j = 0; j < rb; ++j)
        metric_part +=
            m.lambda.at(i, k, j).promote(nv, 0) * v(r.q2(i)) * v(r.q1(k)) * v(r.b(j));
  Poly d_aux(nv);
  for (int i = 0; i < rq; ++i) d_aux += v(r.q2(i)) * v(r.t(i));
  for (int j = 0; j < rb; ++j) d_aux += v(r.be(j)) * v(r.b(j));
  Poly nsp = metric_part - d_aux;

  // The auxiliary core t must have cancelled; this certifies that the
  // canonical pairing is independent of the choice of auxiliary element.
  for (int i = 0; i < rq; ++i)
    if (!nsp.diff(r.t(i)).is_zero())
      throw std::runtime_error("metric_to_involutive: auxiliary element did not cancel");

  return lhs - nsp;
}

}  // namespace

InvolutiveDVB metric_to_involutive(const MetricDVB& m, std::uint64_t seed) {
  int n = m.host.chart.dim, rq = m.host.side_a.rank, rb = m.host.side_b.rank;

  int deg = 0;
  for (const auto& p : m.lambda.entries()) deg = std::max(deg, p.total_degree());
  std::vector<Mono> basis = monomials_up_to(n, deg);

  // Unknowns: coefficients of kappa[i][k][j] (i <= k) over the monomial basis.
  PolyCube kappa(rq, rq, rb, n);
  if (rq > 0 && rb > 0) {
    // Pointwise linear solve: evaluate the defining relation at seeded sample
    // points. Points with frame vectors in the q and b slots decouple the
    // system into one small interpolation solve per kappa entry.
    int nb = static_cast<int>(basis.size());
    // Residual of the relation at (x; q1 = e_i, q2 = e_k, b = e_j) with the
    // remaining coordinates random and kappa = 0:
    //   <I_0(d), e>_Q - <<e, d>> = -(Lambda(e_i, e_k)(x))_j
    // after the tau, beta and t contributions cancel; evaluate it honestly.
    RatRng rng(seed);
    auto residual0_at = [&](const RatVec& x, int i, int k, int j) {
      RatVec tau(rq), beta(rb), tv(rq);
      for (auto& c : tau) c = rng.small(5);
      for (auto& c : beta) c = rng.small(5);
      for (auto& c : tv) c = rng.small(5);
      Ratio lhs = tau[i];                       // <q1, tau> with q1 = e_i
      lhs += (-beta[j]) * Ratio(1);             // core of I_0(d) against b = e_j
      Ratio nsp = tau[i];                       // <q1, tau> inside the metric part
      nsp += m.lambda.at(k, i, j).eval(x);      // Lambda(q2, q1) against b = e_j
      nsp -= beta[j];                           // -<d, aux> core term
      // The t-contributions <q2, t> cancel between the two pairings;
      // keep them explicit so the cancellation is exercised numerically.
      Ratio metric_t = tv[k], daux_t = tv[k];
      nsp += metric_t - daux_t;
      return lhs - nsp;
    };

    for (int i = 0; i < rq; ++i)
      for (int k = i; k < rq; ++k)
        for (int j = 0; j < rb; ++j) {
          int attempts = 0;
          for (;;) {
            if (++attempts > 50)
              throw std::runtime_error(
                  "metric_to_involutive: sample system did not close");
            std::vector<RatVec> xs;
            RatMatrix a(nb, nb);
            RatVec rhs(nb);
            for (int row = 0; row < nb; ++row) {
              RatVec x(n);
              for (auto& c : x) c = rng.small(5);
              xs.push_back(x);
              for (int col = 0; col < nb; ++col) {
                Ratio mono_v(1);
                for (int u = 0; u < n; ++u)
                  for (std::uint32_t e = 0; e < basis[col][u]; ++e) mono_v *= x[u];
                a.at(row, col) = mono_v;
              }
              rhs[row] = -residual0_at(x, i, k, j);
            }
            auto sol = solve_linear(a, rhs);
            if (!sol) continue;
            for (int col = 0; col < nb; ++col) {
              if ((*sol)[col] == 0) continue;
              kappa.at(i, k, j).add_term(basis[col], (*sol)[col]);
              if (i != k) kappa.at(k, i, j).add_term(basis[col], (*sol)[col]);
            }
            break;
          }
        }
  }

  // Symbolic confirmation of the sampled solution.
  if (!duality_residual(m, kappa).is_zero())
    throw std::runtime_error("metric_to_involutive: symbolic confirmation failed");

  return make_involutive_dvb(m.host.chart, rq, rb, kappa);
}

MetricDVB involutive_to_metric(const InvolutiveDVB& d) {
  int n = d.host.chart.dim, rq = d.host.side_a.rank, rb = d.host.core.rank;
  // Ring [x | q1 | q2 | tau1 | tau2 | b | beta].
  int nv = n + 4 * rq + 2 * rb;
  auto q1 = [&](int i) { return Poly::var(nv, n + i); };
  auto q2 = [&](int i) { return Poly::var(nv, n + rq + i); };
  auto tau1 = [&](int i) { return Poly::var(nv, n + 2 * rq + i); };
  auto tau2 = [&](int i) { return Poly::var(nv, n + 3 * rq + i); };
  auto bv = [&](int j) { return Poly::var(nv, n + 4 * rq + j); };
  auto be = [&](int j) { return Poly::var(nv, n + 4 * rq + rb + j); };

  // <e1, d>_Q + <e2, I(d)>_Q with e1 = (q1, b, tau1), e2 = (q2, b, tau2),
  // d = (q1, q2, beta).
  Poly pairing(nv);
  for (int i = 0; i < rq; ++i) pairing += q2(i) * tau1(i);
  for (int j = 0; j < rb; ++j) pairing += be(j) * bv(j);
  for (int i = 0; i < rq; ++i) pairing += q1(i) * tau2(i);
  for (int j = 0; j < rb; ++j) {
    Poly core = -be(j);
    for (int i = 0; i < rq; ++i)
      for (int k = 0; k < rq; ++k)
        core += d.kappa.at(i, k, j).promote(nv, 0) * q1(i) * q2(k);
    pairing += core * bv(j);
  }

  // Independence of the auxiliary d: the core part beta must have cancelled.
  for (int j = 0; j < rb; ++j)
    if (!pairing.diff(n + 4 * rq + rb + j).is_zero())
      throw std::runtime_error("involutive_to_metric: pairing depends on the auxiliary core");

  // Read off Lambda and confirm the reconstruction is exact.
  PolyCube lambda(rq, rq, rb, n);
  Poly reconstructed(nv);
  for (int i = 0; i < rq; ++i) reconstructed += q2(i) * tau1(i) + q1(i) * tau2(i);
  for (int i = 0; i < rq; ++i)
    for (int k = 0; k < rq; ++k)
      for (int j = 0; j < rb; ++j) {
        Mono tail(nv - n, 0);
        tail[i] = 1;                 // q1_i
        tail[rq + k] = 1;            // q2_k
        tail[4 * rq + j] = 1;        // b_j
        lambda.at(i, k, j) = coeff_of_tail(pairing, n, tail);
        reconstructed += lambda.at(i, k, j).promote(nv, 0) * q1(i) * q2(k) * bv(j);
      }
  if (!(reconstructed == pairing))
    throw std::runtime_error("involutive_to_metric: pairing is not of metric form");

  return make_metric_dvb(d.host.chart, rq, rb, lambda);
}

PolyCube kappa_after_change(const InvolutiveDVB& d, const PolyCube& zeta) {
  int rq = d.host.side_a.rank, rb = d.host.core.rank;
  require(zeta.d0() == rq && zeta.d1() == rq && zeta.d2() == rb,
          "kappa_after_change: zeta shape");
  PolyCube out = d.kappa;
  for (int i = 0; i < rq; ++i)
    for (int k = 0; k < rq; ++k)
      for (int j = 0; j < rb; ++j)
        out.at(i, k, j) -= zeta.at(i, k, j) + zeta.at(k, i, j);
  return out;
}

PolyCube involutive_splitting(const InvolutiveDVB& d, const PolyCube& zeta) {
  int rq = d.host.side_a.rank, rb = d.host.core.rank;
  require(zeta.d0() == rq && zeta.d1() == rq && zeta.d2() == rb,
          "involutive_splitting: zeta shape");
  // Averaged splitting in ambient terms:
  //   zeta'(q1, q2) = 1/2 (zeta(q1, q2) - zeta(q2, q1) + kappa(q1, q2));
  // returned as the change from zeta.
  PolyCube delta(rq, rq, rb, d.host.chart.dim);
  for (int i = 0; i < rq; ++i)
    for (int k = 0; k < rq; ++k)
      for (int j = 0; j < rb; ++j) {
        Poly prime = (zeta.at(i, k, j) - zeta.at(k, i, j) + d.kappa.at(i, k, j)) *
                     Ratio(1, 2);
        delta.at(i, k, j) = prime - zeta.at(i, k, j);
      }
  return delta;
}

// --- functions on D ---------------------------------------------------------

DRing d_ring(const InvolutiveDVB& d) {
  return {d.host.chart.dim, d.host.side_a.rank, d.host.core.rank};
}

Poly involution_pullback(const InvolutiveDVB& d, const Poly& f) {
  DRing r = d_ring(d);
  require(f.n_vars() == r.vars(), "involution_pullback: wrong ring");
  std::vector<Poly> images(r.vars(), Poly(r.vars()));
  for (int u = 0; u < r.n; ++u) images[r.x(u)] = Poly::var(r.vars(), r.x(u));
  for (int i = 0; i < r.rq; ++i) {
    images[r.q1(i)] = Poly::var(r.vars(), r.q2(i));
    images[r.q2(i)] = Poly::var(r.vars(), r.q1(i));
  }
  for (int j = 0; j < r.rb; ++j) {
    Poly img = -Poly::var(r.vars(), r.be(j));
    for (int i = 0; i < r.rq; ++i)
      for (int k = 0; k < r.rq; ++k)
        img += d.kappa.at(i, k, j).promote(r.vars(), 0) *
               Poly::var(r.vars(), r.q1(i)) * Poly::var(r.vars(), r.q2(k));
    images[r.be(j)] = img;
  }
  return f.subst(images);
}

Poly ell_of_section(const InvolutiveDVB& d, const LinearSection& chi) {
  DRing r = d_ring(d);
  require(chi.over == Side::A, "ell_of_section: section must live over Q");
  require(static_cast<int>(chi.base.size()) == r.rb &&
              chi.core_part.rows() == r.rq && chi.core_part.cols() == r.rq,
          "ell_of_section: shape");
  int nv = r.vars();
  Poly out(nv);
  for (int j = 0; j < r.rb; ++j)
    out += chi.base[j].promote(nv, 0) * Poly::var(nv, r.be(j));
  for (int i = 0; i < r.rq; ++i)
    for (int k = 0; k < r.rq; ++k)
      out += chi.core_part.at(k, i).promote(nv, 0) *
             Poly::var(nv, r.q1(i)) * Poly::var(nv, r.q2(k));
  return out;
}

Poly pi1_ell(const InvolutiveDVB& d, const PolyVec& tau) {
  DRing r = d_ring(d);
  int nv = r.vars();
  Poly out(nv);
  for (int i = 0; i < r.rq; ++i)
    out += tau[i].promote(nv, 0) * Poly::var(nv, r.q1(i));
  return out;
}

Poly pi2_ell(const InvolutiveDVB& d, const PolyVec& tau) {
  DRing r = d_ring(d);
  int nv = r.vars();
  Poly out(nv);
  for (int i = 0; i < r.rq; ++i)
    out += tau[i].promote(nv, 0) * Poly::var(nv, r.q2(i));
  return out;
}

Poly base_fn(const InvolutiveDVB& d, const Poly& f) {
  DRing r = d_ring(d);
  return f.promote(r.vars(), 0);
}

Poly psi_embed_core(const InvolutiveDVB& d, const PolyVec& tau) {
  if (!d.kappa.is_zero())
    throw std::invalid_argument("psi_embed: requires an involutive decomposition (kappa = 0)");
  return (pi2_ell(d, tau) - pi1_ell(d, tau)) * Ratio(1, 2);
}

Poly psi_embed_isotropic(const InvolutiveDVB& d, const IsotropicLinearSection& s) {
  if (!d.kappa.is_zero())
    throw std::invalid_argument("psi_embed: requires an involutive decomposition (kappa = 0)");
  require(s.omega.is_antisymmetric(), "psi_embed: omega must be antisymmetric");
  DRing r = d_ring(d);
  int nv = r.vars();
  Poly out(nv);
  for (int j = 0; j < r.rb; ++j)
    out += s.base_b[j].promote(nv, 0) * Poly::var(nv, r.be(j));
  // omega(q1, q2) = <q2, omega q1>.
  for (int i = 0; i < r.rq; ++i)
    for (int k = 0; k < r.rq; ++k)
      out += s.omega.at(k, i).promote(nv, 0) * Poly::var(nv, r.q1(i)) *
             Poly::var(nv, r.q2(k));
  return out;
}

}  // namespace dvbkit
