#include "dvbkit/tworep.hpp"

#include <sstream>
#include <stdexcept>

namespace dvbkit {

namespace {
void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::string mat_summary(const PolyMatrix& m) {
  std::ostringstream os;
  bool first = true;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      if (m.at(r, c).is_zero()) continue;
      if (!first) os << ", ";
      first = false;
      os << "(" << r << "," << c << ") = " << m.at(r, c).str();
    }
  return os.str();
}
}  // namespace

TwoRep make_tworep(LieAlgebroidModel algebroid, VBundle e0, VBundle e1,
                   PolyMatrix partial, std::vector<PolyMatrix> gamma0,
                   std::vector<PolyMatrix> gamma1,
                   std::vector<std::vector<PolyMatrix>> curv) {
  int ra = algebroid.bundle.rank;
  require(partial.rows() == e1.rank && partial.cols() == e0.rank,
          "make_tworep: partial shape");
  require(static_cast<int>(gamma0.size()) == ra &&
              static_cast<int>(gamma1.size()) == ra,
          "make_tworep: one Christoffel matrix per algebroid frame");
  require(static_cast<int>(curv.size()) == ra, "make_tworep: curvature shape");
  for (int i = 0; i < ra; ++i) {
    require(gamma0[i].rows() == e0.rank && gamma0[i].cols() == e0.rank,
            "make_tworep: conn0 shape");
    require(gamma1[i].rows() == e1.rank && gamma1[i].cols() == e1.rank,
            "make_tworep: conn1 shape");
    require(static_cast<int>(curv[i].size()) == ra, "make_tworep: curvature shape");
    for (int j = 0; j < ra; ++j) {
      require(curv[i][j].rows() == e0.rank && curv[i][j].cols() == e1.rank,
              "make_tworep: curvature value shape");
      require((curv[i][j] + curv[j][i]).is_zero(),
              "make_tworep: curvature must be antisymmetric in its algebroid slots");
    }
  }
  TwoRep r;
  r.algebroid = std::move(algebroid);
  r.e0 = e0;
  r.e1 = e1;
  r.partial = std::move(partial);
  r.conn0 = Connection{r.algebroid.anchor, e0, std::move(gamma0)};
  r.conn1 = Connection{r.algebroid.anchor, e1, std::move(gamma1)};
  r.curv = std::move(curv);
  return r;
}

TwoRep zero_rep(const LieAlgebroidModel& algebroid, int rank0, int rank1) {
  int ra = algebroid.bundle.rank, n = algebroid.bundle.chart.dim;
  VBundle e0{algebroid.bundle.chart, rank0}, e1{algebroid.bundle.chart, rank1};
  std::vector<PolyMatrix> g0(ra, PolyMatrix(rank0, rank0, n));
  std::vector<PolyMatrix> g1(ra, PolyMatrix(rank1, rank1, n));
  std::vector<std::vector<PolyMatrix>> curv(
      ra, std::vector<PolyMatrix>(ra, PolyMatrix(rank0, rank1, n)));
  return make_tworep(algebroid, e0, e1, PolyMatrix(rank1, rank0, n),
                     std::move(g0), std::move(g1), std::move(curv));
}

Report check_tworep(const TwoRep& r) {
  Report rep{"tworep"};
  rep.absorb(check_lie_algebroid(r.algebroid), "algebroid");
  int ra = r.algebroid.bundle.rank;

  for (int i = 0; i < ra; ++i) {
    // partial o nabla0 = nabla1 o partial:
    // residual = partial G0_i - rho_i(partial) - G1_i partial.
    PolyVec field = anchor_row(r.algebroid.anchor, i);
    PolyMatrix res = r.partial * r.conn0.gamma[i] -
                     r.partial.derive_along(field) -
                     r.conn1.gamma[i] * r.partial;
    std::ostringstream name;
    name << "complex-compat(" << i << ")";
    rep.add(name.str(), res.is_zero(), mat_summary(res));
  }

  for (int i = 0; i < ra; ++i)
    for (int j = i + 1; j < ra; ++j) {
      PolyMatrix r0 = algebroid_curvature(r.conn0, r.algebroid, i, j) -
                      r.curv[i][j] * r.partial;
      std::ostringstream n0;
      n0 << "curv-on-e0(" << i << "," << j << ")";
      rep.add(n0.str(), r0.is_zero(), mat_summary(r0));

      PolyMatrix r1 = algebroid_curvature(r.conn1, r.algebroid, i, j) -
                      r.partial * r.curv[i][j];
      std::ostringstream n1;
      n1 << "curv-on-e1(" << i << "," << j << ")";
      rep.add(n1.str(), r1.is_zero(), mat_summary(r1));
    }

  for (int i = 0; i < ra; ++i)
    for (int j = i + 1; j < ra; ++j)
      for (int k = j + 1; k < ra; ++k) {
        PolyMatrix res = hom_connection_apply(r.conn0, r.conn1, i, r.curv[j][k]) -
                         hom_connection_apply(r.conn0, r.conn1, j, r.curv[i][k]) +
                         hom_connection_apply(r.conn0, r.conn1, k, r.curv[i][j]);
        for (int m = 0; m < ra; ++m) {
          res = res - (r.algebroid.structure[i][j][m] * r.curv[m][k]);
          res = res + (r.algebroid.structure[i][k][m] * r.curv[m][j]);
          res = res - (r.algebroid.structure[j][k][m] * r.curv[m][i]);
        }
        std::ostringstream name;
        name << "curv-closed(" << i << "," << j << "," << k << ")";
        rep.add(name.str(), res.is_zero(), mat_summary(res));
      }
  return rep;
}

TwoRep twist(const TwoRep& r, const TwistTensor& phi) {
  int ra = r.algebroid.bundle.rank;
  require(static_cast<int>(phi.size()) == ra, "twist: one tensor per frame");
  for (const auto& p : phi)
    require(p.rows() == r.e0.rank && p.cols() == r.e1.rank, "twist: tensor shape");

  TwoRep out = r;
  for (int i = 0; i < ra; ++i) {
    out.conn0.gamma[i] = r.conn0.gamma[i] + phi[i] * r.partial;
    out.conn1.gamma[i] = r.conn1.gamma[i] + r.partial * phi[i];
  }
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < ra; ++j) {
      // d_{Hom} phi relative to the untwisted connections.
      PolyMatrix d = hom_connection_apply(r.conn0, r.conn1, i, phi[j]) -
                     hom_connection_apply(r.conn0, r.conn1, j, phi[i]);
      for (int m = 0; m < ra; ++m)
        d = d - (r.algebroid.structure[i][j][m] * phi[m]);
      out.curv[i][j] = r.curv[i][j] + d + phi[i] * r.partial * phi[j] -
                       phi[j] * r.partial * phi[i];
    }
  return out;
}

TwoRep dualize_rep(const TwoRep& r) {
  int ra = r.algebroid.bundle.rank;
  TwoRep out;
  out.algebroid = r.algebroid;
  out.e0 = {r.e1.chart, r.e1.rank};
  out.e1 = {r.e0.chart, r.e0.rank};
  out.partial = r.partial.transpose();
  out.conn0 = dual_connection(r.conn1);
  out.conn1 = dual_connection(r.conn0);
  out.curv.assign(ra, std::vector<PolyMatrix>(ra, PolyMatrix()));
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < ra; ++j) out.curv[i][j] = -r.curv[i][j].transpose();
  return out;
}

Report selfdual_report(const TwoRep& r, const PolyMatrix* j) {
  Report rep{"selfdual"};
  int ra = r.algebroid.bundle.rank;
  PolyMatrix id;
  if (!j) {
    if (r.e0.rank != r.e1.rank) {
      rep.add("identification", false, "E0 and E1* have different ranks");
      return rep;
    }
    id = PolyMatrix::identity(r.e0.rank, r.algebroid.bundle.chart.dim);
    j = &id;
  }
  require(j->rows() == r.e1.rank && j->cols() == r.e0.rank,
          "selfdual_report: identification shape");

  PolyMatrix lhs = j->transpose() * r.partial;
  PolyMatrix res = lhs - lhs.transpose();
  rep.add("partial-symmetric", res.is_zero(), mat_summary(res));

  for (int i = 0; i < ra; ++i) {
    PolyVec field = anchor_row(r.algebroid.anchor, i);
    PolyMatrix dres = (*j) * r.conn0.gamma[i] + j->derive_along(field) +
                      r.conn1.gamma[i].transpose() * (*j);
    std::ostringstream name;
    name << "connections-dual(" << i << ")";
    rep.add(name.str(), dres.is_zero(), mat_summary(dres));
  }
  for (int i = 0; i < ra; ++i)
    for (int k = i + 1; k < ra; ++k) {
      PolyMatrix m = (*j) * r.curv[i][k];
      PolyMatrix ares = m + m.transpose();
      std::ostringstream name;
      name << "curvature-antisymmetric(" << i << "," << k << ")";
      rep.add(name.str(), ares.is_zero(), mat_summary(ares));
    }
  return rep;
}

bool is_selfdual(const TwoRep& r, const PolyMatrix* j) {
  return selfdual_report(r, j).all_pass();
}

TwoRep tangent_rep(const Connection& tm_conn) {
  const Chart& chart = tm_conn.bundle.chart;
  LieAlgebroidModel tm = tangent_algebroid(chart);
  int n = chart.dim;
  std::vector<std::vector<PolyMatrix>> curv(
      n, std::vector<PolyMatrix>(
             n, PolyMatrix(tm_conn.bundle.rank, tm_conn.bundle.rank, n)));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) curv[u][v] = connection_curvature(tm_conn, u, v);
  return make_tworep(tm, tm_conn.bundle, tm_conn.bundle,
                     PolyMatrix::identity(tm_conn.bundle.rank, n),
                     tm_conn.gamma, tm_conn.gamma, std::move(curv));
}

TwoRep adjoint_rep(const LieAlgebroidModel& l, const Connection& tm_conn) {
  require(tm_conn.bundle.rank == l.bundle.rank &&
              tm_conn.bundle.chart == l.bundle.chart,
          "adjoint_rep: connection must live on the algebroid bundle");
  int n = l.bundle.chart.dim, r = l.bundle.rank;
  VBundle e0 = l.bundle;             // core A
  VBundle e1 = {l.bundle.chart, n};  // side TM

  // nabla^bas on TM: nabla^bas_{a_i} d_u = [rho(a_i), d_u] + rho(nabla_u a_i).
  std::vector<PolyMatrix> gamma1(r, PolyMatrix(n, n, n));
  for (int i = 0; i < r; ++i)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        Poly acc = -l.anchor.at(i, v).diff(u);
        for (int k = 0; k < r; ++k)
          acc += tm_conn.gamma[u].at(k, i) * l.anchor.at(k, v);
        gamma1[i].at(v, u) = acc;
      }

  // nabla^bas on A: nabla^bas_{a_i} a_j = [a_i, a_j] + nabla_{rho(a_j)} a_i.
  std::vector<PolyMatrix> gamma0(r, PolyMatrix(r, r, n));
  for (int i = 0; i < r; ++i)
    for (int jj = 0; jj < r; ++jj)
      for (int k = 0; k < r; ++k) {
        Poly acc = l.structure[i][jj][k];
        for (int u = 0; u < n; ++u)
          acc += l.anchor.at(jj, u) * tm_conn.gamma[u].at(k, i);
        gamma0[i].at(k, jj) = acc;
      }

  auto frame = [&](int i) {
    PolyVec s = zero_vec(n, r);
    s[i] = Poly::constant(n, Ratio(1));
    return s;
  };
  auto coord_field = [&](int u) {
    PolyVec x = zero_vec(n, n);
    x[u] = Poly::constant(n, Ratio(1));
    return x;
  };

  std::vector<std::vector<PolyMatrix>> curv(
      r, std::vector<PolyMatrix>(r, PolyMatrix(r, n, n)));
  for (int i = 0; i < r; ++i)
    for (int jj = 0; jj < r; ++jj) {
      if (i == jj) continue;
      PolyVec ai = frame(i), aj = frame(jj);
      PolyVec bracket_ij = algebroid_bracket(l, ai, aj);
      for (int u = 0; u < n; ++u) {
        PolyVec col = zero_vec(n, r) -
                      connection_apply_vf(tm_conn, coord_field(u), bracket_ij);
        col = col + algebroid_bracket(
                        l, connection_apply_vf(tm_conn, coord_field(u), ai), aj);
        col = col + algebroid_bracket(
                        l, ai, connection_apply_vf(tm_conn, coord_field(u), aj));
        // nabla_{nabla^bas_{a_j} d_u} a_i - nabla_{nabla^bas_{a_i} d_u} a_j.
        PolyVec f_j = zero_vec(n, n), f_i = zero_vec(n, n);
        for (int v = 0; v < n; ++v) {
          f_j[v] = gamma1[jj].at(v, u);
          f_i[v] = gamma1[i].at(v, u);
        }
        col = col + connection_apply_vf(tm_conn, f_j, ai);
        col = col - connection_apply_vf(tm_conn, f_i, aj);
        for (int k = 0; k < r; ++k) curv[i][jj].at(k, u) = col[k];
      }
    }

  return make_tworep(l, e0, e1, l.anchor.transpose(), std::move(gamma0),
                     std::move(gamma1), std::move(curv));
}

TwistTensor adjoint_twist(const LieAlgebroidModel& l, const Connection& from,
                          const Connection& to) {
  int n = l.bundle.chart.dim, r = l.bundle.rank;
  TwistTensor phi(r, PolyMatrix(r, n, n));
  for (int i = 0; i < r; ++i)
    for (int u = 0; u < n; ++u)
      for (int k = 0; k < r; ++k)
        phi[i].at(k, u) = to.gamma[u].at(k, i) - from.gamma[u].at(k, i);
  return phi;
}

TwoRep direct_sum_double(const TwoRep& r) {
  int ra = r.algebroid.bundle.rank, n = r.algebroid.bundle.chart.dim;
  int r0 = r.e0.rank, r1 = r.e1.rank;
  int rr = r0 + r1;
  VBundle e0{r.e0.chart, rr}, e1{r.e0.chart, rr};

  // E0' = E1* (+) E0 and E1' = E1 (+) E0* with blocks (r1, r0), so the
  // identification E0' = (E1')* is literal on coordinates.
  PolyMatrix partial(rr, rr, n);
  for (int a = 0; a < r1; ++a)
    for (int b = 0; b < r0; ++b) {
      partial.at(a, r1 + b) = r.partial.at(a, b);
      partial.at(r1 + b, a) = r.partial.at(a, b);
    }

  auto block_diag = [&](const PolyMatrix& top, const PolyMatrix& bottom) {
    PolyMatrix m(rr, rr, n);
    for (int a = 0; a < top.rows(); ++a)
      for (int b = 0; b < top.cols(); ++b) m.at(a, b) = top.at(a, b);
    for (int a = 0; a < bottom.rows(); ++a)
      for (int b = 0; b < bottom.cols(); ++b)
        m.at(top.rows() + a, top.cols() + b) = bottom.at(a, b);
    return m;
  };

  std::vector<PolyMatrix> gamma0(ra), gamma1(ra);
  for (int i = 0; i < ra; ++i) {
    gamma0[i] = block_diag(-r.conn1.gamma[i].transpose(), r.conn0.gamma[i]);
    gamma1[i] = block_diag(r.conn1.gamma[i], -r.conn0.gamma[i].transpose());
  }

  std::vector<std::vector<PolyMatrix>> curv(
      ra, std::vector<PolyMatrix>(ra, PolyMatrix(rr, rr, n)));
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < ra; ++j)
      for (int a = 0; a < r1; ++a)
        for (int b = 0; b < r0; ++b) {
          curv[i][j].at(a, r1 + b) = -r.curv[i][j].at(b, a);
          curv[i][j].at(r1 + b, a) = r.curv[i][j].at(b, a);
        }

  return make_tworep(r.algebroid, e0, e1, std::move(partial), std::move(gamma0),
                     std::move(gamma1), std::move(curv));
}

// --- realization -------------------------------------------------------------

VBAlgebroidRealization::VBAlgebroidRealization(TwoRep rep)
    : rep_(std::move(rep)),
      n_(rep_.algebroid.bundle.chart.dim),
      ra_(rep_.algebroid.bundle.rank),
      r0_(rep_.e0.rank),
      r1_(rep_.e1.rank) {
  int nv = vars();
  auto y = [&](int b) { return Poly::var(nv, n_ + b); };

  gen_anchor_.resize(ra_ + r0_);
  for (int i = 0; i < ra_; ++i) {
    FiberedVF v{zero_vec(nv, n_), zero_vec(nv, r1_)};
    for (int u = 0; u < n_; ++u)
      v.dx[u] = rep_.algebroid.anchor.at(i, u).promote(nv, 0);
    for (int g = 0; g < r1_; ++g) {
      Poly acc(nv);
      for (int b = 0; b < r1_; ++b)
        acc -= rep_.conn1.gamma[i].at(g, b).promote(nv, 0) * y(b);
      v.dy[g] = acc;
    }
    gen_anchor_[i] = std::move(v);
  }
  for (int j = 0; j < r0_; ++j) {
    FiberedVF v{zero_vec(nv, n_), zero_vec(nv, r1_)};
    for (int b = 0; b < r1_; ++b) v.dy[b] = rep_.partial.at(b, j).promote(nv, 0);
    gen_anchor_[ra_ + j] = std::move(v);
  }

  gen_bracket_.assign(ra_ + r0_,
                      std::vector<FiberedSection>(ra_ + r0_, zero_section()));
  for (int i = 0; i < ra_; ++i)
    for (int j = 0; j < ra_; ++j) {
      FiberedSection s = zero_section();
      for (int m = 0; m < ra_; ++m)
        s.lin[m] = rep_.algebroid.structure[i][j][m].promote(nv, 0);
      for (int k = 0; k < r0_; ++k) {
        Poly acc(nv);
        for (int b = 0; b < r1_; ++b)
          acc -= rep_.curv[i][j].at(k, b).promote(nv, 0) * y(b);
        s.core[k] = acc;
      }
      gen_bracket_[i][j] = std::move(s);
    }
  for (int i = 0; i < ra_; ++i)
    for (int j = 0; j < r0_; ++j) {
      FiberedSection s = zero_section();
      for (int k = 0; k < r0_; ++k)
        s.core[k] = rep_.conn0.gamma[i].at(k, j).promote(nv, 0);
      gen_bracket_[i][ra_ + j] = s;
      for (auto& p : s.core) p = -p;
      gen_bracket_[ra_ + j][i] = std::move(s);
    }
}

FiberedSection VBAlgebroidRealization::zero_section() const {
  return {zero_vec(vars(), ra_), zero_vec(vars(), r0_)};
}

FiberedSection VBAlgebroidRealization::lin_generator(int i) const {
  FiberedSection s = zero_section();
  s.lin[i] = Poly::constant(vars(), Ratio(1));
  return s;
}

FiberedSection VBAlgebroidRealization::core_generator(int j) const {
  FiberedSection s = zero_section();
  s.core[j] = Poly::constant(vars(), Ratio(1));
  return s;
}

FiberedSection VBAlgebroidRealization::core_linear(const PolyMatrix& psi) const {
  require(psi.rows() == r0_ && psi.cols() == r1_, "core_linear: shape");
  FiberedSection s = zero_section();
  int nv = vars();
  for (int k = 0; k < r0_; ++k) {
    Poly acc(nv);
    for (int b = 0; b < r1_; ++b)
      acc += psi.at(k, b).promote(nv, 0) * Poly::var(nv, n_ + b);
    s.core[k] = acc;
  }
  return s;
}

FiberedVF VBAlgebroidRealization::anchor(const FiberedSection& s) const {
  FiberedVF v{zero_vec(vars(), n_), zero_vec(vars(), r1_)};
  for (int p = 0; p < ra_ + r0_; ++p) {
    const Poly& coeff = p < ra_ ? s.lin[p] : s.core[p - ra_];
    if (coeff.is_zero()) continue;
    for (int u = 0; u < n_; ++u) v.dx[u] += coeff * gen_anchor_[p].dx[u];
    for (int b = 0; b < r1_; ++b) v.dy[b] += coeff * gen_anchor_[p].dy[b];
  }
  return v;
}

Poly VBAlgebroidRealization::vf_apply_fn(const FiberedVF& v, const Poly& f) const {
  Poly r(vars());
  for (int u = 0; u < n_; ++u) r += v.dx[u] * f.diff(u);
  for (int b = 0; b < r1_; ++b) r += v.dy[b] * f.diff(n_ + b);
  return r;
}

FiberedSection VBAlgebroidRealization::bracket(const FiberedSection& s,
                                               const FiberedSection& t) const {
  FiberedSection out = zero_section();
  auto coeff = [&](const FiberedSection& w, int p) -> const Poly& {
    return p < ra_ ? w.lin[p] : w.core[p - ra_];
  };
  auto add_gen = [&](FiberedSection& acc, int p, const Poly& c) {
    if (p < ra_)
      acc.lin[p] += c;
    else
      acc.core[p - ra_] += c;
  };
  FiberedVF theta_s = anchor(s), theta_t = anchor(t);
  for (int p = 0; p < ra_ + r0_; ++p) {
    const Poly& sp = coeff(s, p);
    if (sp.is_zero()) continue;
    for (int q = 0; q < ra_ + r0_; ++q) {
      const Poly& tq = coeff(t, q);
      if (tq.is_zero()) continue;
      const FiberedSection& gb = gen_bracket_[p][q];
      Poly f = sp * tq;
      for (int m = 0; m < ra_; ++m) out.lin[m] += f * gb.lin[m];
      for (int k = 0; k < r0_; ++k) out.core[k] += f * gb.core[k];
    }
  }
  for (int q = 0; q < ra_ + r0_; ++q)
    add_gen(out, q, vf_apply_fn(theta_s, coeff(t, q)));
  for (int p = 0; p < ra_ + r0_; ++p)
    add_gen(out, p, -vf_apply_fn(theta_t, coeff(s, p)));
  return out;
}

namespace {
std::string section_summary(const FiberedSection& s) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < s.lin.size(); ++i) {
    if (s.lin[i].is_zero()) continue;
    if (!first) os << ", ";
    first = false;
    os << "sigma[" << i << "]: " << s.lin[i].str();
  }
  for (std::size_t k = 0; k < s.core.size(); ++k) {
    if (s.core[k].is_zero()) continue;
    if (!first) os << ", ";
    first = false;
    os << "core[" << k << "]: " << s.core[k].str();
  }
  return os.str();
}
}  // namespace

Report VBAlgebroidRealization::jacobi_report() const {
  Report rep{"vb-algebroid"};
  int total = ra_ + r0_;
  auto gen = [&](int p) {
    return p < ra_ ? lin_generator(p) : core_generator(p - ra_);
  };
  auto gen_name = [&](int p) {
    std::ostringstream os;
    if (p < ra_)
      os << "sigma" << p;
    else
      os << "core" << (p - ra_);
    return os.str();
  };

  for (int p = 0; p < total; ++p)
    for (int q = p + 1; q < total; ++q) {
      FiberedVF lhs = anchor(bracket(gen(p), gen(q)));
      const FiberedVF& vp = gen_anchor_[p];
      const FiberedVF& vq = gen_anchor_[q];
      FiberedVF rhs{zero_vec(vars(), n_), zero_vec(vars(), r1_)};
      for (int u = 0; u < n_; ++u)
        rhs.dx[u] = vf_apply_fn(vp, vq.dx[u]) - vf_apply_fn(vq, vp.dx[u]);
      for (int b = 0; b < r1_; ++b)
        rhs.dy[b] = vf_apply_fn(vp, vq.dy[b]) - vf_apply_fn(vq, vp.dy[b]);
      bool ok = is_zero(lhs.dx - rhs.dx) && is_zero(lhs.dy - rhs.dy);
      std::ostringstream name;
      name << "anchor-compat(" << gen_name(p) << "," << gen_name(q) << ")";
      rep.add(name.str(), ok);
    }

  for (int p = 0; p < total; ++p)
    for (int q = p + 1; q < total; ++q)
      for (int w = q + 1; w < total; ++w) {
        FiberedSection res = bracket(bracket(gen(p), gen(q)), gen(w));
        FiberedSection t2 = bracket(bracket(gen(q), gen(w)), gen(p));
        FiberedSection t3 = bracket(bracket(gen(w), gen(p)), gen(q));
        res.lin = res.lin + t2.lin + t3.lin;
        res.core = res.core + t2.core + t3.core;
        bool ok = is_zero(res.lin) && is_zero(res.core);
        std::ostringstream name;
        name << "jacobi(" << gen_name(p) << "," << gen_name(q) << ","
             << gen_name(w) << ")";
        rep.add(name.str(), ok, ok ? "" : section_summary(res));
      }
  return rep;
}

Report metric_vb_check(const MetricDVB& m, const TwoRep& rep) {
  if (!m.lambda.is_zero())
    throw std::invalid_argument(
        "metric_vb_check: splitting must be Lagrangian (Lambda = 0)");
  int rq = m.host.side_a.rank, rb = m.host.side_b.rank;
  require(rep.e1.rank == rq && rep.e0.rank == rq &&
              rep.algebroid.bundle.rank == rb,
          "metric_vb_check: representation does not match the metric host");

  Report out{"metric-vb-algebroid"};
  out.absorb(selfdual_report(rep), "selfdual");

  VBAlgebroidRealization real(rep);
  int nv = real.vars(), n = real.n_base(), r1 = real.rank_fiber();

  // Membership in the isotropic module: linear coefficients are base
  // functions, the core part is fiber-linear with antisymmetric matrix.
  auto in_ce = [&](const FiberedSection& s, std::string* why) {
    auto base_only = [&](const Poly& c) {
      for (const auto& [mono, coef] : c.terms())
        for (int b = 0; b < r1; ++b)
          if (mono[n + b] != 0) return false;
      return true;
    };
    for (const auto& c : s.lin)
      if (!base_only(c)) {
        *why = "linear part has fiber-dependent coefficients";
        return false;
      }
    PolyMatrix psi(static_cast<int>(s.core.size()), r1, nv);
    for (std::size_t k = 0; k < s.core.size(); ++k) {
      Poly residue = s.core[k];
      for (int b = 0; b < r1; ++b) {
        Poly coef = residue.diff(n + b);
        if (!base_only(coef)) {
          *why = "core part is not fiber-linear";
          return false;
        }
        psi.at(static_cast<int>(k), b) = coef;
        residue -= coef * Poly::var(nv, n + b);
      }
      if (!residue.is_zero()) {
        *why = "core part has a fiber-constant component";
        return false;
      }
    }
    if (!(psi + psi.transpose()).is_zero()) {
      *why = "core-linear part is not antisymmetric";
      return false;
    }
    return true;
  };

  std::vector<std::pair<std::string, FiberedSection>> ce_gens;
  for (int i = 0; i < rb; ++i) {
    std::ostringstream name;
    name << "sigma" << i;
    ce_gens.emplace_back(name.str(), real.lin_generator(i));
  }
  for (int k = 0; k < rq; ++k)
    for (int l = k + 1; l < rq; ++l) {
      PolyMatrix w(rq, rq, n);
      w.at(k, l) = Poly::constant(n, Ratio(1));
      w.at(l, k) = Poly::constant(n, Ratio(-1));
      std::ostringstream name;
      name << "wedge" << k << l;
      ce_gens.emplace_back(name.str(), real.core_linear(w));
    }
  for (std::size_t a = 0; a < ce_gens.size(); ++a)
    for (std::size_t b = a; b < ce_gens.size(); ++b) {
      FiberedSection br = real.bracket(ce_gens[a].second, ce_gens[b].second);
      std::string why;
      bool ok = in_ce(br, &why);
      out.add("closure[" + ce_gens[a].first + "," + ce_gens[b].first + "]", ok, why);
    }
  return out;
}

}  // namespace dvbkit
