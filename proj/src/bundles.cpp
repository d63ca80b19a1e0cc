#include "dvbkit/bundles.hpp"

#include <sstream>
#include <stdexcept>

namespace dvbkit {

PolyVec vf_bracket(const PolyVec& x, const PolyVec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("vf_bracket: dims");
  int n = static_cast<int>(x.size());
  PolyVec r = zero_vec(n == 0 ? 0 : x[0].n_vars(), n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      r[u] += x[v] * y[u].diff(v) - y[v] * x[u].diff(v);
  return r;
}

Poly vf_apply(const PolyVec& x, const Poly& f) {
  Poly r(f.n_vars());
  for (std::size_t u = 0; u < x.size(); ++u)
    r += x[u] * f.diff(static_cast<int>(u));
  return r;
}

Connection tm_connection(const VBundle& e, std::vector<PolyMatrix> gamma) {
  if (static_cast<int>(gamma.size()) != e.chart.dim)
    throw std::invalid_argument("tm_connection: one Christoffel matrix per coordinate");
  Connection c{PolyMatrix::identity(e.chart.dim, e.chart.dim), e, std::move(gamma)};
  return c;
}

PolyVec anchor_row(const PolyMatrix& anchor, int i) {
  PolyVec r(anchor.cols(), Poly(anchor.n_vars()));
  for (int u = 0; u < anchor.cols(); ++u) r[u] = anchor.at(i, u);
  return r;
}

PolyVec connection_apply(const Connection& c, int i, const PolyVec& s) {
  PolyVec field = anchor_row(c.anchor, i);
  PolyVec r = c.gamma[i].apply(s);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] += vf_apply(field, s[k]);
  return r;
}

PolyVec connection_apply_vf(const Connection& c, const PolyVec& x, const PolyVec& s) {
  if (static_cast<int>(x.size()) != c.bundle.chart.dim)
    throw std::invalid_argument("connection_apply_vf: field dimension");
  int nv = s.empty() ? (x.empty() ? 0 : x[0].n_vars()) : s[0].n_vars();
  PolyVec r = zero_vec(nv, static_cast<int>(s.size()));
  for (int u = 0; u < c.bundle.chart.dim; ++u) {
    PolyVec du = c.gamma[u].apply(s);
    for (std::size_t k = 0; k < s.size(); ++k)
      du[k] += s[k].diff(u);
    r = r + (x[u] * du);
  }
  return r;
}

Connection dual_connection(const Connection& c) {
  Connection d = c;
  for (auto& g : d.gamma) g = -g.transpose();
  return d;
}

LieAlgebroidModel tangent_algebroid(const Chart& chart) {
  LieAlgebroidModel l;
  l.bundle = {chart, chart.dim};
  l.anchor = PolyMatrix::identity(chart.dim, chart.dim);
  l.structure.assign(chart.dim,
                     std::vector<PolyVec>(chart.dim, zero_vec(chart.dim, chart.dim)));
  return l;
}

LieAlgebroidModel abelian_algebroid(const Chart& chart, int rank) {
  LieAlgebroidModel l;
  l.bundle = {chart, rank};
  l.anchor = PolyMatrix(rank, chart.dim, chart.dim);
  l.structure.assign(rank, std::vector<PolyVec>(rank, zero_vec(chart.dim, rank)));
  return l;
}

PolyVec algebroid_bracket(const LieAlgebroidModel& l, const PolyVec& s, const PolyVec& t) {
  int r = l.bundle.rank, n = l.bundle.chart.dim;
  (void)n;
  PolyVec res = zero_vec(l.anchor.n_vars(), r);
  for (int i = 0; i < r; ++i) {
    PolyVec rho_i = anchor_row(l.anchor, i);
    for (int j = 0; j < r; ++j)
      res = res + ((s[i] * t[j]) * l.structure[i][j]);
    // Leibniz terms.
    for (int k = 0; k < r; ++k) {
      res[k] += s[i] * vf_apply(rho_i, t[k]);
      res[k] -= t[i] * vf_apply(rho_i, s[k]);
    }
  }
  return res;
}

PolyVec algebroid_anchor(const LieAlgebroidModel& l, const PolyVec& s) {
  PolyVec r = zero_vec(l.anchor.n_vars(), l.bundle.chart.dim);
  for (int i = 0; i < l.bundle.rank; ++i)
    for (int u = 0; u < l.bundle.chart.dim; ++u)
      r[u] += s[i] * l.anchor.at(i, u);
  return r;
}

namespace {
PolyVec frame_section(int n_vars, int rank, int i) {
  PolyVec s = zero_vec(n_vars, rank);
  s[i] = Poly::constant(n_vars, Ratio(1));
  return s;
}

std::string residual_summary(const PolyVec& v) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    if (!first) os << ", ";
    first = false;
    os << "[" << k << "] = " << v[k].str();
  }
  return os.str();
}
}  // namespace

Report check_lie_algebroid(const LieAlgebroidModel& l) {
  Report rep{"lie-algebroid"};
  int r = l.bundle.rank;
  int n = l.bundle.chart.dim;
  int nv = l.anchor.n_vars();

  bool antisym = true;
  for (int i = 0; i < r && antisym; ++i)
    for (int j = 0; j < r && antisym; ++j)
      for (int k = 0; k < r; ++k)
        if (!(l.structure[i][j][k] + l.structure[j][i][k]).is_zero()) {
          antisym = false;
          break;
        }
  rep.add("structure-antisymmetry", antisym);

  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      // rho[a_i, a_j] = [rho a_i, rho a_j].
      PolyVec lhs = zero_vec(nv, n);
      for (int m = 0; m < r; ++m)
        lhs = lhs + (l.structure[i][j][m] * anchor_row(l.anchor, m));
      PolyVec rhs = vf_bracket(anchor_row(l.anchor, i), anchor_row(l.anchor, j));
      PolyVec res = lhs - rhs;
      std::ostringstream name;
      name << "anchor-compat(" << i << "," << j << ")";
      rep.add(name.str(), is_zero(res), residual_summary(res));
    }

  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (int k = j + 1; k < r; ++k) {
        PolyVec ai = frame_section(nv, r, i);
        PolyVec aj = frame_section(nv, r, j);
        PolyVec ak = frame_section(nv, r, k);
        PolyVec res =
            algebroid_bracket(l, algebroid_bracket(l, ai, aj), ak) +
            algebroid_bracket(l, algebroid_bracket(l, aj, ak), ai) +
            algebroid_bracket(l, algebroid_bracket(l, ak, ai), aj);
        std::ostringstream name;
        name << "jacobi(" << i << "," << j << "," << k << ")";
        rep.add(name.str(), is_zero(res), residual_summary(res));
      }
  return rep;
}

PolyMatrix connection_curvature(const Connection& c, int i, int j) {
  PolyVec ri = anchor_row(c.anchor, i);
  PolyVec rj = anchor_row(c.anchor, j);
  const PolyMatrix& gi = c.gamma[i];
  const PolyMatrix& gj = c.gamma[j];
  return gj.derive_along(ri) - gi.derive_along(rj) + gi * gj - gj * gi;
}

PolyMatrix algebroid_curvature(const Connection& c, const LieAlgebroidModel& l,
                               int i, int j) {
  PolyMatrix r = connection_curvature(c, i, j);
  for (int m = 0; m < l.bundle.rank; ++m)
    r = r - (l.structure[i][j][m] * c.gamma[m]);
  return r;
}

PolyMatrix hom_connection_apply(const Connection& c0, const Connection& c1,
                                int i, const PolyMatrix& psi) {
  PolyVec field = anchor_row(c0.anchor, i);
  return psi.derive_along(field) + c0.gamma[i] * psi - psi * c1.gamma[i];
}

Report check_fiber_metric(const FiberMetric& m) {
  Report rep{"fiber-metric"};
  rep.add("symmetric", m.g.is_symmetric());
  rep.add("unit-determinant", m.g.has_unit_det(),
          m.g.rows() == m.g.cols() ? m.g.det().str() : "non-square");
  return rep;
}

bool metric_compatibility(const Connection& c, const FiberMetric& m) {
  // Defect D_u = d_u g - G_u^t g - g G_u must vanish for all u.
  for (int u = 0; u < m.bundle.chart.dim; ++u) {
    PolyMatrix defect = m.g.diff(u) - c.gamma[u].transpose() * m.g - m.g * c.gamma[u];
    if (!defect.is_zero()) return false;
  }
  return true;
}

ModuleMorphism star_correspondence(const BundleMorphism& w) {
  if (static_cast<int>(w.base_map.size()) != w.target.chart.dim)
    throw std::invalid_argument("star_correspondence: base map dimension");
  for (const auto& f : w.base_map)
    if (f.n_vars() != w.source.chart.dim)
      throw std::invalid_argument("star_correspondence: base map must be polynomial over the source chart");
  return {w.source, w.target, w.base_map, w.matrix.transpose()};
}

BundleMorphism unstar_correspondence(const ModuleMorphism& m) {
  return {m.source, m.target, m.base_map, m.matrix.transpose()};
}

PolyVec module_apply(const ModuleMorphism& m, const PolyVec& beta) {
  PolyVec pulled(beta.size(), Poly(m.source.chart.dim));
  for (std::size_t i = 0; i < beta.size(); ++i)
    pulled[i] = base_pullback(m.base_map, beta[i]);
  return m.matrix.apply(pulled);
}

Poly base_pullback(const std::vector<Poly>& base_map, const Poly& f) {
  return f.subst(base_map);
}

}  // namespace dvbkit
