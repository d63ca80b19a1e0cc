#include "dvbkit/poisson2.hpp"

#include <sstream>
#include <stdexcept>

namespace dvbkit {

namespace {
void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Factor lists for the Leibniz expansion: the polynomial coefficient is a
// degree-0 factor, then odd generators ascending, then even generators.
struct Factor {
  int kind;  // 0 coefficient, 1 odd, 2 even
  int index;
  Poly coeff;
  int degree;
};

std::vector<Factor> factors_of(const GradedRing& ring, const GKey& key, const Poly& c) {
  std::vector<Factor> fs;
  fs.push_back({0, -1, c, 0});
  for (int i = 0; i < ring.r_odd; ++i)
    if (key.odd & (1u << i)) fs.push_back({1, i, Poly(ring.n_base), 1});
  for (int j = 0; j < ring.r_even; ++j)
    for (std::uint32_t e = 0; e < key.even[j]; ++e)
      fs.push_back({2, j, Poly(ring.n_base), 2});
  return fs;
}

GradedFunction factor_value(const GradedRing& ring, const Factor& f) {
  switch (f.kind) {
    case 0: return GradedFunction::base(ring, f.coeff);
    case 1: return GradedFunction::odd_gen(ring, f.index);
    default: return GradedFunction::even_gen(ring, f.index);
  }
}

GradedFunction slice_product(const GradedRing& ring, const std::vector<Factor>& fs,
                             std::size_t from, std::size_t to) {
  GradedFunction r = GradedFunction::base(ring, Poly::constant(ring.n_base, Ratio(1)));
  for (std::size_t i = from; i < to; ++i) r = r * factor_value(ring, fs[i]);
  return r;
}

PolyVec anchor_field(const TwoRep& rep, int j) {
  return anchor_row(rep.algebroid.anchor, j);
}

// Base bracket table on factors.
GradedFunction base_bracket(const PoissonStructure2& p, const Factor& a, const Factor& b) {
  const GradedRing& ring = p.ring;
  const TwoRep& rep = p.rep;
  GradedFunction zero(ring);
  if (a.kind == 0 && b.kind == 0) return zero;
  if (a.kind == 0 && b.kind == 1) return zero;
  if (a.kind == 1 && b.kind == 0) return zero;
  if (a.kind == 0 && b.kind == 2)
    return GradedFunction::base(ring, -vf_apply(anchor_field(rep, b.index), a.coeff));
  if (a.kind == 2 && b.kind == 0)
    return GradedFunction::base(ring, vf_apply(anchor_field(rep, a.index), b.coeff));
  if (a.kind == 1 && b.kind == 1)
    return GradedFunction::base(ring, rep.partial.at(b.index, a.index));
  if (a.kind == 2 && b.kind == 1) {
    GradedFunction r(ring);
    for (int k = 0; k < ring.r_odd; ++k)
      r += rep.conn0.gamma[a.index].at(k, b.index) * GradedFunction::odd_gen(ring, k);
    return r;
  }
  if (a.kind == 1 && b.kind == 2) {
    GradedFunction r(ring);
    for (int k = 0; k < ring.r_odd; ++k)
      r -= rep.conn0.gamma[b.index].at(k, a.index) * GradedFunction::odd_gen(ring, k);
    return r;
  }
  // even-even: {eta_i, eta_j} = structure part minus the function of ~R(i,j).
  // Only the skew part of a curvature value can be a degree-2 function; for
  // valid data the two agree, and mutation suites rely on the projection.
  GradedFunction r(ring);
  for (int k = 0; k < ring.r_even; ++k)
    r += rep.algebroid.structure[a.index][b.index][k] *
         GradedFunction::even_gen(ring, k);
  const PolyMatrix& m = rep.curv[a.index][b.index];
  PolyMatrix skew = Ratio(1, 2) * (m - m.transpose());
  r -= section_to_graded(ring, zero_vec(ring.n_base, ring.r_even), skew);
  return r;
}
}  // namespace

PoissonStructure2 make_poisson2(TwoRep rep, bool enforce, int degree_cap) {
  require(rep.e0.rank == rep.e1.rank,
          "make_poisson2: complex must run between a bundle and its dual");
  if (enforce) {
    if (!check_tworep(rep).all_pass())
      throw std::invalid_argument("make_poisson2: representation fails its axioms");
    if (!is_selfdual(rep))
      throw std::invalid_argument("make_poisson2: representation is not self-dual");
  }
  PoissonStructure2 p;
  p.ring = {rep.algebroid.bundle.chart.dim, rep.e1.rank, rep.algebroid.bundle.rank};
  p.rep = std::move(rep);
  p.degree_cap = degree_cap;
  return p;
}

GradedFunction poisson_bracket(const PoissonStructure2& p, const GradedFunction& f,
                               const GradedFunction& g) {
  require(f.ring() == p.ring && g.ring() == p.ring, "poisson_bracket: wrong ring");
  if (f.max_degree() > p.degree_cap || g.max_degree() > p.degree_cap)
    throw std::invalid_argument("poisson_bracket: degree cap exceeded");
  GradedFunction out(p.ring);
  for (const auto& [kf, cf] : f.terms()) {
    std::vector<Factor> fa = factors_of(p.ring, kf, cf);
    for (const auto& [kg, cg] : g.terms()) {
      std::vector<Factor> fb = factors_of(p.ring, kg, cg);
      int deg_b_total = key_degree(kg);
      // {a_1...a_k, b_1...b_l} = sum over factor pairs with Koszul signs.
      int suffix_a = 0;
      for (std::size_t i = 0; i < fa.size(); ++i) suffix_a += fa[i].degree;
      for (std::size_t pi = 0; pi < fa.size(); ++pi) {
        suffix_a -= fa[pi].degree;
        int prefix_b = 0;
        for (std::size_t qi = 0; qi < fb.size(); ++qi) {
          GradedFunction base = base_bracket(p, fa[pi], fb[qi]);
          if (!base.is_zero()) {
            int sign = ((suffix_a * deg_b_total) + (fa[pi].degree * prefix_b)) % 2;
            GradedFunction term =
                slice_product(p.ring, fa, 0, pi) *
                (slice_product(p.ring, fb, 0, qi) * base *
                 slice_product(p.ring, fb, qi + 1, fb.size())) *
                slice_product(p.ring, fa, pi + 1, fa.size());
            out += sign ? -term : term;
          }
          prefix_b += fb[qi].degree;
        }
      }
    }
  }
  return out;
}

Report check_graded_axioms(const PoissonStructure2& p) {
  Report rep{"graded-axioms"};
  const GradedRing& ring = p.ring;
  int n = ring.n_base, r = ring.r_odd, rb = ring.r_even;

  std::vector<std::pair<std::string, GradedFunction>> gens;
  for (int u = 0; u < n; ++u) {
    std::ostringstream name;
    name << "x" << u;
    gens.emplace_back(name.str(), GradedFunction::base(ring, Poly::var(n, u)));
  }
  for (int i = 0; i < r; ++i) {
    std::ostringstream name;
    name << "xi" << i;
    gens.emplace_back(name.str(), GradedFunction::odd_gen(ring, i));
  }
  for (int j = 0; j < rb; ++j) {
    std::ostringstream name;
    name << "eta" << j;
    gens.emplace_back(name.str(), GradedFunction::even_gen(ring, j));
  }
  auto deg = [](const GradedFunction& f) {
    int d = f.max_degree();
    return d < 0 ? 0 : d;
  };

  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a; b < gens.size(); ++b) {
      GradedFunction lhs = poisson_bracket(p, gens[a].second, gens[b].second);
      GradedFunction rhs = poisson_bracket(p, gens[b].second, gens[a].second);
      int s = deg(gens[a].second) * deg(gens[b].second);
      GradedFunction res = s % 2 ? lhs - rhs : lhs + rhs;
      std::ostringstream name;
      name << "skew{" << gens[a].first << "," << gens[b].first << "}";
      rep.add(name.str(), res.is_zero(), res.is_zero() ? "" : res.str());
    }

  // Leibniz route against the Hom-connection route on degree-2 wedges.
  for (int j = 0; j < rb; ++j)
    for (int k = 0; k < r; ++k)
      for (int l = k + 1; l < r; ++l) {
        GradedFunction wedge =
            GradedFunction::odd_gen(ring, k) * GradedFunction::odd_gen(ring, l);
        GradedFunction via_leibniz =
            poisson_bracket(p, GradedFunction::even_gen(ring, j), wedge);
        PolyVec bpart;
        PolyMatrix w;
        graded_to_section(wedge, &bpart, &w);
        PolyMatrix hom = hom_connection_apply(p.rep.conn0, p.rep.conn1, j, w);
        std::ostringstream name;
        name << "leibniz-vs-hom{eta" << j << ",xi" << k << "xi" << l << "}";
        if (!hom.is_antisymmetric()) {
          rep.add(name.str(), false,
                  "Hom-connection image leaves the isotropic module");
          continue;
        }
        GradedFunction via_hom = section_to_graded(ring, zero_vec(n, rb), hom);
        GradedFunction res = via_leibniz - via_hom;
        rep.add(name.str(), res.is_zero(), res.is_zero() ? "" : res.str());
      }

  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a; b < gens.size(); ++b)
      for (std::size_t c = b; c < gens.size(); ++c) {
        const GradedFunction& g1 = gens[a].second;
        const GradedFunction& g2 = gens[b].second;
        const GradedFunction& g3 = gens[c].second;
        GradedFunction res =
            poisson_bracket(p, g1, poisson_bracket(p, g2, g3)) -
            poisson_bracket(p, poisson_bracket(p, g1, g2), g3);
        GradedFunction second = poisson_bracket(p, g2, poisson_bracket(p, g1, g3));
        res -= (deg(g1) * deg(g2)) % 2 ? -second : second;
        std::ostringstream name;
        name << "jacobi{" << gens[a].first << "," << gens[b].first << ","
             << gens[c].first << "}";
        rep.add(name.str(), res.is_zero(), res.is_zero() ? "" : res.str());
      }
  return rep;
}

Report check_bracket_properties(const PoissonStructure2& p, RatRng& rng, int trials) {
  Report rep{"bracket-properties"};
  const GradedRing& ring = p.ring;
  auto random_homogeneous = [&](int degree) {
    GradedFunction f = GradedFunction::base(ring, random_poly(rng, ring.n_base, 1, 2));
    int d = 0;
    while (d < degree) {
      if (degree - d >= 2 && ring.r_even > 0 && rng.index(2) == 0) {
        f = f * GradedFunction::even_gen(ring, rng.index(ring.r_even));
        d += 2;
      } else if (ring.r_odd > 0) {
        f = f * GradedFunction::odd_gen(ring, rng.index(ring.r_odd));
        d += 1;
      } else {
        break;
      }
    }
    return f;
  };
  for (int t = 0; t < trials; ++t) {
    int da = rng.index(4), db = rng.index(4);
    GradedFunction f = random_homogeneous(da);
    GradedFunction g = random_homogeneous(db);
    GradedFunction br = poisson_bracket(p, f, g);
    int fd, gd;
    bool degree_ok = true;
    if (f.is_homogeneous(&fd) && g.is_homogeneous(&gd) && !br.is_zero()) {
      int bd;
      degree_ok = br.is_homogeneous(&bd) && bd == fd + gd - 2;
    }
    std::ostringstream dn;
    dn << "degree-law[" << t << "]";
    rep.add(dn.str(), degree_ok);
    GradedFunction rev = poisson_bracket(p, g, f);
    GradedFunction res = (da * db) % 2 ? br - rev : br + rev;
    std::ostringstream sn;
    sn << "graded-skew[" << t << "]";
    rep.add(sn.str(), res.is_zero());
  }
  return rep;
}

GeneratorTable bracket_table(const PoissonStructure2& p) {
  const GradedRing& ring = p.ring;
  GeneratorTable t;
  t.ring = ring;
  int r = ring.r_odd, rb = ring.r_even, n = ring.n_base;
  t.xi_xi.assign(r, std::vector<Poly>(r, Poly(n)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      t.xi_xi[i][j] = poisson_bracket(p, GradedFunction::odd_gen(ring, i),
                                      GradedFunction::odd_gen(ring, j))
                          .coeff({0, Mono(rb, 0)});
  t.eta_xi.assign(rb, std::vector<GradedFunction>(r, GradedFunction(ring)));
  for (int j = 0; j < rb; ++j)
    for (int i = 0; i < r; ++i)
      t.eta_xi[j][i] = poisson_bracket(p, GradedFunction::even_gen(ring, j),
                                       GradedFunction::odd_gen(ring, i));
  t.eta_eta.assign(rb, std::vector<GradedFunction>(rb, GradedFunction(ring)));
  for (int i = 0; i < rb; ++i)
    for (int j = 0; j < rb; ++j)
      t.eta_eta[i][j] = poisson_bracket(p, GradedFunction::even_gen(ring, i),
                                        GradedFunction::even_gen(ring, j));
  t.eta_x = PolyMatrix(rb, n, n);
  for (int j = 0; j < rb; ++j)
    for (int u = 0; u < n; ++u)
      t.eta_x.at(j, u) = poisson_bracket(p, GradedFunction::even_gen(ring, j),
                                         GradedFunction::base(ring, Poly::var(n, u)))
                             .coeff({0, Mono(rb, 0)});
  return t;
}

bool tables_equal(const GeneratorTable& a, const GeneratorTable& b) {
  if (!(a.ring == b.ring)) return false;
  for (int i = 0; i < a.ring.r_odd; ++i)
    for (int j = 0; j < a.ring.r_odd; ++j)
      if (!(a.xi_xi[i][j] == b.xi_xi[i][j])) return false;
  for (int j = 0; j < a.ring.r_even; ++j)
    for (int i = 0; i < a.ring.r_odd; ++i)
      if (!(a.eta_xi[j][i] == b.eta_xi[j][i])) return false;
  for (int i = 0; i < a.ring.r_even; ++i)
    for (int j = 0; j < a.ring.r_even; ++j)
      if (!(a.eta_eta[i][j] == b.eta_eta[i][j])) return false;
  return a.eta_x == b.eta_x;
}

TwoRep rep_from_bracket(const Chart& chart, const GeneratorTable& table) {
  const GradedRing& ring = table.ring;
  require(ring.n_base == chart.dim, "rep_from_bracket: chart mismatch");
  int r = ring.r_odd, rb = ring.r_even, n = ring.n_base;

  LieAlgebroidModel b = abelian_algebroid(chart, rb);
  b.anchor = table.eta_x;
  PolyMatrix partial(r, r, n);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) partial.at(k, i) = table.xi_xi[i][k];

  std::vector<PolyMatrix> gamma0(rb, PolyMatrix(r, r, n));
  for (int j = 0; j < rb; ++j)
    for (int i = 0; i < r; ++i) {
      const GradedFunction& v = table.eta_xi[j][i];
      int d;
      if (!v.is_homogeneous(&d) || (!v.is_zero() && d != 1))
        throw std::invalid_argument("rep_from_bracket: table does not close on degree-1 generators");
      for (int k = 0; k < r; ++k) gamma0[j].at(k, i) = v.coeff({1u << k, Mono(rb, 0)});
    }

  std::vector<std::vector<PolyMatrix>> curv(rb,
                                            std::vector<PolyMatrix>(rb, PolyMatrix(r, r, n)));
  for (int i = 0; i < rb; ++i)
    for (int j = 0; j < rb; ++j) {
      PolyVec cpart;
      PolyMatrix w;
      graded_to_section(table.eta_eta[i][j], &cpart, &w);  // throws if not degree 2
      b.structure[i][j] = cpart;
      curv[i][j] = -w;
    }

  std::vector<PolyMatrix> gamma1;
  for (int j = 0; j < rb; ++j) gamma1.push_back(-gamma0[j].transpose());
  return make_tworep(std::move(b), {chart, r}, {chart, r}, std::move(partial),
                     std::move(gamma0), std::move(gamma1), std::move(curv));
}

bool is_symplectic(const PoissonStructure2& p) {
  const PolyMatrix& anchor = p.rep.algebroid.anchor;
  if (anchor.rows() != anchor.cols()) return false;
  if (!anchor.has_unit_det()) return false;
  return p.rep.partial.has_unit_det();
}

PoissonStructure2 symplectic_from_metric_bundle(const FiberMetric& g,
                                                const Connection& metric_conn) {
  if (!metric_compatibility(metric_conn, g))
    throw std::invalid_argument("symplectic_from_metric_bundle: connection is not metric");
  const Chart& chart = g.bundle.chart;
  int n = chart.dim, r = g.bundle.rank;
  LieAlgebroidModel tm = tangent_algebroid(chart);
  PolyMatrix ginv = g.g.inverse();
  // Connection induced on Q* = E* under the metric identification:
  // Gamma'_u = g Gamma_u g^{-1} - (d_u g) g^{-1}.
  std::vector<PolyMatrix> gamma0;
  for (int u = 0; u < n; ++u)
    gamma0.push_back(g.g * metric_conn.gamma[u] * ginv - g.g.diff(u) * ginv);
  std::vector<std::vector<PolyMatrix>> curv(
      n, std::vector<PolyMatrix>(n, PolyMatrix(r, r, n)));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      curv[u][v] = g.g * connection_curvature(metric_conn, u, v);
  TwoRep rep = make_tworep(tm, {chart, r}, {chart, r}, ginv, std::move(gamma0),
                           metric_conn.gamma, std::move(curv));
  return make_poisson2(std::move(rep));
}

// --- dual linear Poisson ------------------------------------------------------

LinearPoissonOnD::LinearPoissonOnD(InvolutiveDVB host, TwoRep rep)
    : host_(std::move(host)), rep_(std::move(rep)), real_(rep_) {
  require(host_.kappa.is_zero(),
          "LinearPoissonOnD: host must carry an involutive decomposition");
  require(rep_.e1.rank == host_.host.side_a.rank &&
              rep_.e0.rank == host_.host.side_a.rank &&
              rep_.algebroid.bundle.rank == host_.host.core.rank,
          "LinearPoissonOnD: representation does not match the host");
}

Poly LinearPoissonOnD::function_of(const DGen& g) const {
  switch (g.kind) {
    case DGen::kChi: {
      LinearSection chi;
      chi.over = Side::A;
      chi.base = g.b;
      chi.core_part = g.w;
      return ell_of_section(host_, chi);
    }
    case DGen::kCoreEll:
      return pi2_ell(host_, g.tau);
    case DGen::kPi1Ell:
      return pi1_ell(host_, g.tau);
    default:
      return base_fn(host_, g.f);
  }
}

std::pair<DGen, Ratio> LinearPoissonOnD::involution_image(const DGen& g) const {
  switch (g.kind) {
    case DGen::kChi:
      return {g, Ratio(-1)};
    case DGen::kCoreEll: {
      DGen out = g;
      out.kind = DGen::kPi1Ell;
      return {out, Ratio(1)};
    }
    case DGen::kPi1Ell: {
      DGen out = g;
      out.kind = DGen::kCoreEll;
      return {out, Ratio(1)};
    }
    default:
      return {g, Ratio(1)};
  }
}

namespace {
// Embeds a function on the total space of Q ([x | y]) through pi_1.
Poly embed_pi1(const DRing& ring, const Poly& f) {
  int nv = ring.vars();
  std::vector<Poly> images(f.n_vars(), Poly(nv));
  for (int u = 0; u < ring.n; ++u) images[u] = Poly::var(nv, ring.x(u));
  for (int i = 0; i < ring.rq; ++i) images[ring.n + i] = Poly::var(nv, ring.q1(i));
  return f.subst(images);
}

// ell of a general section of the dual bundle over Q, as a function on D.
Poly ell_of_fibered(const InvolutiveDVB& host, const FiberedSection& s) {
  DRing ring = d_ring(host);
  int nv = ring.vars();
  Poly out(nv);
  for (std::size_t p = 0; p < s.lin.size(); ++p)
    out += embed_pi1(ring, s.lin[p]) * Poly::var(nv, ring.be(static_cast<int>(p)));
  for (std::size_t k = 0; k < s.core.size(); ++k)
    out += embed_pi1(ring, s.core[k]) * Poly::var(nv, ring.q2(static_cast<int>(k)));
  return out;
}
}  // namespace

Poly LinearPoissonOnD::bracket(const DGen& g1, const DGen& g2) const {
  DRing ring = d_ring(host_);
  int nv = ring.vars();
  auto chi_section = [&](const DGen& g) {
    FiberedSection s = real_.core_linear(g.w);
    for (std::size_t p = 0; p < g.b.size(); ++p)
      s.lin[p] = g.b[p].promote(real_.vars(), 0);
    return s;
  };
  auto core_section = [&](const DGen& g) {
    FiberedSection s = real_.zero_section();
    for (std::size_t k = 0; k < g.tau.size(); ++k)
      s.core[k] = g.tau[k].promote(real_.vars(), 0);
    return s;
  };
  auto fiber_linear = [&](const PolyVec& tau) {
    Poly f(real_.vars());
    for (std::size_t i = 0; i < tau.size(); ++i)
      f += tau[i].promote(real_.vars(), 0) * Poly::var(real_.vars(), real_.n_base() + static_cast<int>(i));
    return f;
  };

  if (g1.kind > g2.kind) {
    Poly r = bracket(g2, g1);
    return -r;
  }
  switch (g1.kind) {
    case DGen::kChi:
      switch (g2.kind) {
        case DGen::kChi:
          return ell_of_fibered(host_, real_.bracket(chi_section(g1), chi_section(g2)));
        case DGen::kCoreEll:
          return ell_of_fibered(host_, real_.bracket(chi_section(g1), core_section(g2)));
        case DGen::kPi1Ell:
          return embed_pi1(ring, real_.vf_apply_fn(real_.anchor(chi_section(g1)),
                                                   fiber_linear(g2.tau)));
        default:
          return embed_pi1(ring, real_.vf_apply_fn(real_.anchor(chi_section(g1)),
                                                   g2.f.promote(real_.vars(), 0)));
      }
    case DGen::kCoreEll:
      switch (g2.kind) {
        case DGen::kCoreEll:
          return ell_of_fibered(host_, real_.bracket(core_section(g1), core_section(g2)));
        case DGen::kPi1Ell:
          return embed_pi1(ring, real_.vf_apply_fn(real_.anchor(core_section(g1)),
                                                   fiber_linear(g2.tau)));
        default:
          return embed_pi1(ring, real_.vf_apply_fn(real_.anchor(core_section(g1)),
                                                   g2.f.promote(real_.vars(), 0)));
      }
    default:
      // Pullbacks through pi_1 (fiber-linear or basic) commute.
      return Poly(nv);
  }
}

std::vector<std::pair<std::string, DGen>> LinearPoissonOnD::generator_instances() const {
  std::vector<std::pair<std::string, DGen>> out;
  int n = host_.host.chart.dim;
  int rq = host_.host.side_a.rank, rb = host_.host.core.rank;
  for (int j = 0; j < rb; ++j) {
    DGen g;
    g.kind = DGen::kChi;
    g.b = zero_vec(n, rb);
    g.b[j] = Poly::constant(n, Ratio(1));
    g.w = PolyMatrix(rq, rq, n);
    std::ostringstream name;
    name << "ell(sigma" << j << ")";
    out.emplace_back(name.str(), g);
  }
  for (int k = 0; k < rq; ++k)
    for (int l = k + 1; l < rq; ++l) {
      DGen g;
      g.kind = DGen::kChi;
      g.b = zero_vec(n, rb);
      g.w = PolyMatrix(rq, rq, n);
      g.w.at(l, k) = Poly::constant(n, Ratio(1));
      g.w.at(k, l) = Poly::constant(n, Ratio(-1));
      std::ostringstream name;
      name << "ell(wedge" << k << l << ")";
      out.emplace_back(name.str(), g);
    }
  for (int i = 0; i < rq; ++i) {
    DGen g;
    g.kind = DGen::kCoreEll;
    g.tau = zero_vec(n, rq);
    g.tau[i] = Poly::constant(n, Ratio(1));
    std::ostringstream n1;
    n1 << "ell(core" << i << ")";
    out.emplace_back(n1.str(), g);
    DGen h = g;
    h.kind = DGen::kPi1Ell;
    std::ostringstream n2;
    n2 << "pi1-ell(tau" << i << ")";
    out.emplace_back(n2.str(), h);
  }
  for (int u = 0; u < n; ++u) {
    DGen g;
    g.kind = DGen::kBase;
    g.f = Poly::var(n, u);
    std::ostringstream name;
    name << "pi1(x" << u << ")";
    out.emplace_back(name.str(), g);
  }
  return out;
}

LinearPoissonOnD dual_linear_poisson(const InvolutiveDVB& host, const TwoRep& rep) {
  return LinearPoissonOnD(host, rep);
}

Report anti_poisson_report(const LinearPoissonOnD& l) {
  Report rep{"anti-poisson"};
  auto gens = l.generator_instances();
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a; b < gens.size(); ++b) {
      auto [ia, sa] = l.involution_image(gens[a].second);
      auto [ib, sb] = l.involution_image(gens[b].second);
      Poly lhs = l.bracket(ia, ib) * (sa * sb);
      Poly rhs = -involution_pullback(l.host(), l.bracket(gens[a].second, gens[b].second));
      std::ostringstream name;
      name << "anti-poisson{" << gens[a].first << "," << gens[b].first << "}";
      Poly res = lhs - rhs;
      rep.add(name.str(), res.is_zero(), res.is_zero() ? "" : res.str());
    }
  return rep;
}

namespace {
// Extracts the generator table of the split bracket from the geometric one.
GeneratorTable extract_table(const LinearPoissonOnD& l) {
  const InvolutiveDVB& host = l.host();
  DRing ring = d_ring(host);
  int n = ring.n, rq = ring.rq, rb = ring.rb;
  GradedRing gr{n, rq, rb};
  GeneratorTable t;
  t.ring = gr;

  auto chi_gen = [&](int j) {
    DGen g;
    g.kind = DGen::kChi;
    g.b = zero_vec(n, rb);
    g.b[j] = Poly::constant(n, Ratio(1));
    g.w = PolyMatrix(rq, rq, n);
    return g;
  };
  auto core_gen = [&](int i) {
    DGen g;
    g.kind = DGen::kCoreEll;
    g.tau = zero_vec(n, rq);
    g.tau[i] = Poly::constant(n, Ratio(1));
    return g;
  };
  auto pi1_gen = [&](int i) {
    DGen g = core_gen(i);
    g.kind = DGen::kPi1Ell;
    return g;
  };
  int total_tail = ring.vars() - n;
  auto to_base = [&](const Poly& f) {
    return coeff_of_tail(f, n, Mono(total_tail, 0));
  };
  auto coeff_of = [&](const Poly& f, int var) {
    Mono tail(total_tail, 0);
    tail[var - n] = 1;
    return coeff_of_tail(f, n, tail);
  };

  t.xi_xi.assign(rq, std::vector<Poly>(rq, Poly(n)));
  for (int i = 0; i < rq; ++i)
    for (int j = 0; j < rq; ++j)
      t.xi_xi[i][j] = to_base(l.bracket(core_gen(i), pi1_gen(j)));

  t.eta_xi.assign(rb, std::vector<GradedFunction>(rq, GradedFunction(gr)));
  for (int j = 0; j < rb; ++j)
    for (int i = 0; i < rq; ++i) {
      Poly v = l.bracket(chi_gen(j), core_gen(i));
      GradedFunction acc(gr);
      for (int k = 0; k < rq; ++k)
        acc += coeff_of(v, ring.q2(k)) * GradedFunction::odd_gen(gr, k);
      t.eta_xi[j][i] = acc;
    }

  t.eta_eta.assign(rb, std::vector<GradedFunction>(rb, GradedFunction(gr)));
  for (int i = 0; i < rb; ++i)
    for (int j = 0; j < rb; ++j) {
      Poly v = l.bracket(chi_gen(i), chi_gen(j));
      PolyVec bpart = zero_vec(n, rb);
      for (int k = 0; k < rb; ++k) bpart[k] = coeff_of(v, ring.be(k));
      PolyMatrix w(rq, rq, n);
      for (int a = 0; a < rq; ++a)
        for (int b = 0; b < rq; ++b) {
          Mono tail(total_tail, 0);
          tail[ring.q1(a) - n] += 1;
          tail[ring.q2(b) - n] += 1;
          w.at(b, a) = coeff_of_tail(v, n, tail);
        }
      t.eta_eta[i][j] = section_to_graded(gr, bpart, w);
    }

  t.eta_x = PolyMatrix(rb, n, n);
  for (int j = 0; j < rb; ++j)
    for (int u = 0; u < n; ++u) {
      DGen g;
      g.kind = DGen::kBase;
      g.f = Poly::var(n, u);
      t.eta_x.at(j, u) = to_base(l.bracket(chi_gen(j), g));
    }
  return t;
}

bool reps_equal(const TwoRep& a, const TwoRep& b) {
  if (!(a.partial == b.partial)) return false;
  if (!(a.algebroid.anchor == b.algebroid.anchor)) return false;
  int ra = a.algebroid.bundle.rank;
  if (ra != b.algebroid.bundle.rank) return false;
  for (int i = 0; i < ra; ++i) {
    if (!(a.conn0.gamma[i] == b.conn0.gamma[i])) return false;
    if (!(a.conn1.gamma[i] == b.conn1.gamma[i])) return false;
    for (int j = 0; j < ra; ++j) {
      if (!(a.curv[i][j] == b.curv[i][j])) return false;
      if (!is_zero(a.algebroid.structure[i][j] - b.algebroid.structure[i][j]))
        return false;
    }
  }
  return true;
}
}  // namespace

Report poisson_roundtrip(const PoissonStructure2& p) {
  Report rep{"poisson-roundtrip"};
  const Chart& chart = p.rep.algebroid.bundle.chart;
  InvolutiveDVB host = make_involutive_dvb(
      chart, p.ring.r_odd, p.ring.r_even,
      PolyCube(p.ring.r_odd, p.ring.r_odd, p.ring.r_even, chart.dim));
  LinearPoissonOnD l = dual_linear_poisson(host, p.rep);

  GeneratorTable extracted = extract_table(l);
  rep.add("algebra-table-restored", tables_equal(extracted, bracket_table(p)));

  TwoRep back = rep_from_bracket(chart, extracted);
  rep.add("representation-restored", reps_equal(back, p.rep));

  LinearPoissonOnD l2 = dual_linear_poisson(host, back);
  bool geo_ok = true;
  auto gens = l.generator_instances();
  for (std::size_t a = 0; a < gens.size() && geo_ok; ++a)
    for (std::size_t b = a; b < gens.size() && geo_ok; ++b)
      geo_ok = (l.bracket(gens[a].second, gens[b].second) -
                l2.bracket(gens[a].second, gens[b].second))
                   .is_zero();
  rep.add("geometric-table-restored", geo_ok);
  return rep;
}

Report poisson_roundtrip(const LinearPoissonOnD& l) {
  Report rep{"poisson-roundtrip"};
  const Chart& chart = l.host().host.chart;
  GeneratorTable t = extract_table(l);
  TwoRep back = rep_from_bracket(chart, t);
  LinearPoissonOnD l2 = dual_linear_poisson(l.host(), back);
  bool ok = true;
  auto gens = l.generator_instances();
  for (std::size_t a = 0; a < gens.size() && ok; ++a)
    for (std::size_t b = a; b < gens.size() && ok; ++b)
      ok = (l.bracket(gens[a].second, gens[b].second) -
            l2.bracket(gens[a].second, gens[b].second))
               .is_zero();
  rep.add("geometric-table-restored", ok);
  rep.add("representation-restored", reps_equal(back, l.rep()));
  return rep;
}

}  // namespace dvbkit
