#include "dvbkit/graded.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace dvbkit {

int key_degree(const GKey& k) {
  int d = std::popcount(k.odd);
  for (auto e : k.even) d += 2 * static_cast<int>(e);
  return d;
}

GradedFunction GradedFunction::base(const GradedRing& ring, const Poly& f) {
  if (f.n_vars() != ring.n_base)
    throw std::invalid_argument("GradedFunction::base: wrong base ring");
  GradedFunction g(ring);
  g.add_term({0, Mono(ring.r_even, 0)}, f);
  return g;
}

GradedFunction GradedFunction::odd_gen(const GradedRing& ring, int i) {
  if (i < 0 || i >= ring.r_odd) throw std::out_of_range("odd_gen");
  GradedFunction g(ring);
  g.add_term({1u << i, Mono(ring.r_even, 0)},
             Poly::constant(ring.n_base, Ratio(1)));
  return g;
}

GradedFunction GradedFunction::even_gen(const GradedRing& ring, int j) {
  if (j < 0 || j >= ring.r_even) throw std::out_of_range("even_gen");
  GradedFunction g(ring);
  Mono even(ring.r_even, 0);
  even[j] = 1;
  g.add_term({0, even}, Poly::constant(ring.n_base, Ratio(1)));
  return g;
}

int GradedFunction::max_degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, key_degree(k));
  return d;
}

bool GradedFunction::is_homogeneous(int* degree) const {
  int d = -1;
  for (const auto& [k, c] : terms_) {
    int kd = key_degree(k);
    if (d == -1) d = kd;
    if (kd != d) return false;
  }
  if (degree) *degree = d;
  return true;
}

void GradedFunction::add_term(const GKey& key, const Poly& coeff) {
  if (coeff.n_vars() != ring_.n_base)
    throw std::invalid_argument("GradedFunction::add_term: coefficient ring");
  if (static_cast<int>(key.even.size()) != ring_.r_even)
    throw std::invalid_argument("GradedFunction::add_term: even block size");
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly GradedFunction::coeff(const GKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Poly(ring_.n_base) : it->second;
}

GradedFunction GradedFunction::operator-() const {
  GradedFunction g(ring_);
  for (const auto& [k, c] : terms_) g.terms_.emplace(k, -c);
  return g;
}

GradedFunction& GradedFunction::operator+=(const GradedFunction& o) {
  if (!(ring_ == o.ring_)) {
    if (terms_.empty() && ring_.n_base == 0 && ring_.r_odd == 0 && ring_.r_even == 0)
      ring_ = o.ring_;
    else
      throw std::invalid_argument("GradedFunction: mixed rings");
  }
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

GradedFunction& GradedFunction::operator-=(const GradedFunction& o) {
  return *this += -o;
}

int odd_product_sign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  // Count inversions: pairs (i in a, j in b) with i > j.
  int inversions = 0;
  for (std::uint32_t j = b; j; j &= j - 1) {
    int bit = std::countr_zero(j);
    std::uint32_t mask = ~((2u << bit) - 1u);
    inversions += std::popcount(a & mask);
  }
  return inversions % 2 == 0 ? 1 : -1;
}

GradedFunction operator*(const GradedFunction& a, const GradedFunction& b) {
  if (!(a.ring_ == b.ring_))
    throw std::invalid_argument("GradedFunction*: mixed rings");
  GradedFunction r(a.ring_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      int sign = odd_product_sign(ka.odd, kb.odd);
      if (sign == 0) continue;
      GKey k;
      k.odd = ka.odd | kb.odd;
      k.even = ka.even;
      for (std::size_t j = 0; j < k.even.size(); ++j) k.even[j] += kb.even[j];
      Poly c = ca * cb;
      if (sign < 0) c = -c;
      r.add_term(k, c);
    }
  return r;
}

GradedFunction operator*(const Poly& f, const GradedFunction& a) {
  GradedFunction r(a.ring_);
  for (const auto& [k, c] : a.terms_) r.add_term(k, f * c);
  return r;
}

GradedFunction operator*(const GradedFunction& a, const Ratio& c) {
  GradedFunction r(a.ring_);
  for (const auto& [k, p] : a.terms_) r.add_term(k, p * c);
  return r;
}

std::string GradedFunction::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (int i = 0; i < ring_.r_odd; ++i)
      if (k.odd & (1u << i)) os << "*xi" << i;
    for (int j = 0; j < ring_.r_even; ++j)
      for (std::uint32_t e = 0; e < k.even[j]; ++e) os << "*eta" << j;
  }
  return os.str();
}

GradedFunction section_to_graded(const GradedRing& ring, const PolyVec& base_b,
                                 const PolyMatrix& w) {
  if (static_cast<int>(base_b.size()) != ring.r_even ||
      w.rows() != ring.r_odd || w.cols() != ring.r_odd)
    throw std::invalid_argument("section_to_graded: shapes");
  if (!w.is_antisymmetric())
    throw std::invalid_argument("section_to_graded: section map must be antisymmetric");
  GradedFunction g(ring);
  for (int j = 0; j < ring.r_even; ++j) {
    Mono even(ring.r_even, 0);
    even[j] = 1;
    g.add_term({0, even}, base_b[j]);
  }
  Mono none(ring.r_even, 0);
  for (int k = 0; k < ring.r_odd; ++k)
    for (int l = k + 1; l < ring.r_odd; ++l)
      g.add_term({(1u << k) | (1u << l), none}, -w.at(k, l));
  return g;
}

void graded_to_section(const GradedFunction& f, PolyVec* base_b, PolyMatrix* w) {
  const GradedRing& ring = f.ring();
  *base_b = zero_vec(ring.n_base, ring.r_even);
  *w = PolyMatrix(ring.r_odd, ring.r_odd, ring.n_base);
  for (const auto& [k, c] : f.terms()) {
    if (key_degree(k) != 2)
      throw std::invalid_argument("graded_to_section: not homogeneous of degree 2");
    if (k.odd == 0) {
      for (int j = 0; j < ring.r_even; ++j)
        if (k.even[j] == 1) (*base_b)[j] += c;
    } else {
      int lo = std::countr_zero(k.odd);
      std::uint32_t rest = k.odd & (k.odd - 1);
      int hi = std::countr_zero(rest);
      w->at(lo, hi) -= c;
      w->at(hi, lo) += c;
    }
  }
}

}  // namespace dvbkit
