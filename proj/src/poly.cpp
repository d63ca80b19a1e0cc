#include "dvbkit/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace dvbkit {

std::string to_string(const Ratio& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

std::optional<Ratio> parse_ratio(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Ratio(Int(text));
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den == 0) return std::nullopt;
    return Ratio(num, den);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

Poly Poly::constant(int n_vars, const Ratio& c) {
  Poly p(n_vars);
  p.add_term(Mono(n_vars, 0), c);
  return p;
}

Poly Poly::var(int n_vars, int i, const Ratio& coeff) {
  if (i < 0 || i >= n_vars) throw std::out_of_range("Poly::var: index");
  Mono m(n_vars, 0);
  m[i] = 1;
  Poly p(n_vars);
  p.add_term(m, coeff);
  return p;
}

Poly Poly::term(int n_vars, const Mono& mono, const Ratio& c) {
  if (static_cast<int>(mono.size()) != n_vars)
    throw std::invalid_argument("Poly::term: exponent vector length");
  Poly p(n_vars);
  p.add_term(mono, c);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Mono& m = terms_.begin()->first;
  for (auto e : m)
    if (e != 0) return false;
  return true;
}

Ratio Poly::constant_value() const {
  if (terms_.empty()) return Ratio(0);
  auto it = terms_.find(Mono(n_vars_, 0));
  return it == terms_.end() ? Ratio(0) : it->second;
}

int Poly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (auto e : m) s += static_cast<int>(e);
    if (s > d) d = s;
  }
  return d;
}

void Poly::add_term(const Mono& mono, const Ratio& c) {
  if (static_cast<int>(mono.size()) != n_vars_)
    throw std::invalid_argument("Poly::add_term: exponent vector length");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(n_vars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (n_vars_ != o.n_vars_)
    throw std::invalid_argument("Poly: mixed variable counts");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (n_vars_ != o.n_vars_)
    throw std::invalid_argument("Poly: mixed variable counts");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.n_vars_ != b.n_vars_)
    throw std::invalid_argument("Poly: mixed variable counts");
  Poly r(a.n_vars_);
  Mono m(a.n_vars_, 0);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (int i = 0; i < a.n_vars_; ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

Poly operator*(const Poly& p, const Ratio& c) {
  Poly r(p.n_vars_);
  if (c == 0) return r;
  for (const auto& [m, pc] : p.terms_) r.terms_.emplace(m, pc * c);
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly r = Poly::constant(n_vars_, Ratio(1));
  for (unsigned i = 0; i < k; ++i) r = r * (*this);
  return r;
}

Poly Poly::diff(int i) const {
  if (i < 0 || i >= n_vars_) throw std::out_of_range("Poly::diff: index");
  Poly r(n_vars_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Mono d = m;
    d[i] -= 1;
    r.add_term(d, c * Ratio(m[i]));
  }
  return r;
}

Ratio Poly::eval(std::span<const Ratio> point) const {
  if (static_cast<int>(point.size()) != n_vars_)
    throw std::invalid_argument("Poly::eval: point dimension");
  Ratio acc(0);
  for (const auto& [m, c] : terms_) {
    Ratio t = c;
    for (int i = 0; i < n_vars_; ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) t *= point[i];
    acc += t;
  }
  return acc;
}

double Poly::eval_double(std::span<const double> point) const {
  double acc = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = static_cast<double>(c);
    for (int i = 0; i < n_vars_; ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) t *= point[i];
    acc += t;
  }
  return acc;
}

Poly Poly::subst(const std::vector<Poly>& images) const {
  if (static_cast<int>(images.size()) != n_vars_)
    throw std::invalid_argument("Poly::subst: image count");
  int target = images.empty() ? 0 : images[0].n_vars();
  for (const auto& im : images)
    if (im.n_vars() != target)
      throw std::invalid_argument("Poly::subst: image variable counts");
  Poly r(target);
  for (const auto& [m, c] : terms_) {
    Poly t = Poly::constant(target, c);
    for (int i = 0; i < n_vars_; ++i)
      if (m[i] > 0) t = t * images[i].pow(m[i]);
    r += t;
  }
  return r;
}

Poly Poly::promote(int n_total, int offset) const {
  if (offset < 0 || offset + n_vars_ > n_total)
    throw std::invalid_argument("Poly::promote: range");
  Poly r(n_total);
  Mono m(n_total, 0);
  for (const auto& [mo, c] : terms_) {
    std::fill(m.begin(), m.end(), 0);
    for (int i = 0; i < n_vars_; ++i) m[offset + i] = mo[i];
    r.add_term(m, c);
  }
  return r;
}

std::string Poly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c);
    for (int i = 0; i < n_vars_; ++i) {
      if (m[i] == 0) continue;
      os << "*";
      if (i < static_cast<int>(names.size()))
        os << names[i];
      else
        os << "x" << i;
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

Poly zero_poly(int n_vars) { return Poly(n_vars); }

PolyVec zero_vec(int n_vars, int len) {
  return PolyVec(len, Poly(n_vars));
}

PolyVec operator+(const PolyVec& a, const PolyVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("PolyVec+: lengths");
  PolyVec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

PolyVec operator-(const PolyVec& a, const PolyVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("PolyVec-: lengths");
  PolyVec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

PolyVec operator*(const Poly& f, const PolyVec& v) {
  PolyVec r = v;
  for (auto& p : r) p = f * p;
  return r;
}

bool is_zero(const PolyVec& v) {
  for (const auto& p : v)
    if (!p.is_zero()) return false;
  return true;
}

Poly dot(const PolyVec& a, const PolyVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: lengths");
  if (a.empty()) return Poly(0);
  Poly r(a[0].n_vars());
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

Poly coeff_of_tail(const Poly& p, int base_vars, const Mono& tail) {
  int tail_vars = p.n_vars() - base_vars;
  if (tail_vars < 0 || static_cast<int>(tail.size()) != tail_vars)
    throw std::invalid_argument("coeff_of_tail: shape");
  Poly r(base_vars);
  for (const auto& [m, c] : p.terms()) {
    bool match = true;
    for (int i = 0; i < tail_vars; ++i)
      if (m[base_vars + i] != tail[i]) {
        match = false;
        break;
      }
    if (!match) continue;
    Mono head(m.begin(), m.begin() + base_vars);
    r.add_term(head, c);
  }
  return r;
}

}  // namespace dvbkit
