#include "dvbkit/sample.hpp"

#include <set>

namespace dvbkit {

SamplePlan make_plan(std::uint64_t seed, int count, int n_vars) {
  SamplePlan plan;
  plan.seed = seed;
  RatRng rng(seed);
  std::set<std::vector<Ratio>> seen;
  int guard = 0;
  while (static_cast<int>(plan.points.size()) < count) {
    std::vector<Ratio> pt(n_vars);
    for (int i = 0; i < n_vars; ++i) pt[i] = rng.small(9);
    if (n_vars == 0) {
      // Dimension zero has a single point; a plan there is one empty point.
      plan.points.push_back(pt);
      break;
    }
    if (seen.insert(pt).second) plan.points.push_back(pt);
    if (++guard > 100 * count + 100) break;  // cannot happen for n_vars >= 1
  }
  return plan;
}

OracleResult oracle_equal(const Poly& p, const Poly& q, const SamplePlan& plan) {
  Poly d = p - q;
  for (const auto& pt : plan.points) {
    if (d.eval(pt) != 0) return {false, pt};
  }
  return {true, std::nullopt};
}

bool check_equal(const Poly& p, const Poly& q, const SamplePlan& plan) {
  if (p.term_count() <= kSymbolicTermLimit && q.term_count() <= kSymbolicTermLimit)
    return p == q;
  return oracle_equal(p, q, plan).equal;
}

Ratio RatRng::small(int bound) {
  // Engine output is consumed in a fixed order, so plans are reproducible.
  std::int64_t span = 2 * bound + 1;
  std::int64_t num = static_cast<std::int64_t>(eng_() % span) - bound;
  std::int64_t den = static_cast<std::int64_t>(eng_() % 3) + 1;
  return Ratio(num, den);
}

Ratio RatRng::small_nonzero(int bound) {
  for (;;) {
    Ratio r = small(bound);
    if (r != 0) return r;
  }
}

int RatRng::index(int n) {
  if (n <= 0) return 0;
  return static_cast<int>(eng_() % static_cast<std::uint64_t>(n));
}

Poly random_poly(RatRng& rng, int n_vars, int max_degree, int density) {
  Poly p(n_vars);
  for (int t = 0; t < density; ++t) {
    Mono m(n_vars, 0);
    int budget = rng.index(max_degree + 1);
    for (int d = 0; d < budget && n_vars > 0; ++d) m[rng.index(n_vars)] += 1;
    p.add_term(m, rng.small(3));
  }
  return p;
}

}  // namespace dvbkit
