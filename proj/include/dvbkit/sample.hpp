// Seeded rational sample plans and the point-evaluation equality oracle.
//
// Symbolic normal-form equality is the default assertion everywhere; the
// oracle exists for spot checks and for expressions whose expansion would
// exceed kSymbolicTermLimit terms.
#pragma once

#include "dvbkit/poly.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace dvbkit {

inline constexpr std::size_t kSymbolicTermLimit = 100000;

struct SamplePlan {
  std::uint64_t seed = 42;
  std::vector<std::vector<Ratio>> points;
};

// Deterministic, pairwise-distinct rational points in dimension n_vars.
// Equal seeds give identical plans.
SamplePlan make_plan(std::uint64_t seed, int count, int n_vars);

struct OracleResult {
  bool equal = true;
  std::optional<std::vector<Ratio>> witness;  // first failing point
};

// True iff p - q evaluates to zero at every plan point.
OracleResult oracle_equal(const Poly& p, const Poly& q, const SamplePlan& plan);

// Symbolic equality when both operands stay under kSymbolicTermLimit terms,
// the sampling oracle beyond it.
bool check_equal(const Poly& p, const Poly& q, const SamplePlan& plan);

// Deterministic rational fuzz helper shared by generators and suites.
// Values are small (numerators in [-bound, bound], denominators in {1,2,3}).
class RatRng {
 public:
  explicit RatRng(std::uint64_t seed) : eng_(seed) {}
  Ratio small(int bound = 4);
  Ratio small_nonzero(int bound = 4);
  std::uint64_t raw() { return eng_(); }
  int index(int n);  // uniform-ish in [0, n)

 private:
  std::mt19937_64 eng_;
};

// Random polynomial of total degree <= max_degree with small coefficients;
// density controls how many monomials are attempted.
Poly random_poly(RatRng& rng, int n_vars, int max_degree, int density = 3);

}  // namespace dvbkit
