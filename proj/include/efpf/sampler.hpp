#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "efpf/params.hpp"
#include "efpf/rng.hpp"

namespace efpf {

// A sampled feature allocation: n individuals (rows), one 0/1 vector per
// realized feature (column). Columns appear in creation order; all-zero
// columns are never stored.
struct FeatureMatrix {
  int n = 0;
  std::vector<std::vector<std::uint8_t>> columns;

  int k() const { return static_cast<int>(columns.size()); }
  std::vector<int> counts() const;
};

// Column bitmasks (row i -> bit i); requires n <= 64.
std::vector<std::uint64_t> matrix_bitmasks(const FeatureMatrix& fm);

// Sequential buffet scheme for the three-parameter IBP: individual i takes
// each existing feature with probability (count - alpha) / (theta + i - 1),
// then brings Poisson(gamma * (alpha+theta)_{i-1} / (1+theta)_{i-1}) new
// ones. RNG consumption order: existing columns in creation order, then the
// Poisson draw.
FeatureMatrix sample_ibp3(const Ibp3Params& p, int n, const RngSpec& spec);

// Beta-Bernoulli: feature j has frequency q_j ~ Beta(-alpha, theta+alpha),
// each individual includes it independently with probability q_j; columns
// that end up all-zero are dropped.
FeatureMatrix sample_beta_bernoulli(const BetaBernoulliParams& p, int n, const RngSpec& spec);

// Relative gap between the buffet take-probability (m - alpha)/(theta+i-1)
// and the conditional probability implied by the allocation law itself,
// pi_i(m+1) / (pi_i(m) + pi_i(m+1)) on a single-feature count vector.
// Requires 1 <= m <= i-1 and gamma > 0 (the ratio is 0/0 at gamma = 0).
double predictive_ratio_check(const Ibp3Params& p, int i, int m);

// Long-run feature-count laws, checked by simulating K_{n_max}.
// Normalized statistics and their limits:
//   three-parameter IBP: K / n^alpha   -> gamma Gamma(theta+1) / (alpha Gamma(alpha+theta))
//   two-parameter IBP:   K / log n     -> gamma * theta
//   Beta-Bernoulli:      K (absorbs)   -> N
// The simulators are distribution-exact shortcuts: the IBP count is a sum of
// independent Poisson contributions (one per row), the Beta-Bernoulli count
// counts geometric first-appearance times <= n_max.
struct Ibp3Law {
  Ibp3Params p;
};
struct Ibp2Law {
  double gamma;
  double theta;
};
struct BbLaw {
  BetaBernoulliParams p;
};
using GrowthLaw = std::variant<Ibp3Law, Ibp2Law, BbLaw>;

struct GrowthLawReport {
  long long n_max = 0;
  int runs = 0;
  double target = 0.0;                // limit of the normalized statistic
  double median = 0.0;                // quantiles of the normalized statistic
  double q25 = 0.0;
  double q75 = 0.0;
  double exact_fraction = 0.0;        // share of runs with K == N (finite laws only; else NaN)
};

// Runs independent simulations (run r uses stream spec.stream + 1 + r) and
// reports quantiles of the normalized statistic at n_max. Parallel across
// runs; the env var EFPF_KIT_THREADS caps the thread count (0 or unset:
// hardware concurrency). Results are identical for every thread count.
// Requires 1 <= n_max <= 1e5 and 1 <= runs <= 1e4.
GrowthLawReport growth_law_check(const GrowthLaw& law, long long n_max, int runs,
                                 const RngSpec& spec);

}  // namespace efpf
