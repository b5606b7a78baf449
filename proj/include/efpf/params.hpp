#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace efpf {

// Admissible (alpha, theta) pair for the two-parameter weight family:
// alpha < 1 and theta > -alpha. alpha in (0,1) is the heavy-tailed regime,
// alpha == 0 the logarithmic one, alpha < 0 the finite (Beta-Bernoulli-like)
// one.
struct ParamsAT {
  double alpha;
  double theta;
};

inline ParamsAT make_params_at(double alpha, double theta) {
  if (!(alpha < 1.0)) throw std::domain_error("params: requires alpha < 1");
  if (!(theta > -alpha)) throw std::domain_error("params: requires theta > -alpha");
  return ParamsAT{alpha, theta};
}

// Three-parameter IBP: mass gamma >= 0, alpha in [0, 1), theta > -alpha.
struct Ibp3Params {
  double gamma;
  ParamsAT at;
};

inline Ibp3Params make_ibp3_params(double gamma, double alpha, double theta) {
  if (!(gamma >= 0.0)) throw std::domain_error("params: requires gamma >= 0");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::domain_error("params: requires alpha in [0, 1)");
  if (!(theta > -alpha)) throw std::domain_error("params: requires theta > -alpha");
  return Ibp3Params{gamma, ParamsAT{alpha, theta}};
}

// Beta-Bernoulli with N independent features: alpha < 0, theta > -alpha.
// Feature inclusion probabilities are Beta(-alpha, theta + alpha).
struct BetaBernoulliParams {
  long long N;
  ParamsAT at;
};

inline BetaBernoulliParams make_bb_params(long long N, double alpha, double theta) {
  if (N < 0) throw std::domain_error("params: requires N >= 0");
  if (!(alpha < 0.0)) throw std::domain_error("params: requires alpha < 0");
  if (!(theta > -alpha)) throw std::domain_error("params: requires theta > -alpha");
  return BetaBernoulliParams{N, ParamsAT{alpha, theta}};
}

// Weight parameters for the generalized product recursion:
// a > 0, b > 0, tau >= 0. The tau = 1 case maps onto ParamsAT via
// alpha = 1 - a, theta = a + b - 1.
struct GeneralWeightParams {
  double a;
  double b;
  double tau;
};

inline GeneralWeightParams make_general_weight_params(double a, double b, double tau) {
  if (!(a > 0.0)) throw std::domain_error("params: requires a > 0");
  if (!(b > 0.0)) throw std::domain_error("params: requires b > 0");
  if (!(tau >= 0.0)) throw std::domain_error("params: requires tau >= 0");
  return GeneralWeightParams{a, b, tau};
}

// Unordered feature-count vector for a sample of size n: each count m_l is in
// [1, n]; k() is the number of realized features. Evaluators sort a copy of
// the counts, so permutation invariance is exact by construction.
struct FeatureCounts {
  int n = 0;
  std::vector<int> m;

  int k() const { return static_cast<int>(m.size()); }
  long long total() const { return std::accumulate(m.begin(), m.end(), 0LL); }
};

inline FeatureCounts make_feature_counts(int n, std::vector<int> m) {
  if (n < 1) throw std::domain_error("feature counts: requires n >= 1");
  for (int c : m) {
    if (c < 1 || c > n)
      throw std::domain_error("feature counts: each count must lie in [1, n], got " +
                              std::to_string(c) + " with n = " + std::to_string(n));
  }
  return FeatureCounts{n, std::move(m)};
}

}  // namespace efpf
