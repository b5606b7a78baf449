#pragma once

#include <functional>
#include <optional>

#include "efpf/log_real.hpp"
#include "efpf/params.hpp"

namespace efpf {

// V-array callback: (n, k) -> V_{n,k}, the parameter-only factor of a
// product-form allocation probability. n >= 1, k >= 0.
using VFunc = std::function<LogReal(int n, int k)>;

// A product-form weight system (V, W, U): the probability of an unordered
// feature allocation with counts m_1..m_k at sample size n is
//   V_{n,k} * prod_l W(m_l) * U(n - m_l).
// Normalized so W(1) = U(0) = 1. k_support_bound, when set, promises
// V_{n,k} = 0 for all k > bound (finite families), which lets exact
// enumerations close their sums.
struct WeightSystem {
  VFunc v;
  std::function<LogReal(int)> w;
  std::function<LogReal(int)> u;
  std::optional<int> k_support_bound;
};

// Per-feature weights of the two-parameter family:
//   W(m) = (1 - alpha)_{m-1},  m >= 1
//   U(m) = (theta + alpha)_m,  m >= 0
// (rising factorials, step 1). These are the unique product-form weights up
// to the rescaling freedom fixed by W(1) = U(0) = 1.
LogReal w_weight(const ParamsAT& at, int m);
LogReal u_weight(const ParamsAT& at, int m);

// V-array of the three-parameter IBP:
//   V_{n,k} = (1/k!) * (gamma / (theta+1)_{n-1})^k
//             * exp(-gamma * sum_{i=1}^n (alpha+theta)_{i-1} / (1+theta)_{i-1}).
LogReal v_ibp3(const Ibp3Params& p, int n, int k);

// Same quantity with the exponent in closed gamma-ratio form
//   exp(-gamma * (Gamma(theta+1) Gamma(alpha+theta+n) /
//                 (alpha Gamma(alpha+theta) Gamma(theta+n)) - theta/alpha)),
// valid for alpha != 0. Kept as an independent route for cross-checks.
LogReal v_ibp3_gamma_form(const Ibp3Params& p, int n, int k);

// Two-parameter (alpha = 0) limit: requires theta > 0.
//   V_{n,k} = (1/k!) * (gamma / (theta+1)_{n-1})^k
//             * exp(-gamma * sum_{i=1}^n theta / (theta + i - 1)).
LogReal v_ibp2(double gamma, double theta, int n, int k);

// V-array of the Beta-Bernoulli family with N features:
//   V_{n,k} = C(N,k) * (-alpha / (theta+alpha)_n)^k
//             * ((theta+alpha)_n / (theta)_n)^N,  zero for k > N.
LogReal v_bb(const BetaBernoulliParams& p, int n, int k);

// sum_{i=1}^{n} (alpha+theta)_{i-1} / (1+theta)_{i-1}, the cumulative rate of
// new features per row under the three-parameter IBP (shared by v_ibp3, the
// samplers and the growth-law simulator). i-th summand computed by the ratio
// recurrence r_{i+1} = r_i * (alpha+theta+i-1)/(theta+i), r_1 = 1.
double ibp3_rate_sum(const ParamsAT& at, long long n);
// The i-th summand alone (rate of new features at row i).
double ibp3_rate(const ParamsAT& at, long long i);

// EFPF evaluated through a weight system: V_{n,k} prod_l W(m_l) U(n - m_l).
// Counts are sorted internally, so the result is bit-identical under
// permutations of m.
LogReal efpf_product_form(const WeightSystem& ws, const FeatureCounts& fc);

// Direct single-expression evaluators (independent of WeightSystem plumbing;
// used as cross-check routes and by the predictive-probability checks).
LogReal efpf_ibp3(const Ibp3Params& p, const FeatureCounts& fc);
LogReal efpf_beta_bernoulli(const BetaBernoulliParams& p, const FeatureCounts& fc);

// Beta-Bernoulli EFPF parameterized directly by the Beta(eta1, eta2) feature
// frequencies:
//   C(N,k) * (Gamma(eta1+eta2) / (Gamma(eta1) Gamma(eta2) Gamma(n+eta1+eta2)))^N
//   * (Gamma(eta1) Gamma(n+eta2))^{N-k} * prod_i Gamma(m_i+eta1) Gamma(n-m_i+eta2).
// Bridge to the (alpha, theta) form: eta1 = -alpha, eta2 = theta + alpha.
// Requires eta1, eta2 > 0; zero for k > N.
LogReal efpf_bb_direct(double eta1, double eta2, long long N, const FeatureCounts& fc);

// Factory weight systems.
WeightSystem ibp3_weight_system(const Ibp3Params& p);
WeightSystem bb_weight_system(const BetaBernoulliParams& p);

}  // namespace efpf
