#include "efpf/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "efpf/special.hpp"

namespace efpf {

namespace {

void check_nk(int n, int k) {
  if (n < 1) throw std::domain_error("V-array: requires n >= 1");
  if (k < 0) throw std::domain_error("V-array: requires k >= 0");
}

// Sorted copy; canonical evaluation order for exact permutation invariance.
std::vector<int> sorted_counts(const FeatureCounts& fc) {
  std::vector<int> m = fc.m;
  std::sort(m.begin(), m.end());
  return m;
}

}  // namespace

LogReal w_weight(const ParamsAT& at, int m) {
  if (m < 1) throw std::domain_error("w_weight: requires m >= 1");
  return rising_factorial(1.0 - at.alpha, m - 1);
}

LogReal u_weight(const ParamsAT& at, int m) {
  if (m < 0) throw std::domain_error("u_weight: requires m >= 0");
  return rising_factorial(at.theta + at.alpha, m);
}

double ibp3_rate(const ParamsAT& at, long long i) {
  if (i < 1) throw std::domain_error("ibp3_rate: requires i >= 1");
  double r = 1.0;
  for (long long t = 1; t < i; ++t)
    r *= (at.alpha + at.theta + static_cast<double>(t) - 1.0) / (at.theta + static_cast<double>(t));
  return r;
}

double ibp3_rate_sum(const ParamsAT& at, long long n) {
  if (n < 0) throw std::domain_error("ibp3_rate_sum: requires n >= 0");
  double r = 1.0;
  long double s = 0.0L;
  for (long long i = 1; i <= n; ++i) {
    s += r;
    r *= (at.alpha + at.theta + static_cast<double>(i) - 1.0) / (at.theta + static_cast<double>(i));
  }
  return static_cast<double>(s);
}

LogReal v_ibp3(const Ibp3Params& p, int n, int k) {
  check_nk(n, k);
  LogReal base = LogReal::from_value(p.gamma) / rising_factorial(p.at.theta + 1.0, n - 1);
  LogReal scale = LogReal::from_log(-log_gamma(static_cast<double>(k) + 1.0) -
                                    p.gamma * ibp3_rate_sum(p.at, n));
  return base.pow_int(k) * scale;
}

LogReal v_ibp3_gamma_form(const Ibp3Params& p, int n, int k) {
  check_nk(n, k);
  if (p.at.alpha == 0.0) throw std::domain_error("v_ibp3_gamma_form: requires alpha != 0");
  double ratio = std::exp(log_gamma(p.at.theta + 1.0) + log_gamma(p.at.alpha + p.at.theta + n) -
                          log_gamma(p.at.alpha + p.at.theta) - log_gamma(p.at.theta + n));
  double exponent = p.gamma * (ratio / p.at.alpha - p.at.theta / p.at.alpha);
  LogReal base = LogReal::from_value(p.gamma) / rising_factorial(p.at.theta + 1.0, n - 1);
  return base.pow_int(k) *
         LogReal::from_log(-log_gamma(static_cast<double>(k) + 1.0) - exponent);
}

LogReal v_ibp2(double gamma, double theta, int n, int k) {
  check_nk(n, k);
  if (!(gamma >= 0.0)) throw std::domain_error("v_ibp2: requires gamma >= 0");
  if (!(theta > 0.0)) throw std::domain_error("v_ibp2: requires theta > 0");
  long double s = 0.0L;
  for (int i = 1; i <= n; ++i) s += theta / (theta + static_cast<double>(i) - 1.0);
  LogReal base = LogReal::from_value(gamma) / rising_factorial(theta + 1.0, n - 1);
  return base.pow_int(k) * LogReal::from_log(-log_gamma(static_cast<double>(k) + 1.0) -
                                             gamma * static_cast<double>(s));
}

LogReal v_bb(const BetaBernoulliParams& p, int n, int k) {
  check_nk(n, k);
  if (k > p.N) return LogReal::zero();
  LogReal poch_at = rising_factorial(p.at.theta + p.at.alpha, n);
  LogReal poch_t = rising_factorial(p.at.theta, n);
  LogReal comb = LogReal::from_log(log_binomial(p.N, k));
  return comb * (LogReal::from_value(-p.at.alpha) / poch_at).pow_int(k) *
         (poch_at / poch_t).pow_int(p.N);
}

LogReal efpf_product_form(const WeightSystem& ws, const FeatureCounts& fc) {
  std::vector<int> m = sorted_counts(fc);
  LogReal r = ws.v(fc.n, fc.k());
  for (int c : m) r *= ws.w(c) * ws.u(fc.n - c);
  return r;
}

LogReal efpf_ibp3(const Ibp3Params& p, const FeatureCounts& fc) {
  std::vector<int> m = sorted_counts(fc);
  int k = fc.k();
  LogReal base = LogReal::from_value(p.gamma) / rising_factorial(p.at.theta + 1.0, fc.n - 1);
  LogReal r = base.pow_int(k) * LogReal::from_log(-log_gamma(static_cast<double>(k) + 1.0) -
                                                  p.gamma * ibp3_rate_sum(p.at, fc.n));
  for (int c : m)
    r *= rising_factorial(1.0 - p.at.alpha, c - 1) *
         rising_factorial(p.at.theta + p.at.alpha, fc.n - c);
  return r;
}

LogReal efpf_beta_bernoulli(const BetaBernoulliParams& p, const FeatureCounts& fc) {
  std::vector<int> m = sorted_counts(fc);
  int k = fc.k();
  if (k > p.N) return LogReal::zero();
  LogReal poch_at = rising_factorial(p.at.theta + p.at.alpha, fc.n);
  LogReal poch_t = rising_factorial(p.at.theta, fc.n);
  LogReal r = LogReal::from_log(log_binomial(p.N, k)) *
              (LogReal::from_value(-p.at.alpha) / poch_at).pow_int(k) *
              (poch_at / poch_t).pow_int(p.N);
  for (int c : m)
    r *= rising_factorial(1.0 - p.at.alpha, c - 1) *
         rising_factorial(p.at.theta + p.at.alpha, fc.n - c);
  return r;
}

LogReal efpf_bb_direct(double eta1, double eta2, long long N, const FeatureCounts& fc) {
  if (!(eta1 > 0.0) || !(eta2 > 0.0))
    throw std::domain_error("efpf_bb_direct: requires eta1, eta2 > 0");
  if (N < 0) throw std::domain_error("efpf_bb_direct: requires N >= 0");
  std::vector<int> m = sorted_counts(fc);
  int k = fc.k();
  if (k > N) return LogReal::zero();
  double n = fc.n;
  double log_per_feature =
      log_gamma(eta1 + eta2) - log_gamma(eta1) - log_gamma(eta2) - log_gamma(n + eta1 + eta2);
  double log_absent = log_gamma(eta1) + log_gamma(n + eta2);
  double lg = log_binomial(N, k) + static_cast<double>(N) * log_per_feature +
              static_cast<double>(N - k) * log_absent;
  for (int c : m) lg += log_gamma(c + eta1) + log_gamma(n - c + eta2);
  return LogReal::from_log(lg);
}

WeightSystem ibp3_weight_system(const Ibp3Params& p) {
  return WeightSystem{
      [p](int n, int k) { return v_ibp3(p, n, k); },
      [at = p.at](int m) { return w_weight(at, m); },
      [at = p.at](int m) { return u_weight(at, m); },
      std::nullopt,
  };
}

WeightSystem bb_weight_system(const BetaBernoulliParams& p) {
  return WeightSystem{
      [p](int n, int k) { return v_bb(p, n, k); },
      [at = p.at](int m) { return w_weight(at, m); },
      [at = p.at](int m) { return u_weight(at, m); },
      static_cast<int>(p.N),
  };
}

}  // namespace efpf
