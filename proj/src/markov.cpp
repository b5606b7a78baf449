#include "efpf/markov.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "efpf/consistency.hpp"
#include "efpf/special.hpp"

namespace efpf {

namespace {

double safe_recursion_residual(const ChainLaw& cl, int n, int k) {
  return v_recursion_residual(cl.v, cl.at, n, k, TruncationPolicy{}, cl.k_support_bound);
}

}  // namespace

ChainLaw make_chain_law(VFunc v, const ParamsAT& at, std::optional<int> k_support_bound) {
  ChainLaw cl{std::move(v), make_params_at(at.alpha, at.theta), k_support_bound};
  const int sites[][2] = {{1, 0}, {1, 1}, {2, 0}, {2, 1}};
  for (auto [n, k] : sites) {
    if (k_support_bound && k > *k_support_bound) continue;
    if (cl.v(n, k).sign() <= 0) continue;  // recursion undefined at zero-mass sites
    double res = safe_recursion_residual(cl, n, k);
    if (!(std::fabs(res) <= 1e-8))
      throw std::domain_error("chain law: V-array fails the one-step recursion at (n=" +
                              std::to_string(n) + ", k=" + std::to_string(k) +
                              "), residual = " + std::to_string(res));
  }
  return cl;
}

ChainLaw ibp3_chain_law(const Ibp3Params& p) {
  return make_chain_law([p](int n, int k) { return v_ibp3(p, n, k); }, p.at, std::nullopt);
}

ChainLaw bb_chain_law(const BetaBernoulliParams& p) {
  return make_chain_law([p](int n, int k) { return v_bb(p, n, k); }, p.at,
                        static_cast<int>(p.N));
}

LogReal initial_prob(const ChainLaw& cl, int j) {
  if (j < 0) throw std::domain_error("initial_prob: requires j >= 0");
  return cl.v(1, j);
}

LogReal transition_prob(const ChainLaw& cl, int n, int k, int j) {
  if (n < 1 || k < 0 || j < 0)
    throw std::domain_error("transition_prob: requires n >= 1, k >= 0, j >= 0");
  LogReal from = cl.v(n, k);
  if (from.sign() <= 0)
    throw conditioning_error("transition_prob: conditioning on K_n = k with zero probability");
  LogReal step = rising_factorial(cl.at.alpha + cl.at.theta, n).pow_int(j) *
                 LogReal::from_value(cl.at.theta + n).pow_int(k);
  return LogReal::from_log(log_binomial(k + j, j)) * step * cl.v(n + 1, k + j) / from;
}

LogReal cotransition_tail_sum(const ParamsAT& at, long long n, long long m) {
  if (n < 1 || m < n) throw std::domain_error("cotransition_tail_sum: requires 1 <= n <= m");
  const long long terms = m - n;
  if (terms == 0) return LogReal::zero();
  LogReal first = rising_factorial(at.alpha + at.theta, m - 1);
  long double cur = 1.0L;
  long double acc = 1.0L;
  long double off = 0.0L;
  const long double th = at.theta;
  const long double ath = at.alpha + at.theta;
  for (long long j = 1; j < terms; ++j) {
    cur *= (th + static_cast<long double>(m - j)) / (ath + static_cast<long double>(m - j) - 1.0L);
    acc += cur;
    if (acc > 0x1p+920L) {
      off += std::log(acc);
      cur /= acc;
      acc = 1.0L;
    }
  }
  return first * LogReal::from_log(static_cast<double>(off + std::log(acc)));
}

LogReal d_big(const ParamsAT& at, long long m, long long l) {
  if (m < 1 || l < 0) throw std::domain_error("d_big: requires m >= 1, l >= 0");
  LogReal base = rising_factorial(at.theta + 1.0, m - 1) + cotransition_tail_sum(at, 1, m);
  return base.pow_int(l);
}

LogReal d_small(const ParamsAT& at, long long n, long long k, long long m, long long l) {
  if (n < 1 || n >= m) throw std::domain_error("d_small: requires 1 <= n < m");
  if (k < 0 || k > l) throw std::domain_error("d_small: requires 0 <= k <= l");
  LogReal comb = LogReal::from_log(log_binomial(l, k));
  return comb * rising_factorial(at.theta + n, m - n).pow_int(k) *
         cotransition_tail_sum(at, n, m).pow_int(l - k);
}

LogReal cotransition_prob(const ParamsAT& at, int n, int k, long long m, long long l) {
  return d_small(at, n, k, m, l) / d_big(at, m, l) * d_big(at, n, k);
}

LogReal marginal_kn(const ChainLaw& cl, int n, int k) {
  if (n < 1 || k < 0) throw std::domain_error("marginal_kn: requires n >= 1, k >= 0");
  return cl.v(n, k) * d_big(cl.at, n, k);
}

LogReal brute_force_cotransition(const ChainLaw& cl, int n, int k, int m, int l) {
  if (n < 1 || n >= m) throw std::domain_error("brute force: requires 1 <= n < m");
  if (k < 0 || k > l) throw std::domain_error("brute force: requires 0 <= k <= l");
  if (m > 8)
    throw feasibility_error("brute force: path enumeration limited to m <= 8, got m = " +
                            std::to_string(m));
  if (!cl.k_support_bound && l > 12)
    throw feasibility_error(
        "brute force: without a finite support bound the per-step cap is 12, got l = " +
        std::to_string(l));
  // Monotone paths conditioned on K_m = l never exceed l, so capping at l is
  // exact, not a truncation.
  const int cap = cl.k_support_bound ? std::min(l, *cl.k_support_bound) : l;

  LogReal total = LogReal::zero();
  LogReal joint = LogReal::zero();
  // Iterative DFS over nondecreasing paths (k_1, ..., k_m), k_t <= cap.
  std::vector<int> path(static_cast<std::size_t>(m) + 1, 0);
  std::vector<LogReal> prob(static_cast<std::size_t>(m) + 1);
  auto dfs = [&](auto&& self, int t) -> void {
    if (t == m) {
      if (path[t] == l) {
        total += prob[t];
        if (path[n] == k) joint += prob[t];
      }
      return;
    }
    if (cl.v(t, path[t]).sign() <= 0) return;  // zero-mass state, no continuation
    for (int next = path[t]; next <= cap; ++next) {
      LogReal step = transition_prob(cl, t, path[t], next - path[t]);
      if (step.is_zero()) continue;
      path[t + 1] = next;
      prob[t + 1] = prob[t] * step;
      self(self, t + 1);
    }
  };
  for (int k1 = 0; k1 <= cap; ++k1) {
    LogReal p0 = initial_prob(cl, k1);
    if (p0.is_zero()) continue;
    path[1] = k1;
    prob[1] = p0;
    dfs(dfs, 1);
  }
  if (total.is_zero())
    throw conditioning_error("brute force: P(K_m = l) = 0 under this law");
  return joint / total;
}

double hypergeometric_identity_gap(const ParamsAT& at, long long n, long long m) {
  if (at.alpha == 0.0)
    throw std::domain_error("hypergeometric_identity_gap: requires alpha != 0");
  if (n < 1 || n >= m)
    throw std::domain_error("hypergeometric_identity_gap: requires 1 <= n < m");
  LogReal direct = cotransition_tail_sum(at, n, m);
  const double a = at.alpha, t = at.theta;
  const double la = std::log(std::fabs(a));
  const int sa = a > 0 ? +1 : -1;
  LogReal big = LogReal::from_log(log_gamma(a + t + m) - log_gamma(a + t) - la, sa);
  LogReal small = LogReal::from_log(
      log_gamma(t + m) + log_gamma(a + t + n) - log_gamma(t + n) - log_gamma(a + t) - la, sa);
  LogReal closed = big - small;
  return (direct / closed - LogReal::one()).value();
}

double harmonic_identity_gap(double theta, long long n, long long m) {
  if (!(theta > 0.0)) throw std::domain_error("harmonic_identity_gap: requires theta > 0");
  if (n < 1 || n >= m)
    throw std::domain_error("harmonic_identity_gap: requires 1 <= n < m");
  LogReal direct = cotransition_tail_sum(ParamsAT{0.0, theta}, n, m);
  long double h = 0.0L;
  for (long long i = 1; i <= m - n; ++i) h += 1.0L / (theta + static_cast<long double>(m - i));
  LogReal closed = rising_factorial(theta, m) * LogReal::from_value(static_cast<double>(h));
  return (direct / closed - LogReal::one()).value();
}

}  // namespace efpf
