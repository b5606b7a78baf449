#include "efpf/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "efpf/markov.hpp"
#include "efpf/special.hpp"
#include "efpf/weights.hpp"

namespace efpf {

namespace {

long long round_half_up(double x) { return static_cast<long long>(std::floor(x + 0.5)); }

void check_grid(int n, const std::vector<long long>& m_grid) {
  if (m_grid.empty()) throw std::domain_error("scan: empty m grid");
  long long prev = n;
  for (long long m : m_grid) {
    if (m <= prev)
      throw std::domain_error("scan: m grid must be strictly increasing and exceed n");
    prev = m;
  }
}

ConvergenceReport run_scan(const ParamsAT& at, int n, int k, const PathSpec& path,
                           const std::vector<long long>& m_grid, double target,
                           bool absolute_gap) {
  ConvergenceReport rep;
  rep.m_grid = m_grid;
  rep.target = target;
  for (long long m : m_grid) {
    long long omega = path_omega(path, at, m);
    rep.omega_values.push_back(omega);
    rep.ratio_values.push_back(ratio_at(at, n, k, m, omega).value());
  }
  double last = rep.ratio_values.back();
  rep.final_gap =
      absolute_gap ? std::fabs(last) : std::fabs(last - target) / std::max(target, 1e-300);
  return rep;
}

}  // namespace

long long path_omega(const PathSpec& path, const ParamsAT& at, long long m) {
  if (m < 1) throw std::domain_error("path_omega: requires m >= 1");
  if (const auto* p = std::get_if<PowerPath>(&path))
    return round_half_up(p->c * std::pow(static_cast<double>(m), at.alpha));
  if (const auto* p = std::get_if<LogarithmicPath>(&path))
    return round_half_up(p->gamma * std::log(static_cast<double>(m)));
  if (const auto* p = std::get_if<ConstantPath>(&path)) return p->N;
  return std::get<CustomPath>(path).omega(m);
}

LogReal ratio_at(const ParamsAT& at, int n, int k, long long m, long long omega) {
  if (n < 1 || m <= n) throw std::domain_error("ratio_at: requires 1 <= n < m");
  if (k < 0 || k > omega) throw std::domain_error("ratio_at: requires 0 <= k <= omega");
  LogReal grow = rising_factorial(at.theta + n, m - n);
  LogReal tail = cotransition_tail_sum(at, n, m);
  LogReal base = rising_factorial(at.theta + 1.0, m - 1) + cotransition_tail_sum(at, 1, m);
  double log_ratio = log_binomial(omega, k) +
                     static_cast<double>(k) * (grow.log() - tail.log()) +
                     static_cast<double>(omega) * (tail.log() - base.log());
  return LogReal::from_log(log_ratio);
}

ConvergenceReport limit_scan(const ParamsAT& at, int n, int k, const PathSpec& path,
                             const std::vector<long long>& m_grid) {
  check_grid(n, m_grid);
  double target = 0.0;
  if (const auto* p = std::get_if<PowerPath>(&path)) {
    if (!(at.alpha > 0.0))
      throw std::domain_error("limit_scan: a power path matches the alpha in (0,1) regime only");
    if (!(p->c >= 0.0)) throw std::domain_error("limit_scan: requires c >= 0");
    double gamma_equiv =
        p->c * at.alpha * std::exp(log_gamma(at.alpha + at.theta) - log_gamma(at.theta + 1.0));
    target = v_ibp3(Ibp3Params{gamma_equiv, at}, n, k).value();
  } else if (const auto* p = std::get_if<LogarithmicPath>(&path)) {
    if (at.alpha != 0.0)
      throw std::domain_error("limit_scan: a logarithmic path matches the alpha = 0 regime only");
    if (!(p->gamma >= 0.0)) throw std::domain_error("limit_scan: requires gamma >= 0");
    target = v_ibp2(p->gamma, at.theta, n, k).value();
  } else if (const auto* p = std::get_if<ConstantPath>(&path)) {
    if (!(at.alpha < 0.0))
      throw std::domain_error("limit_scan: a constant path matches the alpha < 0 regime only");
    if (p->N < 0) throw std::domain_error("limit_scan: requires N >= 0");
    target = v_bb(BetaBernoulliParams{p->N, at}, n, k).value();
  } else {
    throw std::domain_error(
        "limit_scan: a custom path declares no limiting regime; use divergence_scan");
  }
  return run_scan(at, n, k, path, m_grid, target, /*absolute_gap=*/false);
}

ConvergenceReport divergence_scan(const ParamsAT& at, int n, int k, const PathSpec& path,
                                  const std::vector<long long>& m_grid) {
  check_grid(n, m_grid);
  if (!std::holds_alternative<CustomPath>(path))
    throw std::domain_error("divergence_scan: takes an explicit custom path map");
  return run_scan(at, n, k, path, m_grid, /*target=*/0.0, /*absolute_gap=*/true);
}

double lemma_a4_gap(double p, double q, double c, const std::function<double(long long)>& g,
                    long long m) {
  if (!(c >= 0.0)) throw std::domain_error("lemma_a4_gap: requires c >= 0");
  double gv = g(m);
  if (!(gv > std::max(p, q))) throw std::domain_error("lemma_a4_gap: requires g(m) > max(p, q)");
  if (p == q || c == 0.0) return 0.0;
  double log_power = c * gv * std::log1p((q - p) / (gv - q));
  return std::fabs(log_power - c * (q - p));
}

double lemma_a5_value(double p, double q, long long k, const std::function<double(long long)>& f,
                      const std::function<double(long long)>& g,
                      const std::function<double(long long)>& h, long long m) {
  if (!(p > q)) throw std::domain_error("lemma_a5_value: requires p > q");
  double fv = f(m), gv = g(m), hv = h(m);
  if (!(fv > 0.0) || !(gv > 0.0)) throw std::domain_error("lemma_a5_value: requires f, g > 0");
  if (!(hv > p)) throw std::domain_error("lemma_a5_value: requires h(m) > p");
  double log_val = static_cast<double>(k) * (std::log(gv) - std::log(fv)) +
                   gv * std::log1p((q - p) / (hv - q));
  return std::exp(log_val);
}

}  // namespace efpf
