#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "efpf/log_real.hpp"
#include "efpf/params.hpp"

namespace efpf {

// Conditioning paths omega_m for the boundary-limit scans: the number of
// realized features imposed at horizon m. Real-valued paths are rounded
// half-up: omega = floor(x + 0.5).
struct PowerPath {
  double c;  // omega_m = round(c * m^alpha), the regime matching alpha in (0,1)
};
struct LogarithmicPath {
  double gamma;  // omega_m = round(gamma * log m), the alpha = 0 regime
};
struct ConstantPath {
  long long N;  // omega_m = N, the alpha < 0 regime
};
struct CustomPath {
  std::function<long long(long long)> omega;  // explicit map, e.g. superlinear probes
};
using PathSpec = std::variant<PowerPath, LogarithmicPath, ConstantPath, CustomPath>;

long long path_omega(const PathSpec& path, const ParamsAT& at, long long m);

struct ConvergenceReport {
  std::vector<long long> m_grid;
  std::vector<long long> omega_values;
  std::vector<double> ratio_values;
  double target = 0.0;
  // limit scans: |last ratio - target| / max(target, 1e-300);
  // divergence scans (target 0): |last ratio|.
  double final_gap = 0.0;
};

// The conditioned probability ratio d^{m,omega}_{n,k} / d^{m,omega}, i.e. the
// V-free part of P(K_n = k | K_m = omega). Computed in log space as
//   log C(omega,k) + k (log P - log S) + omega (log S - log B),
// P = (theta+n)_{m-n}, S = cotransition_tail_sum(n, m), B = the d_big base;
// algebraically identical to d_small/d_big but avoids forming the huge
// intermediate powers, so it stays finite and accurate for m up to 1e7.
// Requires 1 <= n < m and 0 <= k <= omega.
LogReal ratio_at(const ParamsAT& at, int n, int k, long long m, long long omega);

// Evaluates ratio_at along omega_m over an increasing grid of horizons and
// compares the last value against the limiting V-array of the matching
// regime:
//   power path, alpha in (0,1): V of the three-parameter IBP with
//     gamma = c * alpha * Gamma(alpha+theta) / Gamma(theta+1);
//   logarithmic path, alpha = 0: V of the two-parameter IBP with mass gamma;
//   constant path, alpha < 0: V of the Beta-Bernoulli family with N features.
// A path/alpha mismatch (or a custom path, which has no declared limit) is a
// domain error. Grid entries must be strictly increasing and > n.
ConvergenceReport limit_scan(const ParamsAT& at, int n, int k, const PathSpec& path,
                             const std::vector<long long>& m_grid);

// Same evaluation for paths expected to escape every limiting regime
// (superlinear growth of omega_m relative to its regime scale): target 0,
// final_gap = |last ratio|. Takes an explicit CustomPath only.
ConvergenceReport divergence_scan(const ParamsAT& at, int n, int k, const PathSpec& path,
                                  const std::vector<long long>& m_grid);

// Gap, measured between logarithms, of ((g-p)/(g-q))^{c g} against its limit
// e^{c(q-p)}:  |c g log((g-p)/(g-q)) - c (q-p)|. The power itself overflows
// double for large c*g, so the gap is evaluated in log space (log1p form).
// Exact 0 for p == q or c == 0. Requires g(m) > max(p, q) and c >= 0.
double lemma_a4_gap(double p, double q, double c, const std::function<double(long long)>& g,
                    long long m);

// (g/f)^k * ((h-p)/(h-q))^g evaluated in log space; the dominating-rate
// probe used to show escape to zero when g outgrows h. Requires p > q,
// f(m) > 0, g(m) > 0, h(m) > p. Underflows cleanly to 0.
double lemma_a5_value(double p, double q, long long k, const std::function<double(long long)>& f,
                      const std::function<double(long long)>& g,
                      const std::function<double(long long)>& h, long long m);

}  // namespace efpf
