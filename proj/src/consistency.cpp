#include "efpf/consistency.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "efpf/special.hpp"

namespace efpf {

namespace {

void check_policy(const TruncationPolicy& tp) {
  if (tp.j_max < 1) throw std::domain_error("truncation policy: requires j_max >= 1");
  if (!(tp.tail_tol > 0.0)) throw std::domain_error("truncation policy: requires tail_tol > 0");
}

// std::to_string renders small doubles as 0.000000; %g keeps them legible.
std::string real_str(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

// Sum of term(j) for j = 0, 1, ... under the truncation policy. in_support(j)
// false closes the sum exactly (finite families). Early exit once terms are
// decreasing and far below the tail bound; the margin factor 1e-4 keeps the
// dropped tail invisible at every tolerance used downstream.
LogReal truncated_j_sum(const TruncationPolicy& tp, const std::function<bool(int)>& in_support,
                        const std::function<LogReal(int)>& term) {
  check_policy(tp);
  LogReal sum = LogReal::zero();
  LogReal prev = LogReal::zero();
  LogReal last = LogReal::zero();
  bool closed = false;
  for (int j = 0; j <= tp.j_max; ++j) {
    if (!in_support(j)) {
      closed = true;
      break;
    }
    LogReal t = term(j);
    sum += t;
    last = t;
    if (j >= 1 && !sum.is_zero() && t <= prev) {
      if (t.is_zero() ||
          t.log_abs() <= std::log(tp.tail_tol) - 4.0 * std::log(10.0) + sum.log_abs()) {
        closed = true;
        break;
      }
    }
    prev = t;
  }
  if (!closed) {
    bool tail_ok = last.is_zero() ||
                   (!sum.is_zero() && last.log_abs() <= std::log(tp.tail_tol) + sum.log_abs());
    if (!tail_ok)
      throw truncation_error("j-sum did not meet tail_tol = " + real_str(tp.tail_tol) +
                             " within j_max = " + std::to_string(tp.j_max) + " terms");
  }
  return sum;
}

double residual_vs(const LogReal& rhs, const LogReal& lhs) {
  return (rhs / lhs - LogReal::one()).value();
}

}  // namespace

double consistency_residual(const WeightSystem& ws, const FeatureCounts& fc,
                            const TruncationPolicy& tp) {
  const int n = fc.n;
  const int k = fc.k();
  if (k > 20)
    throw feasibility_error("consistency_residual: extension sum enumerates 2^k subsets, k = " +
                            std::to_string(k) + " > 20");
  LogReal lhs = efpf_product_form(ws, fc);
  if (lhs.sign() <= 0)
    throw std::domain_error("consistency_residual: allocation has zero probability");

  std::vector<int> m = fc.m;
  std::sort(m.begin(), m.end());
  // Extension factors per existing feature: individual n+1 lacks it (z = 0)
  // or has it (z = 1).
  std::vector<std::array<LogReal, 2>> ext(k);
  for (int l = 0; l < k; ++l) {
    ext[l][0] = ws.w(m[l]) * ws.u(n + 1 - m[l]);
    ext[l][1] = ws.w(m[l] + 1) * ws.u(n - m[l]);
  }
  std::vector<LogReal> subset_products;
  subset_products.reserve(std::size_t{1} << k);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
    LogReal p = LogReal::one();
    for (int l = 0; l < k; ++l) p *= ext[l][(mask >> l) & 1u];
    subset_products.push_back(p);
  }
  LogReal z_sum = log_sum(subset_products);

  // Each new feature contributes weight W(1) U(n) = U(n); the subset sum does
  // not depend on j, so the j-sum factors out.
  LogReal un = ws.u(n);
  LogReal j_sum = truncated_j_sum(
      tp,
      [&](int j) { return !ws.k_support_bound || k + j <= *ws.k_support_bound; },
      [&](int j) {
        return LogReal::from_log(log_binomial(k + j, j)) * un.pow_int(j) * ws.v(n + 1, k + j);
      });
  return residual_vs(z_sum * j_sum, lhs);
}

double general_recursion_residual(const VFunc& v, const GeneralWeightParams& gp, int n, int k,
                                  const TruncationPolicy& tp, std::optional<int> support) {
  if (n < 1 || k < 0) throw std::domain_error("recursion residual: requires n >= 1, k >= 0");
  LogReal lhs = v(n, k);
  if (lhs.sign() <= 0)
    throw std::domain_error("recursion residual: V value at (n, k) is not positive");
  LogReal bn = rising_factorial(gp.b, n, gp.tau);
  LogReal step = LogReal::from_value(gp.a + gp.b + gp.tau * (static_cast<double>(n) - 1.0));
  LogReal step_k = step.pow_int(k);
  LogReal rhs = truncated_j_sum(
      tp, [&](int j) { return !support || k + j <= *support; },
      [&](int j) {
        return LogReal::from_log(log_binomial(k + j, j)) * bn.pow_int(j) * step_k *
               v(n + 1, k + j);
      });
  return residual_vs(rhs, lhs);
}

double v_recursion_residual(const VFunc& v, const ParamsAT& at, int n, int k,
                            const TruncationPolicy& tp, std::optional<int> support) {
  GeneralWeightParams gp{1.0 - at.alpha, at.theta + at.alpha, 1.0};
  return general_recursion_residual(v, gp, n, k, tp, support);
}

double initial_mass(const VFunc& v, const TruncationPolicy& tp, std::optional<int> support) {
  LogReal sum = truncated_j_sum(
      tp, [&](int j) { return !support || j <= *support; },
      [&](int j) { return v(1, j); });
  return sum.value();
}

VFunc mixture_v(std::vector<VFunc> components, std::vector<double> weights) {
  if (components.empty()) throw std::invalid_argument("mixture: needs at least one component");
  if (components.size() != weights.size())
    throw std::invalid_argument("mixture: component/weight count mismatch");
  long double total = 0.0L;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("mixture: weights must be nonnegative");
    total += w;
  }
  if (std::fabs(static_cast<double>(total) - 1.0) > 1e-12)
    throw std::invalid_argument("mixture: weights must sum to 1 (got " +
                                real_str(static_cast<double>(total)) + ")");
  return [components = std::move(components), weights = std::move(weights)](int n, int k) {
    std::vector<LogReal> terms;
    terms.reserve(components.size());
    for (std::size_t i = 0; i < components.size(); ++i)
      terms.push_back(LogReal::from_value(weights[i]) * components[i](n, k));
    return log_sum(terms);
  };
}

}  // namespace efpf
