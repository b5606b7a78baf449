#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "efpf/boundary.hpp"
#include "efpf/markov.hpp"
#include "efpf/params.hpp"
#include "efpf/weights.hpp"

using namespace efpf;

namespace {

double rel_gap(const LogReal& x, const LogReal& ref) {
  if (ref.is_zero()) return x.is_zero() ? 0.0 : INFINITY;
  return std::fabs(((x - ref) / ref).value());
}

bool decreasing_tail(const std::vector<double>& gaps) {
  std::size_t n = gaps.size();
  return n >= 3 && gaps[n - 1] < gaps[n - 2] && gaps[n - 2] < gaps[n - 3];
}

std::vector<double> gaps_of(const ConvergenceReport& rep) {
  std::vector<double> g;
  for (double r : rep.ratio_values)
    g.push_back(std::fabs(r - rep.target) / std::max(rep.target, 1e-300));
  return g;
}

}  // namespace

TEST_CASE("path discretization rounds half up") {
  ParamsAT at = make_params_at(0.5, 1.0);
  // c * m^alpha = 0.25 * 10 = 2.5 sits exactly on the rounding boundary.
  CHECK(path_omega(PowerPath{0.25}, at, 100) == 3);
  CHECK(path_omega(PowerPath{1.0}, at, 100) == 10);
  CHECK(path_omega(PowerPath{1.0}, at, 10000) == 100);
  CHECK(path_omega(PowerPath{0.0}, at, 100) == 0);

  ParamsAT at0 = make_params_at(0.0, 1.0);
  CHECK(path_omega(LogarithmicPath{2.0}, at0, 7) == 4);  // 2 ln 7 = 3.89...
  CHECK(path_omega(LogarithmicPath{2.0}, at0, 1) == 0);

  ParamsAT atn = make_params_at(-1.0, 2.0);
  CHECK(path_omega(ConstantPath{5}, atn, 123456) == 5);
  CHECK(path_omega(PathSpec{CustomPath{[](long long m) { return m / 2; }}}, at, 9) == 4);
  CHECK_THROWS_AS(path_omega(ConstantPath{5}, atn, 0), std::domain_error);
}

TEST_CASE("conditioned count ratio") {
  ParamsAT at = make_params_at(0.5, 1.0);

  // omega = 0, k = 0: conditioning on an empty horizon is vacuous.
  for (long long m : {2LL, 100LL, 100000LL}) CHECK(ratio_at(at, 1, 0, m, 0).log() == 0.0);

  // Factored log-space evaluation equals the literal d_small / d_big quotient.
  for (long long m : {3LL, 5LL, 20LL}) {
    for (long long omega : {1LL, 3LL}) {
      for (long long k = 0; k <= omega; ++k) {
        INFO("m=", m, " omega=", omega, " k=", k);
        LogReal direct = d_small(at, 2, k, m, omega) / d_big(at, m, omega);
        CHECK(rel_gap(ratio_at(at, 2, static_cast<int>(k), m, omega), direct) <= 1e-12);
      }
    }
  }

  // Stays finite (and positive) out to m = 1e7 with a growing path.
  LogReal far = ratio_at(at, 2, 1, 10000000, 3162);
  CHECK(std::isfinite(far.log()));
  CHECK(far.sign() == +1);

  CHECK_THROWS_AS(ratio_at(at, 2, 1, 2, 1), std::domain_error);
  CHECK_THROWS_AS(ratio_at(at, 2, 2, 5, 1), std::domain_error);
  CHECK_THROWS_AS(ratio_at(at, 0, 0, 5, 1), std::domain_error);
}

TEST_CASE("limit scan: power path converges to the three-parameter array") {
  ParamsAT at = make_params_at(0.5, 1.0);
  std::vector<long long> grid = {100, 1000, 10000};
  ConvergenceReport rep = limit_scan(at, 2, 1, PowerPath{1.0}, grid);

  // Target: V of the three-parameter IBP at gamma = c alpha Gamma(alpha+theta)
  // / Gamma(theta+1); for c = 1 this inverts the growth constant
  // gamma Gamma(theta+1) / (alpha Gamma(alpha+theta)) = 2.25675833...
  double gamma_equiv = 0.44311346272637903;
  CHECK(std::fabs(gamma_equiv * 2.2567583341910251478 - 1.0) <= 1e-13);
  CHECK(std::fabs(rep.target / v_ibp3(Ibp3Params{gamma_equiv, at}, 2, 1).value() - 1.0) <=
        1e-13);

  CHECK(rep.final_gap <= 1e-2);
  CHECK(decreasing_tail(gaps_of(rep)));
  CHECK(rep.omega_values.back() == 100);
}

TEST_CASE("limit scan: logarithmic path converges to the two-parameter array") {
  ParamsAT at = make_params_at(0.0, 1.0);
  ConvergenceReport rep = limit_scan(at, 2, 1, LogarithmicPath{2.0}, {100, 1000, 10000});
  CHECK(std::fabs(rep.target / v_ibp2(2.0, 1.0, 2, 1).value() - 1.0) <= 1e-13);
  // Log-speed convergence is slow; the acceptance grid extends to 1e6.
  CHECK(rep.final_gap <= 0.25);
}

TEST_CASE("limit scan: constant path converges to the Beta-Bernoulli array") {
  ParamsAT at = make_params_at(-1.0, 2.0);
  ConvergenceReport rep = limit_scan(at, 2, 1, ConstantPath{2}, {30, 100, 1000, 10000});
  CHECK(std::fabs(rep.target / v_bb(BetaBernoulliParams{2, at}, 2, 1).value() - 1.0) <= 1e-13);
  CHECK(rep.final_gap <= 2e-3);
  CHECK(decreasing_tail(gaps_of(rep)));
}

TEST_CASE("limit scan rejects regime mismatches and bad grids") {
  ParamsAT pos = make_params_at(0.5, 1.0);
  ParamsAT zer = make_params_at(0.0, 1.0);
  ParamsAT neg = make_params_at(-1.0, 2.0);
  std::vector<long long> grid = {100, 1000};

  CHECK_THROWS_AS(limit_scan(zer, 2, 1, PowerPath{1.0}, grid), std::domain_error);
  CHECK_THROWS_AS(limit_scan(neg, 2, 1, PowerPath{1.0}, grid), std::domain_error);
  CHECK_THROWS_AS(limit_scan(pos, 2, 1, LogarithmicPath{1.0}, grid), std::domain_error);
  CHECK_THROWS_AS(limit_scan(pos, 2, 1, ConstantPath{2}, grid), std::domain_error);
  CHECK_THROWS_AS(limit_scan(zer, 2, 1, ConstantPath{2}, grid), std::domain_error);
  CHECK_THROWS_AS(limit_scan(pos, 2, 1, PowerPath{-1.0}, grid), std::domain_error);
  CHECK_THROWS_AS(limit_scan(zer, 2, 1, LogarithmicPath{-0.5}, grid), std::domain_error);
  CHECK_THROWS_AS(limit_scan(neg, 2, 1, ConstantPath{-2}, grid), std::domain_error);
  CHECK_THROWS_AS(
      limit_scan(pos, 2, 1, PathSpec{CustomPath{[](long long m) { return m; }}}, grid),
      std::domain_error);

  CHECK_THROWS_AS(limit_scan(pos, 2, 1, PowerPath{1.0}, {}), std::domain_error);
  CHECK_THROWS_AS(limit_scan(pos, 2, 1, PowerPath{1.0}, {100, 100}), std::domain_error);
  CHECK_THROWS_AS(limit_scan(pos, 2, 1, PowerPath{1.0}, {1000, 100}), std::domain_error);
  CHECK_THROWS_AS(limit_scan(pos, 5, 1, PowerPath{1.0}, {5, 100}), std::domain_error);
}

TEST_CASE("divergence scan: superlinear paths escape every limit") {
  ParamsAT at = make_params_at(0.5, 1.0);
  // omega_m = m grows like m / m^alpha = m^0.5 relative to the regime scale.
  PathSpec linear{CustomPath{[](long long m) { return m; }}};
  ConvergenceReport rep = divergence_scan(at, 2, 1, linear, {100, 1000, 10000, 100000});
  CHECK(rep.target == 0.0);
  CHECK(rep.final_gap <= 1e-6);
  const auto& r = rep.ratio_values;
  CHECK(r[3] < r[2]);
  CHECK(r[2] < r[1]);

  // alpha = 0 analogue: omega = round(m^0.5) outruns every gamma log m.
  ParamsAT zer = make_params_at(0.0, 1.0);
  PathSpec root{CustomPath{
      [](long long m) { return static_cast<long long>(std::floor(std::sqrt(static_cast<double>(m)) + 0.5)); }}};
  ConvergenceReport rep0 = divergence_scan(zer, 2, 1, root, {100, 1000, 10000, 100000});
  const auto& r0 = rep0.ratio_values;
  CHECK(r0[3] < r0[2]);
  CHECK(r0[2] < r0[1]);
  CHECK(r0[3] < 1e-3 * r0[0]);

  CHECK_THROWS_AS(divergence_scan(at, 2, 1, PowerPath{1.0}, {100, 1000}), std::domain_error);
}

TEST_CASE("a path alternating between two constants has two subsequential limits") {
  ParamsAT at = make_params_at(-1.0, 2.0);
  // Conditioning alternately on 1 and 3 features at ever larger horizons.
  std::vector<long long> even = {1000, 10000, 100000};
  std::vector<long long> odd = {1001, 10001, 100001};
  double lim1 = v_bb(BetaBernoulliParams{1, at}, 2, 1).value();  // 1/6
  double lim3 = v_bb(BetaBernoulliParams{3, at}, 2, 1).value();  // 1/18
  double last_even = 0.0, last_odd = 0.0;
  for (long long m : even) last_even = ratio_at(at, 2, 1, m, 1).value();
  for (long long m : odd) last_odd = ratio_at(at, 2, 1, m, 3).value();
  CHECK(std::fabs(last_even / lim1 - 1.0) <= 1e-3);
  CHECK(std::fabs(last_odd / lim3 - 1.0) <= 1e-3);
  // The two cluster points are far apart relative to either convergence gap.
  CHECK(std::fabs(last_even - last_odd) > 0.05);
}

TEST_CASE("ratio power limit: gap in log scale") {
  auto ident = [](long long m) { return static_cast<double>(m); };
  // Pinned instance: p=1, q=3, c=2, g(m)=m at m = 1e6; limit e^{c(q-p)} = e^4.
  double pinned = lemma_a4_gap(1.0, 3.0, 2.0, ident, 1000000);
  CHECK(pinned <= 1e-4);
  CHECK(pinned > 0.0);

  CHECK(lemma_a4_gap(2.5, 2.5, 7.0, ident, 10) == 0.0);
  CHECK(lemma_a4_gap(1.0, 3.0, 0.0, ident, 10) == 0.0);

  double prev = INFINITY;
  for (long long m : {1000LL, 10000LL, 100000LL, 1000000LL}) {
    double g = lemma_a4_gap(1.0, 3.0, 2.0, ident, m);
    CHECK(g < prev);
    prev = g;
  }

  CHECK_THROWS_AS(lemma_a4_gap(1.0, 3.0, 2.0, ident, 2), std::domain_error);
  CHECK_THROWS_AS(lemma_a4_gap(1.0, 3.0, -1.0, ident, 10), std::domain_error);
}

TEST_CASE("dominating-rate probe decays to zero") {
  auto root = [](long long m) { return std::sqrt(static_cast<double>(m)); };
  auto ident = [](long long m) { return static_cast<double>(m); };
  // Pinned scan: f = m^{1/2}, g = m, h = f, p = 2, q = 1, k = 3.
  double prev = INFINITY;
  for (long long m : {100LL, 1000LL, 10000LL, 100000LL, 1000000LL}) {
    double v = lemma_a5_value(2.0, 1.0, 3, root, ident, root, m);
    INFO("m=", m);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev <= 1e-8);

  // k = 0, g = f against a fixed h: a plain geometric decay, bounded by 1.
  auto ten = [](long long) { return 10.0; };
  double p1 = lemma_a5_value(2.0, 1.0, 0, ident, ident, ten, 10);
  double p2 = lemma_a5_value(2.0, 1.0, 0, ident, ident, ten, 100);
  CHECK(p1 <= 1.0);
  CHECK(p2 < p1);

  // Deep decay underflows cleanly to zero rather than NaN.
  CHECK(lemma_a5_value(2.0, 1.0, 0, ident, ident, ten, 100000000) == 0.0);

  CHECK_THROWS_AS(lemma_a5_value(1.0, 1.0, 0, ident, ident, ten, 10), std::domain_error);
  CHECK_THROWS_AS(lemma_a5_value(2.0, 1.0, 0, [](long long) { return 0.0; }, ident, ten, 10),
                  std::domain_error);
  CHECK_THROWS_AS(lemma_a5_value(2.0, 1.0, 0, ident, ident, [](long long) { return 1.5; }, 10),
                  std::domain_error);
}
