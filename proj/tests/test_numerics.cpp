#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "efpf/log_real.hpp"
#include "efpf/special.hpp"

using efpf::falling_factorial;
using efpf::log_binomial;
using efpf::log_gamma;
using efpf::log_rising_via_gamma;
using efpf::log_sum;
using efpf::LogReal;
using efpf::rising_factorial;

namespace {

// Error relative to max(1, |ref|): absolute near zero, relative at scale.
double mixed_err(double x, double ref) {
  return std::fabs(x - ref) / std::max(1.0, std::fabs(ref));
}

double rel_err(double x, double ref) { return std::fabs(x / ref - 1.0); }

}  // namespace

TEST_CASE("LogReal construction and materialization") {
  CHECK(LogReal().is_zero());
  CHECK(LogReal::zero().sign() == 0);
  CHECK(LogReal::zero().value() == 0.0);
  CHECK(LogReal::from_value(0.0).is_zero());
  CHECK(LogReal::one().sign() == +1);
  CHECK(LogReal::one().log() == 0.0);

  LogReal x = LogReal::from_value(3.25);
  CHECK(x.sign() == +1);
  CHECK(x.value() == doctest::Approx(3.25).epsilon(1e-15));
  LogReal y = LogReal::from_value(-3.25);
  CHECK(y.sign() == -1);
  CHECK(y.value() == doctest::Approx(-3.25).epsilon(1e-15));
  CHECK(y.log_abs() == x.log_abs());

  CHECK_THROWS_AS(LogReal::from_value(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(LogReal::from_log(std::nan("")), std::domain_error);
  CHECK(LogReal::from_log(-INFINITY).is_zero());
  CHECK(LogReal::from_log(2.0, 0).is_zero());
  CHECK(LogReal::from_log(2.0, -5).sign() == -1);

  // Materialization clamps like exp(): overflow to inf, underflow to 0,
  // while the log-space representation stays finite and exact.
  CHECK(LogReal::from_log(1000.0).value() == INFINITY);
  CHECK(LogReal::from_log(-1000.0).value() == 0.0);
  CHECK_FALSE(LogReal::from_log(-1000.0).is_zero());
  CHECK(LogReal::from_log(-1000.0).log() == -1000.0);
  CHECK_THROWS_AS(LogReal::from_value(-2.0).log(), std::domain_error);
  CHECK_THROWS_AS(LogReal::zero().log(), std::domain_error);
}

TEST_CASE("LogReal multiplication and division") {
  LogReal a = LogReal::from_value(2.0);
  LogReal b = LogReal::from_value(-3.0);
  CHECK((a * b).value() == doctest::Approx(-6.0).epsilon(1e-15));
  CHECK((b * b).value() == doctest::Approx(9.0).epsilon(1e-15));
  CHECK((a * LogReal::zero()).is_zero());
  CHECK((b / a).value() == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK((LogReal::zero() / b).is_zero());
  CHECK_THROWS_AS(a / LogReal::zero(), std::domain_error);

  // Products of huge magnitudes never leave log space.
  LogReal big = LogReal::from_log(900.0);
  CHECK((big * big).log() == 1800.0);
  CHECK((big / LogReal::from_log(-900.0)).log() == 1800.0);
}

TEST_CASE("LogReal signed addition with exact cancellation") {
  LogReal two = LogReal::from_value(2.0);
  LogReal three = LogReal::from_value(3.0);
  CHECK((two + three).value() == doctest::Approx(5.0).epsilon(1e-15));
  CHECK((three + (-two)).value() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(((-three) + (-two)).value() == doctest::Approx(-5.0).epsilon(1e-15));
  CHECK((two + LogReal::zero()).value() == two.value());
  CHECK((LogReal::zero() + (-two)).sign() == -1);

  // Opposite signs with equal log magnitude must cancel to the exact zero,
  // not to a tiny residual; downstream code branches on sign() == 0.
  LogReal x = LogReal::from_log(0.3125);
  CHECK((x + (-x)).is_zero());
  CHECK((x - x).is_zero());
  CHECK(((-x) - (-x)).is_zero());

  // Near-total cancellation must stay resolved: the bump in 1 + e^-x lives
  // in the log field (log1p keeps it even when e^-x is far below 2^-53), and
  // the subtraction must recover it rather than collapse to zero or -inf.
  for (double x : {10.0, 40.0}) {
    LogReal small = LogReal::from_log(-x);
    LogReal diff = LogReal::one() + (-(LogReal::one() + small));
    CHECK(diff.sign() == -1);
    CHECK(diff.log_abs() == doctest::Approx(-x).epsilon(1e-12));
  }
}

TEST_CASE("LogReal integer and real powers") {
  CHECK(LogReal::zero().pow_int(0).log() == 0.0);
  CHECK(LogReal::zero().pow_int(3).is_zero());
  CHECK_THROWS_AS(LogReal::zero().pow_int(-1), std::domain_error);
  LogReal m2 = LogReal::from_value(-2.0);
  CHECK(m2.pow_int(3).value() == doctest::Approx(-8.0).epsilon(1e-15));
  CHECK(m2.pow_int(2).value() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(LogReal::from_value(2.0).pow_int(-3).value() == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(LogReal::from_log(500.0).pow_int(4).log() == 2000.0);

  CHECK(LogReal::from_value(9.0).pow(0.5).value() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(LogReal::zero().pow(0.0).log() == 0.0);
  CHECK(LogReal::zero().pow(2.5).is_zero());
  CHECK_THROWS_AS(LogReal::zero().pow(-1.0), std::domain_error);
  CHECK_THROWS_AS(m2.pow(0.5), std::domain_error);
}

TEST_CASE("LogReal comparisons follow value order") {
  LogReal m5 = LogReal::from_value(-5.0);
  LogReal m2 = LogReal::from_value(-2.0);
  LogReal z = LogReal::zero();
  LogReal p1 = LogReal::from_value(1.0);
  LogReal p3 = LogReal::from_value(3.0);
  CHECK(m5 < m2);
  CHECK(m2 < z);
  CHECK(z < p1);
  CHECK(p1 < p3);
  CHECK(p3 > m5);
  CHECK(m5 <= m5);
  CHECK(m5 >= m5);
  CHECK(z == LogReal::from_value(0.0));
  CHECK(LogReal::from_log(1.5) == LogReal::from_log(1.5));
  CHECK_FALSE(p1 < p1);
  CHECK_FALSE(m2 < m5);  // more negative magnitude is smaller, not larger
}

TEST_CASE("log_gamma matches the high-precision reference grid") {
  // Reference values computed offline to 20 significant digits.
  // Contract: |err| <= 1e-13 * max(1, |ref|).
  const struct {
    double x, ref;
  } grid[] = {
      {1e-3, 6.9071788853838536825},
      {0.01, 4.5994798780420217225},
      {0.1, 2.2527126517342059599},
      {0.25, 1.2880225246980774574},
      {0.5, 0.57236494292470008707},
      {0.75, 0.20328095143129537148},
      {1.0, 0.0},
      {1.5, -0.12078223763524522235},
      {2.0, 0.0},
      {3.5, 1.2009736023470742248},
      {5.0, 3.1780538303479456196},
      {10.0, 12.801827480081469611},
      {100.0, 359.13420536957539878},
      {1234.5, 7550.5509010778948957},
      {1e6, 12815504.56914761166},
      {1e8, 1742068066.1038347093},
  };
  for (const auto& g : grid) {
    INFO("x = ", g.x);
    CHECK(mixed_err(log_gamma(g.x), g.ref) <= 1e-13);
  }
  CHECK(mixed_err(log_gamma(6.0), std::log(120.0)) <= 1e-14);
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("rising and falling factorials: exact signs and small closed forms") {
  // (-2.5)(-1.5)(-0.5)(0.5)(1.5)(2.5) = -3.515625
  LogReal r = rising_factorial(-2.5, 6);
  CHECK(r.sign() == -1);
  CHECK(r.value() == doctest::Approx(-3.515625).epsilon(1e-14));

  // 3.5 * 2.5 * 1.5 * 0.5 * (-0.5) = -3.28125
  LogReal f = falling_factorial(3.5, 5);
  CHECK(f.sign() == -1);
  CHECK(f.value() == doctest::Approx(-3.28125).epsilon(1e-14));

  // A factor that lands exactly on zero gives the exact zero.
  CHECK(rising_factorial(-2.0, 4).is_zero());
  CHECK(falling_factorial(3.0, 4).is_zero());
  CHECK_FALSE(rising_factorial(-2.0, 2).is_zero());

  CHECK(rising_factorial(7.25, 0).log() == 0.0);  // empty product
  CHECK(falling_factorial(-1.0, 0).log() == 0.0);
  CHECK(rising_factorial(5.0, 1).value() == doctest::Approx(5.0).epsilon(1e-15));

  // Generalized step: 1 * 1.5 * 2 * 2.5 = 7.5; step 0 gives plain powers.
  CHECK(rising_factorial(1.0, 4, 0.5).value() == doctest::Approx(7.5).epsilon(1e-14));
  CHECK(rising_factorial(2.0, 3, 0.0).value() == doctest::Approx(8.0).epsilon(1e-14));

  CHECK_THROWS_AS(rising_factorial(1.0, -1), std::domain_error);
  CHECK_THROWS_AS(rising_factorial(1.0, 3, -1.0), std::domain_error);
  CHECK_THROWS_AS(falling_factorial(1.0, -2), std::domain_error);
}

TEST_CASE("rising factorial product route agrees with the gamma-ratio route") {
  for (double x : {0.1, 0.7, 1.0, 2.5, 100.0}) {
    for (long long m : {1LL, 7LL, 100LL, 500LL}) {
      INFO("x = ", x, ", m = ", m);
      double via_prod = rising_factorial(x, m).log();
      double via_gamma = log_rising_via_gamma(x, m);
      CHECK(mixed_err(via_prod, via_gamma) <= 1e-12);
    }
  }
  // Frozen references (20-digit offline evaluation of ln Gamma(x+500) - ln Gamma(x)).
  CHECK(rel_err(rising_factorial(0.1, 500).log(), 2603.4845084958473181) <= 1e-13);
  CHECK(rel_err(rising_factorial(100.0, 500).log(), 2876.7442003545850509) <= 1e-13);

  // Long products stay accurate under the power-of-two rescaling.
  CHECK(mixed_err(rising_factorial(0.5, 1000000).log(), log_rising_via_gamma(0.5, 1000000)) <=
        1e-12);
  CHECK_THROWS_AS(log_rising_via_gamma(0.0, 3), std::domain_error);
  CHECK_THROWS_AS(log_rising_via_gamma(-1.0, 3), std::domain_error);
}

TEST_CASE("log_binomial against an exact integer Pascal row") {
  // C(a, b) fits u64 comfortably through a = 60 (C(60,30) ~ 1.2e17).
  std::vector<std::uint64_t> row = {1};
  for (long long a = 0; a <= 60; ++a) {
    if (a > 0) {
      std::vector<std::uint64_t> next(a + 1, 1);
      for (long long b = 1; b < a; ++b) next[b] = row[b - 1] + row[b];
      row = std::move(next);
    }
    for (long long b = 0; b <= a; ++b) {
      INFO("a = ", a, ", b = ", b);
      double ref = std::log(static_cast<double>(row[b]));
      CHECK(mixed_err(log_binomial(a, b), ref) <= 1e-13);
    }
  }
  CHECK(log_binomial(17, 0) == 0.0);
  CHECK(log_binomial(17, 17) == 0.0);
  // Frozen high-range references (20-digit offline evaluation).
  CHECK(rel_err(log_binomial(100, 50), 66.783841652017426009) <= 1e-13);
  CHECK(rel_err(log_binomial(1000000, 314159), 622380.96695629089551) <= 1e-13);
  CHECK_THROWS_AS(log_binomial(3, 4), std::domain_error);
  CHECK_THROWS_AS(log_binomial(3, -1), std::domain_error);
}

TEST_CASE("log_sum: signed log-sum-exp") {
  CHECK(log_sum({}).is_zero());
  CHECK(log_sum({LogReal::from_value(-4.0)}).value() == doctest::Approx(-4.0).epsilon(1e-15));

  std::vector<LogReal> v = {LogReal::from_value(1.0), LogReal::from_value(2.0),
                            LogReal::from_value(3.0)};
  CHECK(log_sum(v).value() == doctest::Approx(6.0).epsilon(1e-14));

  std::vector<LogReal> mixed = {LogReal::from_value(5.0), LogReal::from_value(-3.0),
                                LogReal::from_value(1.0), LogReal::from_value(-2.0)};
  CHECK(log_sum(mixed).value() == doctest::Approx(1.0).epsilon(1e-13));

  // Equal-magnitude groups cancel to the exact zero.
  LogReal t = LogReal::from_log(0.3);
  CHECK(log_sum({t, -t}).is_zero());

  // Terms 500 log-units below the leader sit under double resolution and
  // are absorbed outright; a term within resolution still registers.
  LogReal dominant = log_sum({LogReal::from_log(0.0), LogReal::from_log(-500.0),
                              LogReal::from_log(-1000.0)});
  CHECK(dominant.log() == 0.0);
  LogReal bumped = log_sum({LogReal::from_log(0.0), LogReal::from_log(-30.0)});
  CHECK(bumped.log() > 0.0);
  CHECK(bumped.log() < 1.0e-13);  // exp(-30) ~ 9.4e-14
}

TEST_CASE("factorial recurrences and reversal") {
  // (x)_{m} * (x + m) = (x)_{m+1}
  for (double x : {-2.5, -0.75, 0.3, 4.0}) {
    for (long long m : {0LL, 1LL, 3LL, 6LL}) {
      LogReal lhs = rising_factorial(x, m) * LogReal::from_value(x + static_cast<double>(m));
      LogReal rhs = rising_factorial(x, m + 1);
      if (rhs.is_zero()) {
        CHECK(lhs.is_zero());
      } else {
        CHECK(std::fabs(((lhs - rhs) / rhs).value()) <= 1e-14);
      }
    }
  }
  // x^(m) = (x - m + 1)_{m}: same factors, opposite accumulation order.
  for (double x : {-1.25, 2.0, 7.5}) {
    for (long long m : {1LL, 4LL, 9LL}) {
      LogReal f = falling_factorial(x, m);
      LogReal r = rising_factorial(x - static_cast<double>(m) + 1.0, m);
      CHECK(f.sign() == r.sign());
      if (!f.is_zero()) CHECK(mixed_err(f.log_abs(), r.log_abs()) <= 1e-14);
    }
  }
}

TEST_CASE("log_sum is permutation invariant") {
  std::vector<LogReal> v;
  for (int k = 0; k < 33; ++k)
    v.push_back(LogReal::from_log(-3.0 * k + 0.1 * k * k, k % 3 == 2 ? -1 : +1));
  double ref = log_sum(v).value();
  std::vector<LogReal> rev(v.rbegin(), v.rend());
  CHECK(rel_err(log_sum(rev).value(), ref) <= 1e-12);
  std::vector<LogReal> rot(v.begin() + 17, v.end());
  rot.insert(rot.end(), v.begin(), v.begin() + 17);
  CHECK(rel_err(log_sum(rot).value(), ref) <= 1e-12);
}

TEST_CASE("log_sum: distribution normalizations") {
  // Poisson(30) masses, k = 0..200 (remaining tail < 1e-80).
  double lambda = 30.0;
  std::vector<LogReal> masses;
  for (int k = 0; k <= 200; ++k)
    masses.push_back(
        LogReal::from_log(-lambda + k * std::log(lambda) - log_gamma(k + 1.0)));
  CHECK(std::fabs(log_sum(masses).log()) <= 1e-13);

  // Geometric series sum_{k>=0} e^{-k} = 1 / (1 - e^{-1}), truncated at 400
  // (tail < 1e-173).
  std::vector<LogReal> geo;
  for (int k = 0; k <= 400; ++k) geo.push_back(LogReal::from_log(-static_cast<double>(k)));
  double ref = 1.0 / (1.0 - std::exp(-1.0));
  CHECK(rel_err(log_sum(geo).value(), ref) <= 1e-13);
}
