#include "efpf/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace efpf {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;
constexpr long double kHalfLog2Pi = 0.91893853320467274178032973640561764L;

// Lanczos coefficients for g = 7, n = 9 (Godfrey's set).
constexpr long double kLanczos[9] = {
    0.99999999999980993L,      676.5203681218851L,      -1259.1392167224028L,
    771.32342877765313L,       -176.61502916214059L,    12.507343278686905L,
    -0.13857109526572012L,     9.9843695780195716e-6L,  1.5056327351493116e-7L,
};

// Core approximation for x >= 0.5.
long double lgamma_core(long double x) {
  long double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x - 1.0L + static_cast<long double>(i));
  long double t = x + 6.5L;  // x + g - 0.5
  return kHalfLog2Pi + (x - 0.5L) * std::log(t) - t + std::log(a);
}

// prod_{i=0}^{m-1} (x + i*step) with power-of-two rescaling. Exact sign.
LogReal stepped_product(double x, long long m, double step) {
  long double prod = 1.0L;
  long long e_off = 0;
  for (long long i = 0; i < m; ++i) {
    long double f = static_cast<long double>(x) + static_cast<long double>(i) * static_cast<long double>(step);
    if (f == 0.0L) return LogReal::zero();
    prod *= f;
    long double mag = std::fabs(prod);
    if (mag > 0x1p+900L || mag < 0x1p-900L) {
      int e = 0;
      prod = std::frexp(prod, &e);
      e_off += e;
    }
  }
  int e = 0;
  prod = std::frexp(prod, &e);
  e_off += e;
  constexpr long double kLn2 = 0.69314718055994530941723212145817657L;
  long double log_mag = std::log(std::fabs(prod)) + static_cast<long double>(e_off) * kLn2;
  return LogReal::from_log(static_cast<double>(log_mag), prod >= 0.0L ? +1 : -1);
}

double pairwise_sum(const double* p, std::size_t n) {
  if (n <= 8) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < n; ++i) s += p[i];
    return static_cast<double>(s);
  }
  std::size_t h = n / 2;
  return pairwise_sum(p, h) + pairwise_sum(p + h, n - h);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
  // Gamma(1) = Gamma(2) = 1: keep these zeros exact so expressions like
  // log(0!) do not pick up a Lanczos residual.
  if (x == 1.0 || x == 2.0) return 0.0;
  long double xl = x;
  if (xl < 0.5L) {
    // Reflection: lgamma(x) = log(pi / sin(pi x)) - lgamma(1 - x); sin is
    // positive on (0, 0.5).
    return static_cast<double>(std::log(kPi / std::sin(kPi * xl)) - lgamma_core(1.0L - xl));
  }
  return static_cast<double>(lgamma_core(xl));
}

LogReal rising_factorial(double x, long long m, double tau) {
  if (m < 0) throw std::domain_error("rising_factorial: requires m >= 0");
  if (!(tau >= 0.0)) throw std::domain_error("rising_factorial: requires tau >= 0");
  return stepped_product(x, m, tau);
}

LogReal falling_factorial(double x, long long m) {
  if (m < 0) throw std::domain_error("falling_factorial: requires m >= 0");
  return stepped_product(x, m, -1.0);
}

double log_binomial(long long a, long long b) {
  if (b < 0 || a < b) throw std::domain_error("log_binomial: requires 0 <= b <= a");
  if (b == 0 || b == a) return 0.0;
  return log_gamma(static_cast<double>(a) + 1.0) - log_gamma(static_cast<double>(b) + 1.0) -
         log_gamma(static_cast<double>(a - b) + 1.0);
}

double log_rising_via_gamma(double x, long long m) {
  if (m < 0) throw std::domain_error("log_rising_via_gamma: requires m >= 0");
  if (!(x > 0.0)) throw std::domain_error("log_rising_via_gamma: requires x > 0");
  return log_gamma(x + static_cast<double>(m)) - log_gamma(x);
}

LogReal log_sum(const std::vector<LogReal>& values) {
  double mx[2] = {-INFINITY, -INFINITY};  // [0]: positive terms, [1]: negative
  for (const LogReal& v : values) {
    if (v.sign() > 0) mx[0] = std::max(mx[0], v.log_abs());
    if (v.sign() < 0) mx[1] = std::max(mx[1], v.log_abs());
  }
  std::vector<double> shifted[2];
  for (const LogReal& v : values) {
    if (v.sign() == 0) continue;
    int g = v.sign() > 0 ? 0 : 1;
    shifted[g].push_back(std::exp(v.log_abs() - mx[g]));
  }
  LogReal group[2];
  for (int g = 0; g < 2; ++g) {
    if (shifted[g].empty()) continue;
    double s = pairwise_sum(shifted[g].data(), shifted[g].size());
    group[g] = LogReal::from_log(mx[g] + std::log(s), g == 0 ? +1 : -1);
  }
  return group[0] + group[1];
}

}  // namespace efpf
