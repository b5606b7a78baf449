#include "efpf/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace efpf {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t mix_seed(const RngSpec& spec) {
  std::uint64_t s = spec.seed;
  std::uint64_t a = splitmix64(s);
  s ^= spec.stream + 0xD1B54A32D192ED03ull;
  std::uint64_t b = splitmix64(s);
  return a ^ (b + 0x9E3779B97F4A7C15ull);
}

}  // namespace

Rng::Rng(const RngSpec& spec) : eng_(mix_seed(spec)) {}

double Rng::uniform01() {
  return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  have_spare_ = true;
  return u * f;
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) throw std::domain_error("rng: gamma shape must be positive");
  if (shape < 1.0) {
    double u = uniform01();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    double u = uniform01();
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::beta(double a, double b) {
  double x = gamma(a);
  double y = gamma(b);
  return x / (x + y);
}

long long Rng::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::domain_error("rng: poisson mean must be nonnegative");
  long long total = 0;
  while (mean > 30.0) {
    double chunk = 30.0;
    const double limit = std::exp(-chunk);
    long long k = 0;
    double prod = 1.0;
    do {
      ++k;
      prod *= uniform01();
    } while (prod > limit);
    total += k - 1;
    mean -= chunk;
  }
  const double limit = std::exp(-mean);
  long long k = 0;
  double prod = 1.0;
  do {
    ++k;
    prod *= uniform01();
  } while (prod > limit);
  return total + k - 1;
}

long long Rng::geometric(double p, long long horizon) {
  if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("rng: geometric rate must be in (0, 1]");
  if (p == 1.0) return 1;
  double t = std::floor(std::log(uniform01()) / std::log1p(-p));
  if (t >= static_cast<double>(horizon)) return horizon + 1;
  return static_cast<long long>(t) + 1;
}

}  // namespace efpf
