#pragma once

#include <cstdint>
#include <random>

namespace efpf {

// Seed plus substream index. Distinct streams give independent generators;
// parallel code derives one stream per run so results are reproducible for
// any thread count.
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Deterministic generator: mt19937_64 (engine output is specified by the
// C++ standard, so sequences are portable across platforms) seeded by two
// splitmix64 rounds over (seed, stream). All variate transforms are written
// out here rather than taken from std::*_distribution, whose outputs are
// implementation-defined and would break golden files and cross-platform
// seed determinism.
class Rng {
 public:
  explicit Rng(const RngSpec& spec);

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on the open interval (0, 1): ((x >> 11) + 0.5) * 2^-53.
  double uniform01();

  bool bernoulli(double p) { return uniform01() < p; }

  // Standard normal via the Marsaglia polar method (second value cached).
  double normal();

  // Gamma(shape, 1) via Marsaglia-Tsang squeeze; shapes below 1 use the
  // boost Gamma(shape+1) * U^{1/shape}.
  double gamma(double shape);

  // Beta(a, b) as the two-gamma ratio.
  double beta(double a, double b);

  // Poisson(mean) by Knuth's product method; means above 30 are split into
  // independent chunks (Poisson additivity), keeping the uniform count
  // bounded while staying exact.
  long long poisson(double mean);

  // Geometric first-success time: smallest i >= 1 with success at rate p,
  // by inversion. p in (0, 1]; returns a value > horizon as "never" when the
  // inverted time exceeds horizon.
  long long geometric(double p, long long horizon);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace efpf
