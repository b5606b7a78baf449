#include "efpf/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "efpf/log_real.hpp"
#include "efpf/special.hpp"
#include "efpf/weights.hpp"

namespace efpf {

std::vector<int> FeatureMatrix::counts() const {
  std::vector<int> m;
  m.reserve(columns.size());
  for (const auto& col : columns) {
    int c = 0;
    for (std::uint8_t z : col) c += z;
    m.push_back(c);
  }
  return m;
}

std::vector<std::uint64_t> matrix_bitmasks(const FeatureMatrix& fm) {
  if (fm.n > 64) throw std::domain_error("matrix_bitmasks: requires n <= 64");
  std::vector<std::uint64_t> masks;
  masks.reserve(fm.columns.size());
  for (const auto& col : fm.columns) {
    std::uint64_t b = 0;
    for (int i = 0; i < fm.n; ++i)
      if (col[i]) b |= std::uint64_t{1} << i;
    masks.push_back(b);
  }
  return masks;
}

FeatureMatrix sample_ibp3(const Ibp3Params& p, int n, const RngSpec& spec) {
  if (n < 1) throw std::domain_error("sample_ibp3: requires n >= 1");
  Rng rng(spec);
  FeatureMatrix fm;
  fm.n = n;
  std::vector<int> counts;
  double rate = 1.0;  // (alpha+theta)_{i-1} / (1+theta)_{i-1} at i = 1
  for (int i = 1; i <= n; ++i) {
    for (std::size_t j = 0; j < fm.columns.size(); ++j) {
      double take = (static_cast<double>(counts[j]) - p.at.alpha) / (p.at.theta + i - 1);
      if (rng.bernoulli(take)) {
        fm.columns[j][i - 1] = 1;
        ++counts[j];
      }
    }
    long long fresh = rng.poisson(p.gamma * rate);
    for (long long f = 0; f < fresh; ++f) {
      std::vector<std::uint8_t> col(n, 0);
      col[i - 1] = 1;
      fm.columns.push_back(std::move(col));
      counts.push_back(1);
    }
    rate *= (p.at.alpha + p.at.theta + i - 1) / (p.at.theta + i);
  }
  return fm;
}

FeatureMatrix sample_beta_bernoulli(const BetaBernoulliParams& p, int n, const RngSpec& spec) {
  if (n < 1) throw std::domain_error("sample_beta_bernoulli: requires n >= 1");
  Rng rng(spec);
  FeatureMatrix fm;
  fm.n = n;
  for (long long j = 0; j < p.N; ++j) {
    double q = rng.beta(-p.at.alpha, p.at.theta + p.at.alpha);
    std::vector<std::uint8_t> col(n, 0);
    bool any = false;
    for (int i = 0; i < n; ++i) {
      if (rng.bernoulli(q)) {
        col[i] = 1;
        any = true;
      }
    }
    if (any) fm.columns.push_back(std::move(col));
  }
  return fm;
}

double predictive_ratio_check(const Ibp3Params& p, int i, int m) {
  if (i < 2 || m < 1 || m > i - 1)
    throw std::domain_error("predictive_ratio_check: requires 1 <= m <= i - 1");
  if (!(p.gamma > 0.0))
    throw std::domain_error("predictive_ratio_check: conditional ratio degenerate at gamma = 0");
  double scheme = (static_cast<double>(m) - p.at.alpha) / (p.at.theta + i - 1);
  LogReal kept = efpf_ibp3(p, make_feature_counts(i, {m + 1}));
  LogReal dropped = efpf_ibp3(p, make_feature_counts(i, {m}));
  double implied = (kept / (dropped + kept)).value();
  return (implied - scheme) / scheme;
}

namespace {

int thread_budget() {
  if (const char* env = std::getenv("EFPF_KIT_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Linear-interpolation quantile on a sorted sample.
double quantile_sorted(const std::vector<double>& xs, double q) {
  double pos = q * static_cast<double>(xs.size() - 1);
  std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= xs.size()) return xs.back();
  double frac = pos - static_cast<double>(lo);
  return xs[lo] * (1.0 - frac) + xs[lo + 1] * frac;
}

}  // namespace

GrowthLawReport growth_law_check(const GrowthLaw& law, long long n_max, int runs,
                                 const RngSpec& spec) {
  if (n_max < 1 || n_max > 100000)
    throw std::domain_error("growth_law_check: requires 1 <= n_max <= 1e5");
  if (runs < 1 || runs > 10000)
    throw std::domain_error("growth_law_check: requires 1 <= runs <= 1e4");

  GrowthLawReport rep;
  rep.n_max = n_max;
  rep.runs = runs;
  rep.exact_fraction = std::numeric_limits<double>::quiet_NaN();

  double norm = 1.0;           // divisor turning K into the normalized statistic
  double poisson_mean = -1.0;  // set for the IBP laws
  const BbLaw* bb = nullptr;
  if (const auto* l3 = std::get_if<Ibp3Law>(&law)) {
    const auto& p = l3->p;
    if (!(p.at.alpha > 0.0))
      throw std::domain_error("growth_law_check: power law requires alpha in (0,1)");
    poisson_mean = p.gamma * ibp3_rate_sum(p.at, n_max);
    norm = std::pow(static_cast<double>(n_max), p.at.alpha);
    rep.target = p.gamma *
                 std::exp(log_gamma(p.at.theta + 1.0) - log_gamma(p.at.alpha + p.at.theta)) /
                 p.at.alpha;
  } else if (const auto* l2 = std::get_if<Ibp2Law>(&law)) {
    if (!(l2->gamma >= 0.0) || !(l2->theta > 0.0))
      throw std::domain_error("growth_law_check: requires gamma >= 0, theta > 0");
    poisson_mean = l2->gamma * ibp3_rate_sum(ParamsAT{0.0, l2->theta}, n_max);
    norm = std::log(static_cast<double>(n_max));
    rep.target = l2->gamma * l2->theta;
  } else {
    bb = &std::get<BbLaw>(law);
    norm = 1.0;
    rep.target = static_cast<double>(bb->p.N);
  }

  std::vector<double> stat(static_cast<std::size_t>(runs), 0.0);
  std::vector<std::uint8_t> exact(static_cast<std::size_t>(runs), 0);
  auto worker = [&](int first, int stride) {
    for (int r = first; r < runs; r += stride) {
      Rng rng(RngSpec{spec.seed, spec.stream + 1 + static_cast<std::uint64_t>(r)});
      long long k;
      if (bb) {
        k = 0;
        for (long long j = 0; j < bb->p.N; ++j) {
          double q = rng.beta(-bb->p.at.alpha, bb->p.at.theta + bb->p.at.alpha);
          if (rng.geometric(q, n_max) <= n_max) ++k;
        }
        exact[static_cast<std::size_t>(r)] = (k == bb->p.N) ? 1 : 0;
      } else {
        // K_{n_max} is a sum of independent Poisson row contributions, so a
        // single draw at the accumulated mean has exactly the right law.
        k = rng.poisson(poisson_mean);
      }
      stat[static_cast<std::size_t>(r)] = static_cast<double>(k) / norm;
    }
  };
  int threads = std::min(thread_budget(), runs);
  if (threads <= 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
    for (auto& th : pool) th.join();
  }

  std::sort(stat.begin(), stat.end());
  rep.median = quantile_sorted(stat, 0.5);
  rep.q25 = quantile_sorted(stat, 0.25);
  rep.q75 = quantile_sorted(stat, 0.75);
  if (bb) {
    long long hits = 0;
    for (std::uint8_t e : exact) hits += e;
    rep.exact_fraction = static_cast<double>(hits) / static_cast<double>(runs);
  }
  return rep;
}

}  // namespace efpf
