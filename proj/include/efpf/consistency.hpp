#pragma once

#include <optional>
#include <vector>

#include "efpf/errors.hpp"
#include "efpf/params.hpp"
#include "efpf/weights.hpp"

namespace efpf {

// Budget for infinite j-sums over the number of newly appearing features.
// Terms are summed until either a declared finite support closes the sum, or
// the last added term falls to tail_tol relative to the partial sum (terms
// decay super-geometrically in j for every supported family, so the last
// term bounds the discarded tail up to a modest constant). Exhausting j_max
// without meeting the bound raises truncation_error; there is no silent
// truncation.
struct TruncationPolicy {
  int j_max = 300;
  double tail_tol = 1e-14;
};

// Relative residual of the one-step marginalization identity at a concrete
// allocation: the probability of counts m at sample size n must equal the sum
// over all extensions by one individual (each existing feature taken or not,
// any number j of new singleton features, with multiplicity C(k+j, j)) of the
// probability at size n+1. Returns (rhs - lhs)/lhs.
//
// Errors: domain if the allocation has zero probability; feasibility if
// k > 20 (the extension sum enumerates 2^k subsets); truncation as above.
double consistency_residual(const WeightSystem& ws, const FeatureCounts& fc,
                            const TruncationPolicy& tp = {});

// Relative residual of the parameter-only form of the same identity for the
// generalized weight family (a, b, tau):
//   V_{n,k} = sum_j C(k+j, j) ((b)_{n; tau})^j (a + b + tau (n-1))^k V_{n+1,k+j}.
// support, when set, promises v(n, k') = 0 for k' > support and closes the sum.
double general_recursion_residual(const VFunc& v, const GeneralWeightParams& gp, int n, int k,
                                  const TruncationPolicy& tp = {},
                                  std::optional<int> support = std::nullopt);

// Two-parameter specialization: delegates to general_recursion_residual with
// (a, b, tau) = (1 - alpha, theta + alpha, 1), so the two agree bit-for-bit.
double v_recursion_residual(const VFunc& v, const ParamsAT& at, int n, int k,
                            const TruncationPolicy& tp = {},
                            std::optional<int> support = std::nullopt);

// sum_j v(1, j): total mass of the size-1 law. Equals 1 for every properly
// normalized V-array; exposed as a testable predicate rather than enforced at
// construction (V callbacks are opaque).
double initial_mass(const VFunc& v, const TruncationPolicy& tp = {},
                    std::optional<int> support = std::nullopt);

// Convex mixture of V-arrays. Mixtures of consistent arrays are consistent;
// mixtures of distinct extreme solutions are the canonical non-extreme ones.
// Throws std::invalid_argument unless weights are nonnegative, match the
// component count, and sum to 1 within 1e-12.
VFunc mixture_v(std::vector<VFunc> components, std::vector<double> weights);

}  // namespace efpf
