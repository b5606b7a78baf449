#pragma once

#include <optional>

#include "efpf/errors.hpp"
#include "efpf/log_real.hpp"
#include "efpf/params.hpp"
#include "efpf/weights.hpp"

namespace efpf {

// The feature-count chain K_n (number of realized features after n
// individuals) of a product-form family. A law is a V-array plus the
// (alpha, theta) weight parameters; the factory spot-checks that the array
// actually satisfies the one-step recursion before accepting it.
struct ChainLaw {
  VFunc v;
  ParamsAT at;
  std::optional<int> k_support_bound;
};

// Validates the recursion residual at a few small (n, k) sites (tolerance
// 1e-8) and throws std::domain_error on failure.
ChainLaw make_chain_law(VFunc v, const ParamsAT& at,
                        std::optional<int> k_support_bound = std::nullopt);
ChainLaw ibp3_chain_law(const Ibp3Params& p);
ChainLaw bb_chain_law(const BetaBernoulliParams& p);

// P(K_1 = j) = V_{1,j}.
LogReal initial_prob(const ChainLaw& cl, int j);

// Forward law: P(K_{n+1} = k + j | K_n = k)
//   = C(k+j, j) ((alpha+theta)_n)^j (theta+n)^k V_{n+1,k+j} / V_{n,k}.
// Throws conditioning_error when V_{n,k} = 0.
LogReal transition_prob(const ChainLaw& cl, int n, int k, int j);

// sum_{j=1}^{m-n} (alpha+theta)_{m-j} (theta+m-1)^{(j-1)} (falling power).
// Shared inner sum of the d-arrays below. Evaluated by the term-ratio
// recurrence term_{j+1}/term_j = (theta+m-j)/(alpha+theta+m-j-1) in long
// double with rescaling (terms are increasing: the ratio exceeds 1 exactly
// when alpha < 1), so cost is O(m) and there is no cancellation. m >= n
// (empty sum gives zero), n >= 1.
LogReal cotransition_tail_sum(const ParamsAT& at, long long n, long long m);

// d^{m,l} = ((theta+1)_{m-1} + cotransition_tail_sum(1, m))^l: the
// unnormalized weight of K_m = l. d^{1,l} = 1 for all l.
LogReal d_big(const ParamsAT& at, long long m, long long l);

// d^{m,l}_{n,k} = C(l,k) ((theta+n)_{m-n})^k cotransition_tail_sum(n, m)^{l-k}:
// the joint weight of K_n = k within K_m = l. Requires 1 <= n < m, 0 <= k <= l.
LogReal d_small(const ParamsAT& at, long long n, long long k, long long m, long long l);

// Backward (cotransition) law: P(K_n = k | K_m = l) = d_small / d_big(m, l)
// * d_big(n, k). Does not involve V: the backward law is shared by every
// consistent family with the same (alpha, theta).
LogReal cotransition_prob(const ParamsAT& at, int n, int k, long long m, long long l);

// Marginal P(K_n = k) = V_{n,k} d^{n,k}.
LogReal marginal_kn(const ChainLaw& cl, int n, int k);

// P(K_n = k | K_m = l) by complete enumeration of monotone count paths
// k_1 <= ... <= k_m weighted by initial and transition probabilities. Exact:
// conditioning on K_m = l bounds every intermediate count by l, so the
// enumeration closes whenever l <= 12 or the law has a finite support bound;
// otherwise feasibility_error. Requires m <= 8. Throws conditioning_error if
// P(K_m = l) = 0.
LogReal brute_force_cotransition(const ChainLaw& cl, int n, int k, int m, int l);

// Relative gap between cotransition_tail_sum and its gamma-function closed
// form
//   Gamma(a+t+m)/(a Gamma(a+t)) - Gamma(t+m) Gamma(a+t+n)/(a Gamma(a+t) Gamma(t+n)),
// a = alpha, t = theta. Requires alpha != 0 and 1 <= n < m.
double hypergeometric_identity_gap(const ParamsAT& at, long long n, long long m);

// alpha = 0 counterpart: closed form (theta)_m * sum_{i=1}^{m-n} 1/(theta+m-i).
// Requires theta > 0 and 1 <= n < m.
double harmonic_identity_gap(double theta, long long n, long long m);

}  // namespace efpf
