#ifndef GW_DP_HPP
#define GW_DP_HPP

#include <map>
#include <vector>

#include "gw/estimators.hpp"
#include "gw/offspring.hpp"
#include "gw/process.hpp"
#include "gw/rng.hpp"

namespace gw {

struct DpPrior {
  double a;  // concentration
  OffspringDistribution base;

  DpPrior(double concentration, OffspringDistribution g0);
};

// Conjugate posterior: DP(a + N, (N/(N+a)) empirical + (a/(N+a)) G0).
// atoms holds the observed offspring values with multiplicities.
struct DpPosterior {
  double prior_a;
  OffspringDistribution base;
  std::map<long long, long long> atoms;
  long long n_obs = 0;

  double concentration() const { return prior_a + static_cast<double>(n_obs); }
  double empirical_weight() const;  // N / (N + a)
};

DpPosterior dp_posterior(const DpPrior& prior, const OffspringCounts& counts);

// E[G({j}) | data], the weighted average of the observed proportion and
// the base pmf.
double posterior_mean_pmf(const DpPosterior& post, long long j);

// Mean of the posterior-updated base measure; by linearity the weighted
// average of the atom sample mean and the base mean.
double posterior_mean_m(const DpPosterior& post);

// Finite-partition marginal: alpha_j = a * pmf(base, j).  Bases with
// mass above 1e-12 outside {0..k} are rejected rather than renormalized.
DirichletParams dirichlet_equivalent(const DpPrior& prior, int k);

// One draw from the DP posterior as a finite discrete measure.
struct DpRealization {
  std::vector<long long> atoms;    // sorted, distinct
  std::vector<double> weights;     // same length, sums to 1 exactly

  double pmf(long long j) const;
  double mean() const;
  long long sample(RngStream& rng) const;
};

// Truncated stick breaking against the updated base mixture; sticks are
// emitted until the residual mass drops below truncation_tol, and the
// residual is assigned to one final atom draw.
DpRealization sample_realization(const DpPosterior& post, double truncation_tol,
                                 RngStream& rng);

// Modal number of distinct values in `draws` posterior samples of size
// sample_size (default: the posterior's N); ties report the smaller
// support size.
long long support_size_estimate(const DpPosterior& post, int draws,
                                long long sample_size, SeedSpec seed,
                                double truncation_tol = 1e-8);

}  // namespace gw

#endif
