#ifndef GW_GIBBS_HPP
#define GW_GIBBS_HPP

#include <cstdint>
#include <variant>
#include <vector>

#include "gw/dp.hpp"
#include "gw/estimators.hpp"
#include "gw/process.hpp"
#include "gw/rng.hpp"

namespace gw {

struct GibbsConfig {
  int iterations = 2000;
  int burn_in = 500;
  int k_trunc = 10;
  long long max_tries = 1'000'000;
  std::variant<DirichletParams, DpPrior> prior = DirichletParams({1.0, 1.0});
  bool keep_pi = false;
};

struct GibbsChain {
  std::vector<double> m_samples;              // post burn-in
  std::vector<std::vector<double>> pi_samples;  // retained when keep_pi
  long long total_attempts = 0;               // accept-reject attempts
  long long total_rows = 0;
};

// One constrained-multinomial row: Multinomial(z_i, probs) conditioned
// on the children total equalling z_next, by accept-reject.  Throws on
// infeasible inputs (z_next > k * z_i) and when max_tries is exhausted.
std::vector<long long> constrained_multinomial(long long z_i, long long z_next,
                                               std::span<const double> probs,
                                               RngStream& rng,
                                               long long max_tries,
                                               long long* attempts = nullptr);

// Blocked Gibbs for incomplete data: alternates row imputation per
// generation with a conjugate draw of pi (Dirichlet posterior, or the
// finite-partition Dirichlet marginal of the DP posterior on
// {0},...,{k-1},[k,inf)).
GibbsChain run_chain(const GenerationSeries& series, const GibbsConfig& config,
                     SeedSpec seed);

PosteriorSummary chain_summary(const GibbsChain& chain);

}  // namespace gw

#endif
