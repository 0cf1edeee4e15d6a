#ifndef GW_ESTIMATORS_HPP
#define GW_ESTIMATORS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "gw/process.hpp"

namespace gw {

enum class Classification { SubcriticalOrCritical, Supercritical };

struct PosteriorSummary {
  double m_hat = 0.0;
  double m_var = 0.0;
  std::optional<double> p_supercritical;
  Classification classification = Classification::SubcriticalOrCritical;
};

// m_hat < 1 -> (sub)critical, ties go supercritical
Classification classify_mean(double m_hat);
// p < 0.5 -> (sub)critical, ties go supercritical
Classification classify_prob(double p_supercritical);

// Ratio of total children to total parents, exact integer totals.
std::pair<long long, long long> mle_ratio(const GenerationSeries& series);
double mle_mean(const GenerationSeries& series);

// Improper-prior approximation P(m > 1) ~ P(chi^2_{2(Z_n - Z_0)} > 2 Z_{n-1})
// with single generation totals, returning 0 when the degrees of freedom
// are <= 0.  The cumulative variant replaces Z_n - Z_0 by the total
// number of children and Z_{n-1} by the total number of parents (the
// gamma-posterior form); it is offered for comparison only.
double heyde_p_supercritical(const GenerationSeries& series,
                             bool cumulative = false);

struct DirichletParams {
  std::vector<double> alpha;

  explicit DirichletParams(std::vector<double> a);
  int max_support() const { return static_cast<int>(alpha.size()) - 1; }
  double total() const;
};

// beta_j = alpha_j + sum_i Z_ij; counts with mass beyond the prior
// support are rejected.
DirichletParams dirichlet_posterior(const DirichletParams& prior,
                                    const OffspringCounts& counts);

// first two moments of m = h'pi under Dirichlet(beta), h = (0,1,...,k)
std::pair<double, double> posterior_m_moments(const DirichletParams& params);

enum class AgnosticVariant { A, B };

// Variant A: (1, eps, ..., eps, log2/log k); variant B puts the unit
// mass at alpha_k with alpha_0 = log2/log(k/(k-1)).  eps stands in for
// the reference's "~0" entries; much smaller values break gamma-based
// Dirichlet sampling.
DirichletParams agnostic_dirichlet_prior(int k, AgnosticVariant variant,
                                         double eps = 1e-4);

// Non-standard beta density of m induced by a Dirichlet prior:
// p(m) proportional to (m-c)^{a-1} (d-m)^{b-1} on [c, d].
struct MDensityParams {
  double a, b, c, d;
};

MDensityParams induced_m_density(const DirichletParams& params);
double m_density_value(const MDensityParams& p, double m);

}  // namespace gw

#endif
