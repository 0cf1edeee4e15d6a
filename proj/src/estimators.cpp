#include "gw/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "gw/special.hpp"

namespace gw {

Classification classify_mean(double m_hat) {
  if (!std::isfinite(m_hat)) throw std::invalid_argument("classify: non-finite m");
  return m_hat < 1.0 ? Classification::SubcriticalOrCritical
                     : Classification::Supercritical;
}

Classification classify_prob(double p) {
  if (!std::isfinite(p)) throw std::invalid_argument("classify: non-finite p");
  return p < 0.5 ? Classification::SubcriticalOrCritical
                 : Classification::Supercritical;
}

std::pair<long long, long long> mle_ratio(const GenerationSeries& series) {
  if (series.generations() < 1)
    throw std::invalid_argument("mle: need at least one transition");
  long long parents = total_parents(series);
  long long children = total_children(series);
  if (parents <= 0) throw std::invalid_argument("mle: no parents observed");
  return {children, parents};
}

double mle_mean(const GenerationSeries& series) {
  auto [children, parents] = mle_ratio(series);
  return static_cast<double>(children) / static_cast<double>(parents);
}

double heyde_p_supercritical(const GenerationSeries& series, bool cumulative) {
  const auto& z = series.z;
  const std::size_t n = z.size() - 1;
  long long df2, threshold;
  if (cumulative) {
    df2 = total_children(series);
    threshold = total_parents(series);
  } else {
    if (n < 1) return 0.0;
    df2 = z[n] - z[0];
    threshold = z[n - 1];
  }
  if (df2 <= 0) return 0.0;
  return chi2_survival(2.0 * threshold, 2.0 * df2);
}

DirichletParams::DirichletParams(std::vector<double> a) : alpha(std::move(a)) {
  if (alpha.size() < 2)
    throw std::invalid_argument("dirichlet: support length must be >= 2");
  for (double v : alpha)
    if (!(v > 0.0)) throw std::invalid_argument("dirichlet: entries must be > 0");
}

double DirichletParams::total() const {
  double t = 0.0;
  for (double v : alpha) t += v;
  return t;
}

DirichletParams dirichlet_posterior(const DirichletParams& prior,
                                    const OffspringCounts& counts) {
  auto sums = counts.column_sums();
  if (static_cast<int>(sums.size()) > static_cast<int>(prior.alpha.size())) {
    for (std::size_t j = prior.alpha.size(); j < sums.size(); ++j)
      if (sums[j] > 0)
        throw std::invalid_argument(
            "dirichlet update: observed offspring size beyond prior support");
  }
  std::vector<double> beta = prior.alpha;
  for (std::size_t j = 0; j < sums.size() && j < beta.size(); ++j)
    beta[j] += static_cast<double>(sums[j]);
  return DirichletParams(std::move(beta));
}

std::pair<double, double> posterior_m_moments(const DirichletParams& params) {
  const auto& b = params.alpha;
  const double total = params.total();
  double mean = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) mean += j * b[j] / total;
  // h' Sigma h with Sigma the Dirichlet covariance
  double var = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) {
    var += j * static_cast<double>(j) * b[j] * (total - b[j]);
    for (std::size_t l = 0; l < b.size(); ++l)
      if (l != j) var -= static_cast<double>(j) * l * b[j] * b[l];
  }
  var /= total * total * (total + 1.0);
  return {mean, std::max(var, 0.0)};
}

DirichletParams agnostic_dirichlet_prior(int k, AgnosticVariant variant,
                                         double eps) {
  if (k < 2) throw std::invalid_argument("agnostic prior: k must be >= 2");
  if (!(eps > 0.0)) throw std::invalid_argument("agnostic prior: eps must be > 0");
  std::vector<double> alpha(k + 1, eps);
  if (variant == AgnosticVariant::A) {
    alpha[0] = 1.0;
    alpha[k] = std::log(2.0) / std::log(static_cast<double>(k));
  } else {
    alpha[0] = std::log(2.0) / std::log(static_cast<double>(k) / (k - 1.0));
    alpha[k] = 1.0;
  }
  return DirichletParams(std::move(alpha));
}

MDensityParams induced_m_density(const DirichletParams& params) {
  const auto& a = params.alpha;
  const int k = params.max_support();
  const double total = params.total();
  double c = 0.0, dsub = 0.0;
  for (int j = 1; j <= k - 1; ++j) {
    c += j * a[j] / total;
    dsub += (k - j) * a[j] / total;
  }
  return {a[k], a[0], c, k - dsub};
}

double m_density_value(const MDensityParams& p, double m) {
  if (m <= p.c || m >= p.d) return 0.0;
  double logv = (p.a - 1.0) * std::log(m - p.c) + (p.b - 1.0) * std::log(p.d - m) -
                log_beta(p.a, p.b) - (p.a + p.b - 1.0) * std::log(p.d - p.c);
  return std::exp(logv);
}

}  // namespace gw
