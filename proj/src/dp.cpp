#include "gw/dp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gw {

DpPrior::DpPrior(double concentration, OffspringDistribution g0)
    : a(concentration), base(std::move(g0)) {
  if (!(a > 0.0)) throw std::invalid_argument("dp prior: a must be > 0");
}

double DpPosterior::empirical_weight() const {
  return static_cast<double>(n_obs) / (static_cast<double>(n_obs) + prior_a);
}

DpPosterior dp_posterior(const DpPrior& prior, const OffspringCounts& counts) {
  counts.validate();
  DpPosterior post{prior.a, prior.base, {}, 0};
  auto sums = counts.column_sums();
  for (std::size_t j = 0; j < sums.size(); ++j) {
    if (sums[j] > 0) {
      post.atoms[static_cast<long long>(j)] += sums[j];
      post.n_obs += sums[j];
    }
  }
  return post;
}

double posterior_mean_pmf(const DpPosterior& post, long long j) {
  if (j < 0) throw std::invalid_argument("posterior_mean_pmf: j must be >= 0");
  double w = post.empirical_weight();
  double empirical = 0.0;
  if (post.n_obs > 0) {
    auto it = post.atoms.find(j);
    if (it != post.atoms.end())
      empirical = static_cast<double>(it->second) / post.n_obs;
  }
  return w * empirical + (1.0 - w) * post.base.pmf(j);
}

double posterior_mean_m(const DpPosterior& post) {
  double w = post.empirical_weight();
  double sample_mean = 0.0;
  if (post.n_obs > 0) {
    double total = 0.0;
    for (const auto& [value, count] : post.atoms)
      total += static_cast<double>(value) * count;
    sample_mean = total / post.n_obs;
  }
  return w * sample_mean + (1.0 - w) * post.base.mean();
}

DirichletParams dirichlet_equivalent(const DpPrior& prior, int k) {
  if (k < 1) throw std::invalid_argument("dirichlet_equivalent: k must be >= 1");
  double covered = prior.base.cdf(k);
  if (1.0 - covered > 1e-12)
    throw std::invalid_argument(
        "dirichlet_equivalent: base has mass outside {0..k}");
  std::vector<double> alpha(k + 1);
  for (int j = 0; j <= k; ++j) alpha[j] = prior.a * prior.base.pmf(j);
  return DirichletParams(std::move(alpha));
}

double DpRealization::pmf(long long j) const {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), j);
  if (it == atoms.end() || *it != j) return 0.0;
  return weights[it - atoms.begin()];
}

double DpRealization::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) m += atoms[i] * weights[i];
  return m;
}

long long DpRealization::sample(RngStream& rng) const {
  double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u <= acc) return atoms[i];
  }
  return atoms.back();
}

namespace {

// one draw from the updated base mixture
long long sample_updated_base(const DpPosterior& post, RngStream& rng) {
  double w = post.empirical_weight();
  if (post.n_obs > 0 && rng.uniform() < w) {
    // multiplicity-weighted atom pick
    double u = rng.uniform() * post.n_obs;
    double acc = 0.0;
    for (const auto& [value, count] : post.atoms) {
      acc += static_cast<double>(count);
      if (u <= acc) return value;
    }
    return post.atoms.rbegin()->first;
  }
  return post.base.sample(rng);
}

}  // namespace

DpRealization sample_realization(const DpPosterior& post, double truncation_tol,
                                 RngStream& rng) {
  if (!(truncation_tol > 0.0 && truncation_tol < 1.0))
    throw std::invalid_argument("sample_realization: bad truncation_tol");
  const double c = post.concentration();
  std::map<long long, double> mass;
  double remaining = 1.0;
  while (remaining >= truncation_tol) {
    double v = rng.beta(1.0, c);
    double w = remaining * v;
    mass[sample_updated_base(post, rng)] += w;
    remaining -= w;
  }
  mass[sample_updated_base(post, rng)] += remaining;  // weights sum to 1 exactly
  DpRealization out;
  out.atoms.reserve(mass.size());
  out.weights.reserve(mass.size());
  for (const auto& [atom, weight] : mass) {
    out.atoms.push_back(atom);
    out.weights.push_back(weight);
  }
  return out;
}

long long support_size_estimate(const DpPosterior& post, int draws,
                                long long sample_size, SeedSpec seed,
                                double truncation_tol) {
  if (draws < 1) throw std::invalid_argument("support_size: draws must be >= 1");
  if (sample_size <= 0) sample_size = std::max<long long>(post.n_obs, 1);
  std::map<long long, int> k_counts;
  for (int d = 0; d < draws; ++d) {
    RngStream rng(SeedSpec{seed.seed, seed.stream * 1000003ULL + d});
    DpRealization g = sample_realization(post, truncation_tol, rng);
    // distinct values among sample_size observations from g
    std::vector<char> seen(g.atoms.size(), 0);
    // sample atom indices directly off the weight vector
    for (long long s = 0; s < sample_size; ++s) {
      double u = rng.uniform();
      double acc = 0.0;
      std::size_t idx = g.weights.size() - 1;
      for (std::size_t i = 0; i < g.weights.size(); ++i) {
        acc += g.weights[i];
        if (u <= acc) {
          idx = i;
          break;
        }
      }
      seen[idx] = 1;
    }
    long long distinct = std::count(seen.begin(), seen.end(), char(1));
    ++k_counts[distinct];
  }
  long long mode = -1;
  int best = -1;
  for (const auto& [k, count] : k_counts) {
    if (count > best) {  // map order breaks ties toward the smaller k
      best = count;
      mode = k;
    }
  }
  return mode;
}

}  // namespace gw
