#include "gw/gibbs.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gw {

std::vector<long long> constrained_multinomial(long long z_i, long long z_next,
                                               std::span<const double> probs,
                                               RngStream& rng,
                                               long long max_tries,
                                               long long* attempts) {
  const long long k = static_cast<long long>(probs.size()) - 1;
  if (z_i < 0 || z_next < 0)
    throw std::invalid_argument("constrained multinomial: negative totals");
  if (z_i == 0) {
    if (z_next != 0)
      throw std::invalid_argument(
          "constrained multinomial: no parents but nonzero children");
    return std::vector<long long>(k + 1, 0);
  }
  if (z_next > k * z_i)
    throw std::invalid_argument(
        "constrained multinomial: infeasible (children " + std::to_string(z_next) +
        " > k*parents " + std::to_string(k * z_i) + ")");
  std::vector<long long> row(k + 1, 0);
  // forced rows have a single feasible outcome; no sampling needed
  if (z_next == 0) {
    row[0] = z_i;
  } else if (z_next == k * z_i) {
    row[k] = z_i;
  } else if (z_i == 1) {
    row[z_next] = 1;
  }
  if (row != std::vector<long long>(k + 1, 0)) {
    if (attempts) *attempts += 1;
    return row;
  }
  for (long long tries = 1; tries <= max_tries; ++tries) {
    std::fill(row.begin(), row.end(), 0);
    long long children = 0;
    for (long long parent = 0; parent < z_i; ++parent) {
      int j = rng.categorical(probs);
      ++row[j];
      children += j;
      if (children > z_next) break;  // already over, reject early
    }
    if (children == z_next) {
      if (attempts) *attempts += tries;
      return row;
    }
  }
  throw std::runtime_error("constrained multinomial: accept-reject exhausted " +
                           std::to_string(max_tries) + " tries");
}

namespace {

// cell parameters of the conjugate pi draw given imputed column sums
std::vector<double> step2_params(const GibbsConfig& config,
                                 std::span<const long long> column_sums) {
  const int k = config.k_trunc;
  std::vector<double> out(k + 1);
  if (const auto* dir = std::get_if<DirichletParams>(&config.prior)) {
    if (dir->max_support() != k)
      throw std::invalid_argument("gibbs: Dirichlet prior support != k_trunc");
    for (int j = 0; j <= k; ++j) out[j] = dir->alpha[j] + column_sums[j];
  } else {
    const auto& dp = std::get<DpPrior>(config.prior);
    // partition {0},...,{k-1},[k,inf): the last cell takes the base tail
    for (int j = 0; j < k; ++j) out[j] = dp.a * dp.base.pmf(j) + column_sums[j];
    out[k] = dp.a * (1.0 - dp.base.cdf(k - 1)) + column_sums[k];
  }
  return out;
}

}  // namespace

GibbsChain run_chain(const GenerationSeries& series, const GibbsConfig& config,
                     SeedSpec seed) {
  if (config.iterations < 1 || config.burn_in < 0 ||
      config.burn_in >= config.iterations)
    throw std::invalid_argument("gibbs: need 0 <= burn_in < iterations");
  const int k = config.k_trunc;
  if (k < 1) throw std::invalid_argument("gibbs: k_trunc must be >= 1");
  const auto& z = series.z;
  const int n = series.generations();
  if (n < 1) throw std::invalid_argument("gibbs: series has no transitions");
  for (int i = 0; i < n; ++i) {
    if (z[i + 1] > static_cast<long long>(k) * z[i])
      throw std::invalid_argument(
          "gibbs: transition " + std::to_string(i) + " -> " + std::to_string(i + 1) +
          " infeasible under k_trunc=" + std::to_string(k));
  }

  RngStream rng(seed);
  // pi^(0): one draw from the prior
  std::vector<long long> zero_sums(k + 1, 0);
  std::vector<double> pi = rng.dirichlet(step2_params(config, zero_sums));

  GibbsChain chain;
  chain.m_samples.reserve(config.iterations - config.burn_in);
  std::vector<long long> column_sums(k + 1);

  auto sweep = [&](long long max_tries) {
    std::fill(column_sums.begin(), column_sums.end(), 0);
    for (int i = 0; i < n; ++i) {
      std::vector<long long> row;
      try {
        row = constrained_multinomial(z[i], z[i + 1], pi, rng, max_tries,
                                      &chain.total_attempts);
      } catch (const std::runtime_error& e) {
        throw std::runtime_error("gibbs: generation " + std::to_string(i) + ": " +
                                 e.what());
      }
      ++chain.total_rows;
      for (int j = 0; j <= k; ++j) column_sums[j] += row[j];
    }
  };

  std::vector<long long> prev_sums = zero_sums;
  for (int iter = 0; iter < config.iterations; ++iter) {
    // A pi draw with near-zero mass on a needed cell can make the
    // accept-reject imputation astronomically unlikely.  Redraw pi from
    // the same conditional and retry (rare; negligible perturbation of
    // the kernel); the first iteration falls back to the prior mean
    // because every draw from an epsilon-shaped prior is degenerate.
    for (int attempt = 0;; ++attempt) {
      try {
        sweep(iter == 0 ? std::min<long long>(config.max_tries, 10000)
                        : config.max_tries);
        break;
      } catch (const std::runtime_error&) {
        if (iter == 0 && attempt >= 2) {
          auto cells = step2_params(config, zero_sums);
          double total = std::accumulate(cells.begin(), cells.end(), 0.0);
          pi.assign(cells.begin(), cells.end());
          for (double& p : pi) p /= total;
          sweep(config.max_tries);  // still fails loudly if truly stuck
          break;
        }
        if (attempt >= 50) throw;
        pi = rng.dirichlet(step2_params(config, prev_sums));
      }
    }
    pi = rng.dirichlet(step2_params(config, column_sums));
    prev_sums = column_sums;
    if (iter >= config.burn_in) {
      double m = 0.0;
      for (int j = 0; j <= k; ++j) m += j * pi[j];
      chain.m_samples.push_back(m);
      if (config.keep_pi) chain.pi_samples.push_back(pi);
    }
  }
  return chain;
}

PosteriorSummary chain_summary(const GibbsChain& chain) {
  if (chain.m_samples.empty())
    throw std::invalid_argument("chain_summary: empty chain");
  const auto& s = chain.m_samples;
  double mean = std::accumulate(s.begin(), s.end(), 0.0) / s.size();
  double var = 0.0;
  for (double v : s) var += (v - mean) * (v - mean);
  var = s.size() > 1 ? var / (s.size() - 1) : 0.0;
  PosteriorSummary out;
  out.m_hat = mean;
  out.m_var = var;
  out.classification = classify_mean(mean);
  return out;
}

}  // namespace gw
