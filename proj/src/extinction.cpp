#include "gw/extinction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gw {

ExtinctionResult extinction_probability(const OffspringDistribution& dist,
                                        double tol, bool force_bisection) {
  if (!(tol > 0.0)) throw std::invalid_argument("extinction: tol must be > 0");
  ExtinctionResult result;
  const double m = dist.mean();
  if (m <= 1.0 + 1e-12) {
    // Theorem is exact here; threshold fuzz must not yield q < 1
    result.q = 1.0;
    result.residual = 0.0;
    result.method = ExtinctionResult::Method::ClosedForm;
    return result;
  }
  if (!force_bisection &&
      dist.family() == OffspringDistribution::Family::Geometric) {
    double p = dist.param();
    result.q = p / (1.0 - p);  // 1/m
    result.residual = std::fabs(dist.pgf(result.q) - result.q);
    result.method = ExtinctionResult::Method::ClosedForm;
    return result;
  }
  // f(q) = G(q) - q: f(0) = P(X=0) >= 0, and f < 0 just left of 1 when
  // m > 1; the 1e-9 offset excludes the trivial fixed point q = 1
  double lo = 0.0, hi = 1.0 - 1e-9;
  const int cap = 200;
  int it = 0;
  for (; it < cap; ++it) {
    double mid = 0.5 * (lo + hi);
    double f = dist.pgf(mid) - mid;
    if (f > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < tol) break;
  }
  if (it >= cap)
    throw std::runtime_error("extinction: bisection did not converge");
  result.q = 0.5 * (lo + hi);
  result.residual = std::fabs(dist.pgf(result.q) - result.q);
  result.iterations = it + 1;
  result.method = ExtinctionResult::Method::Bisection;
  if (result.residual > tol) {
    // bracket converged but the fixed-point residual is still above
    // tolerance; polish with a few secant steps
    double q = result.q;
    for (int i = 0; i < 50 && std::fabs(dist.pgf(q) - q) > tol; ++i) {
      double g = dist.pgf(q);
      double h = 1e-8;
      double slope = (dist.pgf(std::min(1.0, q + h)) - g) / h;
      q -= (g - q) / (slope - 1.0);
      q = std::clamp(q, 0.0, 1.0 - 1e-12);
    }
    result.q = q;
    result.residual = std::fabs(dist.pgf(q) - q);
    if (result.residual > tol)
      throw std::runtime_error("extinction: residual above tolerance");
  }
  return result;
}

}  // namespace gw
