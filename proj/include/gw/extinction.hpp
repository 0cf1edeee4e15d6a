#ifndef GW_EXTINCTION_HPP
#define GW_EXTINCTION_HPP

#include "gw/offspring.hpp"

namespace gw {

struct ExtinctionResult {
  double q = 1.0;
  double residual = 0.0;  // |G(q) - q|
  int iterations = 0;
  enum class Method { ClosedForm, Bisection } method = Method::ClosedForm;
};

// Extinction probability as the smallest root of G(q) = q.  Returns
// q = 1 exactly when the mean is <= 1 (within 1e-12 of the threshold),
// the closed form p/(1-p) for supercritical geometric laws, and
// otherwise bisects on [0, 1 - 1e-9]; G is convex so the smallest fixed
// point is bracketed there.
ExtinctionResult extinction_probability(const OffspringDistribution& dist,
                                        double tol = 1e-12,
                                        bool force_bisection = false);

}  // namespace gw

#endif
