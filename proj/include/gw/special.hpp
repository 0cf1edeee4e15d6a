#ifndef GW_SPECIAL_HPP
#define GW_SPECIAL_HPP

namespace gw {

// Regularized incomplete gamma functions, accurate to ~1e-14 via the
// usual series / continued-fraction pair.
double reg_gamma_lower(double s, double x);  // P(s, x)
double reg_gamma_upper(double s, double x);  // Q(s, x)

// Survival function of a chi-square with df degrees of freedom.
double chi2_survival(double x, double df);

double log_beta(double a, double b);

}  // namespace gw

#endif
