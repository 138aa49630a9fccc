#pragma once

namespace nnoma {

/// gamma(s, x) = int_0^x t^(s-1) e^(-t) dt, for s > 0, x >= 0 (x may be +inf).
/// Power series below x = s + 1, Lentz continued fraction for the upper tail
/// above; about 1e-14 relative accuracy in both branches.
double lower_incomplete_gamma(double s, double x);

/// P(s, x) = gamma(s, x) / Gamma(s).
double regularized_lower_gamma(double s, double x);

/// B(p, q) = Gamma(p) Gamma(q) / Gamma(p + q), for p, q > 0.
double beta_function(double p, double q);

}  // namespace nnoma
