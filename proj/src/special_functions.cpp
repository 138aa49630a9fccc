#include "nnoma/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nnoma/common.hpp"

namespace nnoma {
namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;

void check_gamma_domain(double s, double x) {
  if (!(s > 0.0) || !std::isfinite(s)) invalid_argument("s", "incomplete gamma needs s > 0");
  if (!(x >= 0.0) || std::isnan(x)) invalid_argument("x", "incomplete gamma needs x >= 0");
}

// x^s e^-x, evaluated in log space.
double prefactor(double s, double x) { return std::exp(s * std::log(x) - x); }

// Series: gamma(s,x) = x^s e^-x sum_n x^n / (s (s+1) ... (s+n)).
double series_lower(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  double ap = s;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * prefactor(s, x);
}

// Continued fraction for the upper incomplete gamma Gamma(s, x) (modified Lentz).
double cf_upper(double s, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return prefactor(s, x) * h;
}

}  // namespace

double lower_incomplete_gamma(double s, double x) {
  check_gamma_domain(s, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return std::tgamma(s);
  if (x < s + 1.0) return series_lower(s, x);
  return std::tgamma(s) - cf_upper(s, x);
}

double regularized_lower_gamma(double s, double x) {
  check_gamma_domain(s, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < s + 1.0) return series_lower(s, x) / std::tgamma(s);
  return 1.0 - cf_upper(s, x) / std::tgamma(s);
}

double beta_function(double p, double q) {
  if (!(p > 0.0) || !std::isfinite(p)) invalid_argument("p", "Beta function needs p > 0");
  if (!(q > 0.0) || !std::isfinite(q)) invalid_argument("q", "Beta function needs q > 0");
  return std::exp(std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q));
}

}  // namespace nnoma
