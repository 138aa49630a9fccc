#include "nnoma/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nnoma/special_functions.hpp"

namespace nnoma {
namespace {

using Real = long double;

AnalyticOutage clamped(double raw, std::string note) {
  AnalyticOutage out;
  out.raw = raw;
  out.value = std::clamp(raw, 0.0, 1.0);
  if (raw > 1.0) note += ";clamped-above-1";
  if (raw < 0.0) note += ";clamped-below-0";
  out.regime_note = std::move(note);
  return out;
}

void check_alpha(double alpha) {
  if (!(alpha >= 2.0) || !std::isfinite(alpha)) invalid_argument("alpha", "path-loss exponent must be >= 2");
}

// Difference F(phi) - F(0) of the antiderivative of the cross term
// 2 sqrt(2) beta0^2 v sqrt(a u^2 + b v^2 + c) (v^2 - u^2), integrated over 0 < u < v.
// Evaluated in extended precision: the c^3/b^2 terms cancel strongly when b is small.
Real cross_term(Real a, Real b, Real c, Real beta0_sq, Real v) {
  const Real sa = std::sqrt(a);
  const Real sab = std::sqrt(a + b);
  const Real s = std::sqrt((a + b) * v * v + c);
  const Real v2 = v * v;
  const Real v4 = v2 * v2;
  const Real atanh_arg = sa * v / s;
  if (!(atanh_arg >= 0 && atanh_arg < 1) || !(c > 0))
    throw Error(ErrorCode::invalid_argument, "kappa", "F(v) branch arguments left their proven-positive domain");
  const Real t1 = -c * c * c * (2 * a - b) * std::atanh(atanh_arg) / (b * b);
  const Real t2 = -sa * v * s * (b * (b - 2 * a) * v4 + 2 * b * c * v2 + c * c) / b;
  const Real t3 = v2 * (b * (4 * a + b) * v4 + 3 * (2 * a + b) * c * v2 + 3 * c * c) *
                  std::log((s + sa * v) / std::sqrt(b * v2 + c));
  // log(sqrt(a+b) s(v) + (a+b) v) - log(sqrt(a+b) s(0)) = asinh(v sqrt((a+b)/c)).
  const Real t4 = 2 * a * sa * c * c * c * std::asinh(v * sab / std::sqrt(c)) / (b * b * sab);
  return 2 * std::sqrt(Real(2)) * beta0_sq / (48 * a * sa) * (t1 + t2 + t3 + t4);
}

Real polynomial_term(Real a, Real c, Real d, Real v) {
  const Real v4 = v * v * v * v;
  const Real v6 = v4 * v * v;
  return Real(2) / 15 * (a * v6 / 6 + 5 * c * v4 / 4 + 5 * d * v6 / 6);
}

}  // namespace

CellEdgeCoefficients cell_edge_coefficients(const SchemeConfig& config) {
  config.validate();
  const double b0 = config.beta0_sq;
  const double b1 = config.beta1_sq;
  const double eta0 = thresholds(config)[0];
  CellEdgeCoefficients k;
  k.a = b0 * b1 * eta0 - b1 * b1 * eta0 * eta0;
  k.b = 3.0 * b0 * b1 * eta0 - b1 * b1 * eta0 * eta0;
  k.c = (b0 - b1 * eta0) * eta0 / config.rho;
  k.d = 2.0 * b0 * b0 + 3.0 * b0 * b1 * eta0 - b1 * b1 * eta0 * eta0;
  k.phi = std::sqrt(eta0 / (config.rho * (2.0 * b0 - b1 * eta0)));
  k.phi1 = std::sqrt(eta0 / (config.rho * (2.0 * b0 - 2.0 * b1 * eta0)));
  return k;
}

double kappa(const SchemeConfig& config) {
  const CellEdgeCoefficients k = cell_edge_coefficients(config);
  const double eta0 = thresholds(config)[0];
  if (eta0 == 0.0) return 0.0;
  const double b0 = config.beta0_sq;
  const double margin = b0 - config.beta1_sq * eta0;
  if (config.beta1_sq == 0.0) {
    // Pure beamforming limit (a = b = 0): 4 Q1 with Q1 = eta0^3 / (360 rho^3 beta0^6).
    return eta0 * eta0 * eta0 / (90.0 * std::pow(config.rho, 3) * b0 * b0 * b0);
  }
  const Real g = polynomial_term(k.a, k.c, k.d, k.phi);
  const Real f = cross_term(k.a, k.b, k.c, b0, k.phi);
  return static_cast<double>(4 * (g - f) / (Real(margin) * margin));
}

PathlossExpectation expected_pathloss_product(double side_length, double big_radius, double alpha) {
  check_alpha(alpha);
  const double area = intersection_area(side_length, big_radius);  // validates (l, R0)
  const double l = side_length;
  const double r0 = big_radius;
  PathlossExpectation out;
  if (alpha == 2.0) {
    out.regime_note = "E[L]=exact-alpha2";
    if (r0 / l - 1.0 / kSqrt3 < 1e-5) {
      out.value = std::pow(l, 6) / 27.0;  // centroid limit, as in lambda_of_k
      return out;
    }
    const double as = std::asin(std::clamp(l / (2.0 * r0), -1.0, 1.0));
    const double l2 = l * l, l4 = l2 * l2, l6 = l4 * l2, l8 = l4 * l4;
    const double r2 = r0 * r0, r4 = r2 * r2, r6 = r4 * r2, r8 = r4 * r4;
    const double bracket = l8 / (8.0 * kSqrt3) + (3.0 * kSqrt3 + 4.0 * kPi) * l4 * r4 +
                           8.0 * (kSqrt3 + kPi) * l2 * r6 + 2.0 * kPi * r8 -
                           6.0 * r4 * (2.0 * l4 + 4.0 * l2 * r2 + r4) * as -
                           l * r0 * std::sqrt(std::max(0.0, 4.0 - l2 / r2)) *
                               (l6 + 2.0 * l4 * r2 + 102.0 * l2 * r4 + 84.0 * r6) / 8.0;
    out.value = bracket / (8.0 * area);
    return out;
  }
  out.value = std::pow(3.0, -1.5 * alpha) * std::pow(l, 3.0 * alpha);
  out.regime_note = "E[L]~centroid";
  if (r0 / l > 1.2 / kSqrt3) out.regime_note += ";k>1.2/sqrt3-accuracy-unestablished";
  return out;
}

AnalyticOutage p0_noma_analytic(const NetworkLayout& layout, const SchemeConfig& config, double alpha) {
  const PathlossExpectation e = expected_pathloss_product(layout.side_length, layout.big_radius, alpha);
  return clamped(kappa(config) * e.value, "cell-edge-highsnr;" + e.regime_note);
}

AnalyticOutage p0_oma_analytic(double side_length, double alpha, double eta0, double rho) {
  check_alpha(alpha);
  if (!(side_length > 0.0)) invalid_argument("side_length", "must be positive");
  if (!(eta0 >= 0.0)) invalid_argument("eta0", "must be >= 0");
  if (!(rho > 0.0)) invalid_argument("rho", "must be positive");
  if (eta0 == 0.0) return clamped(0.0, "oma-centroid");
  // e^-x (2 (e^x - 1) - 2x - x^2) / 2 = 1 - e^-x (1 + x + x^2/2), evaluated as P(3, x)
  // so that the x^3/6 leading term survives at high SNR.
  const double x = std::pow(3.0, -alpha / 2.0 - 1.0) * eta0 * std::pow(side_length, alpha) / rho;
  return clamped(regularized_lower_gamma(3.0, x), "oma-centroid");
}

double near_user_threshold_factor(const SchemeConfig& config, int j) {
  config.validate();
  if (j < 1 || j > kNumBs) invalid_argument("j", "near-user index must be 1, 2 or 3");
  const auto eta = thresholds(config);
  const double sic = eta[0] / (config.beta0_sq - config.beta1_sq * eta[0]);
  if (config.beta1_sq == 0.0) return eta[j] > 0.0 ? std::numeric_limits<double>::infinity() : sic;
  return std::max(sic, eta[j] / config.beta1_sq);
}

AnalyticOutage pj_noma_analytic(const NetworkLayout& layout, const SchemeConfig& config, double alpha, int j) {
  check_alpha(alpha);
  const double m = near_user_threshold_factor(config, j);
  std::string note = "near-user";
  if (layout.near_radii[j - 1] > layout.side_length / 10.0) note += ";R_j>l/10";
  if (std::isinf(m)) return clamped(1.0, note + ";beta1=0");
  const double radius = layout.near_radii[j - 1];
  if (radius == 0.0) return clamped(0.0, note + ";R_j=0");
  const double delta = 2.0 / alpha;
  const double t = m * std::pow(radius, alpha) / config.rho;
  if (t == 0.0) return clamped(0.0, note);
  // Same expression with rho^(2/alpha) M^-(2/alpha) R^-2 folded into T^-(2/alpha).
  const double own = 2.0 * lower_incomplete_gamma(delta, t) / (alpha * std::pow(t, delta));
  const double cross = 4.0 * config.beta1_sq * m * std::pow(radius / layout.side_length, alpha) *
                       lower_incomplete_gamma(delta + 1.0, t) / (alpha * std::pow(t, delta + 1.0));
  return clamped(1.0 - (own - cross), note);
}

AnalyticOutage pj_noma_interference_analytic(const NetworkLayout& layout, const SchemeConfig& config,
                                             const InterferenceConfig& interference, double alpha, int j,
                                             int nodes) {
  if (!(alpha > 2.0)) invalid_argument("alpha", "interference analysis needs alpha > 2");
  if (nodes < 1) invalid_argument("nodes", "Gauss-Chebyshev needs N >= 1");
  interference.validate();
  const double m = near_user_threshold_factor(config, j);
  std::string note = "near-user-ppp;N=" + std::to_string(nodes);
  if (layout.near_radii[j - 1] > layout.side_length / 10.0) note += ";R_j>l/10";
  if (std::isinf(m)) return clamped(1.0, note + ";beta1=0");
  const double radius = layout.near_radii[j - 1];
  if (radius == 0.0) return clamped(0.0, note + ";R_j=0");

  const double delta = 2.0 / alpha;
  const double ppp = 2.0 * kPi * interference.intensity * std::pow(m * interference.power_ratio, delta) / alpha *
                     beta_function(delta, 1.0 - delta);
  const double cross = 2.0 * config.beta1_sq * m / std::pow(layout.side_length, alpha);
  auto f = [&](double x) {
    return (x - cross * std::pow(x, alpha + 1.0)) * std::exp(-m / config.rho * std::pow(x, alpha) - ppp * x * x);
  };
  double sum = 0.0;
  for (int n = 1; n <= nodes; ++n) {
    const double theta = std::cos((2.0 * n - 1.0) * kPi / (2.0 * nodes));
    sum += std::sqrt(std::max(0.0, 1.0 - theta * theta)) * f(radius / 2.0 * theta + radius / 2.0);
  }
  // The quadrature sum is the success probability; outage is its complement.
  return clamped(1.0 - kPi / (nodes * radius) * sum, note);
}

double brute_force_p0_oracle(const NetworkLayout& layout, const SchemeConfig& config, double alpha,
                             std::uint64_t trials, Rng& rng) {
  check_alpha(alpha);
  if (trials < 10000) invalid_argument("trials", "oracle needs at least 1e4 trials");
  config.validate();
  const double eta0 = thresholds(config)[0];
  const double square_coeff = config.beta0_sq - config.beta1_sq * eta0;
  const double cross_coeff = 2.0 * config.beta0_sq;
  const double bound = eta0 / config.rho;
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const Point2D p0 = sample_cell_edge(layout, rng);
    std::array<double, kNumBs> x{};
    for (int i = 0; i < kNumBs; ++i) {
      const double d = std::max(distance(p0, layout.bs[i]), 1.0);
      // |h_i0| is Rayleigh with E|h|^2 = d^-alpha.
      x[i] = std::sqrt(-std::log(rng.uniform_open0()) * std::pow(d, -alpha));
    }
    const double lhs = square_coeff * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) +
                       cross_coeff * (x[0] * x[1] + x[0] * x[2] + x[1] * x[2]);
    if (lhs < bound) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace nnoma
