#pragma once

// Closed-form and quadrature approximations of the outage probabilities,
// valid at high SNR (cell-edge user) and for l >> R_j (near users).

#include <cstdint>
#include <string>

#include "nnoma/common.hpp"
#include "nnoma/geometry.hpp"
#include "nnoma/interference.hpp"
#include "nnoma/rng.hpp"
#include "nnoma/schemes.hpp"

namespace nnoma {

/// Chebyshev node count used when the caller does not choose one.
inline constexpr int kDefaultChebyshevNodes = 1000;

struct AnalyticOutage {
  double value = 0.0;  // clamped to [0, 1]
  double raw = 0.0;    // before clamping; > 1 signals the approximation has broken down
  std::string regime_note;
};

/// Coefficients of the cell-edge integral after rotating (y, z) to (u, v).
struct CellEdgeCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double phi = 0.0;   // end of the full-triangle part of the (u, v) region
  double phi1 = 0.0;  // outer edge of the region
};

CellEdgeCoefficients cell_edge_coefficients(const SchemeConfig& config);

/// Fading-only factor of the cell-edge outage: 4 (G(phi) - F(phi) + F(0)) / (beta0^2 - beta1^2 eta0)^2.
/// Scales exactly as rho^-3.
double kappa(const SchemeConfig& config);

struct PathlossExpectation {
  double value = 0.0;  // E{L10 L20 L30} over p0 uniform on A, metres^(3 alpha)
  std::string regime_note;
};

/// alpha = 2: exact lens average. alpha > 2: centroid approximation 3^(-3 alpha/2) l^(3 alpha).
PathlossExpectation expected_pathloss_product(double side_length, double big_radius, double alpha);

/// Cell-edge outage under N-NOMA: kappa * E{L10 L20 L30}.
AnalyticOutage p0_noma_analytic(const NetworkLayout& layout, const SchemeConfig& config, double alpha);

/// Cell-edge outage of the OMA benchmark with the user at the centroid:
/// the Erlang-3 CDF at x = 3^(-alpha/2 - 1) eta0 l^alpha / rho.
AnalyticOutage p0_oma_analytic(double side_length, double alpha, double eta0, double rho);

/// M_j = max(eta0 / (beta0^2 - beta1^2 eta0), eta_j / beta1^2); +inf when beta1 = 0.
double near_user_threshold_factor(const SchemeConfig& config, int j);

/// Near-user outage without external interference (incomplete-gamma form).
AnalyticOutage pj_noma_analytic(const NetworkLayout& layout, const SchemeConfig& config, double alpha, int j);

/// Near-user outage with PPP interference: the radial average evaluated by
/// N-node Gauss-Chebyshev quadrature. Needs alpha > 2.
AnalyticOutage pj_noma_interference_analytic(const NetworkLayout& layout, const SchemeConfig& config,
                                             const InterferenceConfig& interference, double alpha, int j,
                                             int nodes = kDefaultChebyshevNodes);

/// Direct Monte Carlo of the cell-edge outage in its quadratic-form
/// representation: p0 uniform on A, Rayleigh magnitudes, test
/// (beta0^2 - beta1^2 eta0) sum x_i^2 + 2 beta0^2 sum_{i<k} x_i x_k < eta0 / rho.
/// Test oracle only; shares no code with the scheme SINRs.
double brute_force_p0_oracle(const NetworkLayout& layout, const SchemeConfig& config, double alpha,
                             std::uint64_t trials, Rng& rng);

}  // namespace nnoma
