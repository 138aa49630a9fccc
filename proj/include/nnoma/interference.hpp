#pragma once

// Co-channel interference from a homogeneous Poisson field of transmitters.
// Powers are normalised by the serving power P_s, so an interferer at distance
// d with fade g contributes |g|^2 d^-alpha rho_I to the SINR denominator.

#include <vector>

#include "nnoma/common.hpp"
#include "nnoma/rng.hpp"

namespace nnoma {

inline constexpr double kDefaultInterferenceWindow = 2000.0;

struct InterferenceConfig {
  double intensity = 0.0;    // lambda_I, points per m^2
  double power_ratio = 0.0;  // rho_I = P_I / P_s
  double window_radius = kDefaultInterferenceWindow;  // metres

  void validate() const;
};

struct InterferenceField {
  std::vector<Point2D> positions;
  std::vector<Complex> fades;

  std::size_t size() const { return positions.size(); }
};

/// PPP realisation on the disc of radius `window_radius` around `centre`.
InterferenceField sample_ppp(const InterferenceConfig& config, Point2D centre, Rng& rng);

/// I = sum_k |g_k|^2 max(d_k, d_min)^-alpha rho_I.
double interference_power(const InterferenceField& field, Point2D user, double alpha, double power_ratio);

/// Aggregate interference at the centre of an independently sampled window.
/// Same law as interference_power(sample_ppp(config, user, rng), user, ...),
/// drawn without materialising positions.
double sample_interference_power(const InterferenceConfig& config, double alpha, Rng& rng);

/// E[exp(-s I)] for the unbounded field:
/// exp(-2 pi lambda_I (s rho_I)^(2/alpha) / alpha * B(2/alpha, 1 - 2/alpha)). Needs alpha > 2.
double laplace_transform_analytic(double s, const InterferenceConfig& config, double alpha);

}  // namespace nnoma
