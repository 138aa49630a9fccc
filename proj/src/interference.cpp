#include "nnoma/interference.hpp"

#include <cmath>
#include <random>

#include "nnoma/channel.hpp"
#include "nnoma/special_functions.hpp"

namespace nnoma {
namespace {

std::size_t sample_count(const InterferenceConfig& config, Rng& rng) {
  const double mean = config.intensity * kPi * config.window_radius * config.window_radius;
  if (mean <= 0.0) return 0;
  std::poisson_distribution<long long> poisson(mean);
  return static_cast<std::size_t>(poisson(rng));
}

double floored_inverse_loss(double d, double alpha) { return std::pow(d < kMinDistance ? kMinDistance : d, -alpha); }

}  // namespace

void InterferenceConfig::validate() const {
  if (!(intensity >= 0.0) || !std::isfinite(intensity)) invalid_argument("intensity", "must be >= 0");
  if (!(power_ratio >= 0.0) || !std::isfinite(power_ratio)) invalid_argument("power_ratio", "must be >= 0");
  if (!(window_radius > 0.0) || !std::isfinite(window_radius)) invalid_argument("window_radius", "must be > 0");
}

InterferenceField sample_ppp(const InterferenceConfig& config, Point2D centre, Rng& rng) {
  config.validate();
  InterferenceField field;
  const std::size_t n = sample_count(config, rng);
  field.positions.reserve(n);
  field.fades.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = config.window_radius * std::sqrt(rng.uniform());
    const double theta = 2.0 * kPi * rng.uniform();
    field.positions.push_back({centre.x + r * std::cos(theta), centre.y + r * std::sin(theta)});
    field.fades.push_back(sample_complex_gaussian(rng));
  }
  return field;
}

double interference_power(const InterferenceField& field, Point2D user, double alpha, double power_ratio) {
  if (field.positions.size() != field.fades.size())
    invalid_argument("field", "positions and fades must have equal length");
  double total = 0.0;
  for (std::size_t k = 0; k < field.size(); ++k)
    total += std::norm(field.fades[k]) * floored_inverse_loss(distance(field.positions[k], user), alpha);
  return total * power_ratio;
}

double sample_interference_power(const InterferenceConfig& config, double alpha, Rng& rng) {
  const std::size_t n = sample_count(config, rng);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = config.window_radius * std::sqrt(rng.uniform());
    const double fade_power = -std::log(rng.uniform_open0());  // |CN(0,1)|^2 ~ Exp(1)
    total += fade_power * floored_inverse_loss(r, alpha);
  }
  return total * config.power_ratio;
}

double laplace_transform_analytic(double s, const InterferenceConfig& config, double alpha) {
  if (!(alpha > 2.0)) invalid_argument("alpha", "PPP Laplace transform diverges for alpha <= 2");
  if (!(s >= 0.0)) invalid_argument("s", "must be >= 0");
  config.validate();
  if (s == 0.0 || config.intensity == 0.0 || config.power_ratio == 0.0) return 1.0;
  const double delta = 2.0 / alpha;
  return std::exp(-2.0 * kPi * config.intensity * std::pow(s * config.power_ratio, delta) / alpha *
                  beta_function(delta, 1.0 - delta));
}

}  // namespace nnoma
