#include "nnoma/channel.hpp"

#include <cmath>
#include <random>

namespace nnoma {
namespace {

double floored_path_loss(double d, double alpha) { return std::pow(d < kMinDistance ? kMinDistance : d, alpha); }

}  // namespace

Complex sample_complex_gaussian(Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

double path_loss(double d, double alpha) {
  if (!(alpha >= 2.0)) invalid_argument("alpha", "path-loss exponent must be >= 2");
  if (!(d >= 0.0)) invalid_argument("d", "distance must be non-negative");
  if (d == 0.0) warn("zero BS-user distance; path loss floored at d_min");
  return floored_path_loss(d, alpha);
}

ChannelRealization realize_channel(const NetworkLayout& layout, const UserPlacement& placement, double alpha,
                                   Rng& rng) {
  if (!(alpha >= 2.0)) invalid_argument("alpha", "path-loss exponent must be >= 2");
  ChannelRealization ch;
  ch.placement = placement;
  const DistanceMatrix d = distances(layout, placement);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  for (int i = 0; i < kNumBs; ++i) {
    for (int j = 0; j < kNumUsers; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      const double loss = floored_path_loss(d[i][j], alpha);
      ch.pathloss[i][j] = loss;
      ch.gains[i][j] = Complex(re, im) / std::sqrt(loss);
    }
  }
  return ch;
}

}  // namespace nnoma
