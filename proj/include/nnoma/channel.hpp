#pragma once

#include "nnoma/common.hpp"
#include "nnoma/geometry.hpp"
#include "nnoma/rng.hpp"

namespace nnoma {

/// Distances below this are treated as this in d^alpha (keeps the path loss
/// finite when a user lands on a transmitter).
inline constexpr double kMinDistance = 1.0;

struct ChannelRealization {
  Matrix3x4<Complex> gains{};    // h_ij = g_ij / sqrt(L_ij)
  Matrix3x4<double> pathloss{};  // L_ij = max(d_ij, d_min)^alpha
  UserPlacement placement;
};

/// CN(0,1): each real component has variance 1/2.
Complex sample_complex_gaussian(Rng& rng);

/// d^alpha with the d_min floor. Rejects alpha < 2; warns on d == 0.
double path_loss(double d, double alpha);

ChannelRealization realize_channel(const NetworkLayout& layout, const UserPlacement& placement, double alpha, Rng& rng);

}  // namespace nnoma
