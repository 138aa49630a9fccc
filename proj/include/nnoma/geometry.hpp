#pragma once

// Three-BS layout: BSs on an equilateral triangle of side l centred at the
// origin, BS 1 on the positive y-axis. The cell-edge user lives in the lens A
// (intersection of the three radius-R0 discs); near user i lives in the disc
// of radius R_i around BS i.

#include <array>

#include "nnoma/common.hpp"
#include "nnoma/rng.hpp"

namespace nnoma {

struct NetworkLayout {
  double side_length = 0.0;               // l, metres
  double big_radius = 0.0;                // R0, metres
  std::array<double, kNumBs> near_radii{};  // R_1..R_3, metres
  std::array<Point2D, kNumBs> bs{};

  /// Validates sqrt(3)/3 l <= R0 <= sqrt(3)/2 l and R_i >= 0. Warns when
  /// R_i > l/10, where the near-user approximations start to degrade.
  static NetworkLayout make(double side_length, double big_radius, std::array<double, kNumBs> near_radii);

  double k() const { return big_radius / side_length; }

  /// True when R0 sits on the lower bound and A collapses to the centroid.
  bool degenerate_lens() const;
};

struct UserPlacement {
  Point2D cell_edge;
  std::array<Point2D, kNumBs> near_users{};
};

/// d_ij, BS i (row, 0-based) to user j (column; 0 = cell edge).
using DistanceMatrix = Matrix3x4<double>;

std::array<Point2D, kNumBs> bs_positions(double side_length);

/// Area of the lens A.
double intersection_area(double side_length, double big_radius);

/// E{d10^2 d20^2 d30^2} / l^6 as a function of k = R0/l.
double lambda_of_k(double k);

/// Uniform point on A by rejection from A's bounding box.
Point2D sample_cell_edge(const NetworkLayout& layout, Rng& rng);

/// Uniform point on the near disc of BS `bs_index` (1-based).
Point2D sample_near_user(const NetworkLayout& layout, int bs_index, Rng& rng);

UserPlacement sample_placement(const NetworkLayout& layout, Rng& rng);

DistanceMatrix distances(const NetworkLayout& layout, const UserPlacement& placement);

/// Sub-region A_i of the lens: points of A for which BS i (1-based) is the
/// farthest BS. The three sub-regions are congruent.
bool in_subregion(const NetworkLayout& layout, Point2D p, int bs_index);

/// Half-width of the axis-aligned square around the origin that bounds A.
double lens_half_width(double side_length, double big_radius);

}  // namespace nnoma
