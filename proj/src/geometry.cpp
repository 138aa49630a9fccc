#include "nnoma/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nnoma {
namespace {

// Relative slack on the admissible-range checks so that values like
// R0 = sqrt(3)/3 * l computed in floating point are not rejected.
constexpr double kRangeSlack = 1e-12;

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

void check_admissible(double side_length, double big_radius) {
  if (!(side_length > 0.0) || !std::isfinite(side_length)) invalid_argument("side_length", "must be positive and finite");
  const double lo = side_length / kSqrt3;
  const double hi = side_length * kSqrt3 / 2.0;
  if (!(big_radius >= lo * (1.0 - kRangeSlack) && big_radius <= hi * (1.0 + kRangeSlack)))
    invalid_argument("big_radius",
                     "R0 = " + std::to_string(big_radius) + " outside [sqrt(3)/3 l, sqrt(3)/2 l] = [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

}  // namespace

NetworkLayout NetworkLayout::make(double side_length, double big_radius, std::array<double, kNumBs> near_radii) {
  check_admissible(side_length, big_radius);
  for (int i = 0; i < kNumBs; ++i) {
    if (!(near_radii[i] >= 0.0) || !std::isfinite(near_radii[i]))
      invalid_argument("near_radii", "R_" + std::to_string(i + 1) + " must be non-negative and finite");
    if (near_radii[i] > side_length / 10.0)
      warn("R_" + std::to_string(i + 1) + " > l/10: near-user approximations assume l >> R_j");
  }
  NetworkLayout layout;
  layout.side_length = side_length;
  layout.big_radius = big_radius;
  layout.near_radii = near_radii;
  layout.bs = bs_positions(side_length);
  if (layout.degenerate_lens()) warn("R0 at the lower bound sqrt(3)/3 l: lens A reduces to the centroid");
  return layout;
}

bool NetworkLayout::degenerate_lens() const {
  return big_radius <= side_length / kSqrt3 * (1.0 + kRangeSlack);
}

std::array<Point2D, kNumBs> bs_positions(double side_length) {
  if (!(side_length > 0.0) || !std::isfinite(side_length)) invalid_argument("side_length", "must be positive and finite");
  const double circumradius = side_length / kSqrt3;
  std::array<Point2D, kNumBs> out{};
  for (int i = 0; i < kNumBs; ++i) {
    const double angle = kPi / 2.0 + 2.0 * kPi * i / 3.0;
    out[i] = {circumradius * std::cos(angle), circumradius * std::sin(angle)};
  }
  // Exact values for the symmetric coordinates keep the triangle centred.
  out[0].x = 0.0;
  out[1].y = out[2].y = -circumradius / 2.0;
  out[1].x = -side_length / 2.0;
  out[2].x = side_length / 2.0;
  return out;
}

double intersection_area(double side_length, double big_radius) {
  check_admissible(side_length, big_radius);
  const double l = side_length;
  const double r0 = big_radius;
  const double t = kPi / 3.0 - std::asin(clamp_unit(l / (2.0 * r0)));
  return std::max(0.0, 3.0 * r0 * r0 * t - kSqrt3 * l * r0 * std::sin(t));
}

double lambda_of_k(double k) {
  const double lo = 1.0 / kSqrt3;
  const double hi = kSqrt3 / 2.0;
  if (!(k >= lo * (1.0 - kRangeSlack) && k <= hi * (1.0 + kRangeSlack)))
    invalid_argument("k", "k = " + std::to_string(k) + " outside [sqrt(3)/3, sqrt(3)/2]");
  // The closed form is 0/0 at the lower bound. lambda is flat there to second
  // order (lambda(k) - 1/27 ~ -8e-4 (k - lo)^2), so the limit is exact to
  // double precision over this band.
  if (k - lo < 1e-5) return 1.0 / 27.0;

  const double as = std::asin(clamp_unit(1.0 / (2.0 * k)));
  const double k2 = k * k;
  const double k4 = k2 * k2;
  const double k6 = k4 * k2;
  const double k8 = k4 * k4;
  const double den = 192.0 * k * (kPi * k - 3.0 * k * as - kSqrt3 * std::cos(as + kPi / 6.0));
  const double num = 48.0 * kPi * k8 -
                     3.0 * std::sqrt(std::max(0.0, 4.0 - 1.0 / k2)) * (84.0 * k6 + 102.0 * k4 + 2.0 * k2 + 1.0) * k +
                     kSqrt3 + 192.0 * (kSqrt3 + kPi) * k6 + 24.0 * (3.0 * kSqrt3 + 4.0 * kPi) * k4 -
                     144.0 * (k4 + 4.0 * k2 + 2.0) * k4 * as;
  return num / den;
}

double lens_half_width(double side_length, double big_radius) {
  // Farthest points of A from the centroid are its three corners, e.g. the
  // intersection of circles 2 and 3 on BS 1's side of the origin.
  const double circumradius = side_length / kSqrt3;
  const double h = std::sqrt(std::max(0.0, big_radius * big_radius - side_length * side_length / 4.0));
  return std::max(0.0, h - circumradius / 2.0);
}

Point2D sample_cell_edge(const NetworkLayout& layout, Rng& rng) {
  if (layout.degenerate_lens()) return {0.0, 0.0};
  // Pad the box slightly; correctness only needs A inside it.
  const double half = lens_half_width(layout.side_length, layout.big_radius) * (1.0 + 1e-9);
  const double r2 = layout.big_radius * layout.big_radius;
  for (;;) {
    const Point2D p{half * (2.0 * rng.uniform() - 1.0), half * (2.0 * rng.uniform() - 1.0)};
    bool inside = true;
    for (const Point2D& b : layout.bs) {
      const double dx = p.x - b.x;
      const double dy = p.y - b.y;
      if (dx * dx + dy * dy > r2) {
        inside = false;
        break;
      }
    }
    if (inside) return p;
  }
}

Point2D sample_near_user(const NetworkLayout& layout, int bs_index, Rng& rng) {
  if (bs_index < 1 || bs_index > kNumBs) invalid_argument("bs_index", "must be 1, 2 or 3");
  const Point2D centre = layout.bs[bs_index - 1];
  const double radius = layout.near_radii[bs_index - 1];
  const double r = radius * std::sqrt(rng.uniform());
  const double theta = 2.0 * kPi * rng.uniform();
  return {centre.x + r * std::cos(theta), centre.y + r * std::sin(theta)};
}

UserPlacement sample_placement(const NetworkLayout& layout, Rng& rng) {
  UserPlacement placement;
  placement.cell_edge = sample_cell_edge(layout, rng);
  for (int i = 0; i < kNumBs; ++i) placement.near_users[i] = sample_near_user(layout, i + 1, rng);
  return placement;
}

DistanceMatrix distances(const NetworkLayout& layout, const UserPlacement& placement) {
  DistanceMatrix d{};
  for (int i = 0; i < kNumBs; ++i) {
    d[i][0] = distance(layout.bs[i], placement.cell_edge);
    for (int j = 1; j < kNumUsers; ++j) d[i][j] = distance(layout.bs[i], placement.near_users[j - 1]);
  }
  return d;
}

bool in_subregion(const NetworkLayout& layout, Point2D p, int bs_index) {
  if (bs_index < 1 || bs_index > kNumBs) invalid_argument("bs_index", "must be 1, 2 or 3");
  std::array<double, kNumBs> d{};
  for (int i = 0; i < kNumBs; ++i) d[i] = distance(layout.bs[i], p);
  if (*std::max_element(d.begin(), d.end()) > layout.big_radius) return false;
  const double own = d[bs_index - 1];
  for (int i = 0; i < kNumBs; ++i)
    if (i != bs_index - 1 && d[i] > own) return false;
  return true;
}

}  // namespace nnoma
