#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nnoma {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrt3 = std::numbers::sqrt3;

/// Number of cooperating base stations; users are indexed 0 (cell edge) and 1..3 (near users).
inline constexpr int kNumBs = 3;
inline constexpr int kNumUsers = 4;

using Complex = std::complex<double>;

template <class T>
using Matrix3x4 = std::array<std::array<T, kNumUsers>, kNumBs>;

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

inline double distance(Point2D a, Point2D b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

enum class ErrorCode {
  invalid_argument,
  config_rejected,
  parse_error,
  io_error,
  unknown_preset,
};

/// Single exception type for the library. `field()` names the offending
/// configuration key or parameter when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        code_(code),
        field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

[[noreturn]] inline void invalid_argument(std::string field, const std::string& message) {
  throw Error(ErrorCode::invalid_argument, std::move(field), message);
}

using WarningHandler = std::function<void(std::string_view)>;

/// Installs a process-wide warning sink and returns the previous one.
/// The default handler writes to stderr. Passing an empty handler silences warnings.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

}  // namespace nnoma
