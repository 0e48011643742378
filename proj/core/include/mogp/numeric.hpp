#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace mogp {

// Ceil/floor of a real that is meant to be an exact product like 0.3 * 10.
// Values within 1e-9 (relative) of an integer snap to it before rounding, so
// binary representation error never moves an interval endpoint.
inline std::int64_t snapped_ceil(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::ceil(x));
}

inline std::int64_t snapped_floor(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::floor(x));
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace mogp
