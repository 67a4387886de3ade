#include "navgen/geometry.hpp"

#include <numbers>

namespace navgen {

double wrap_angle(double radians) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(radians, two_pi);
  if (r <= -std::numbers::pi) {
    r += two_pi;
  } else if (r > std::numbers::pi) {
    r -= two_pi;
  }
  return r;
}

}  // namespace navgen
