#ifndef JAWKIT_TESTS_TEST_UTIL_HPP
#define JAWKIT_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <random>

#include "jawkit/se3.hpp"

namespace jawkit::testutil {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  // Fixed mapping instead of std::uniform_real_distribution so expected
  // values frozen in tests stay identical across standard libraries.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

inline Vec3 random_unit_vector(std::mt19937_64& rng) {
  while (true) {
    const Vec3 v(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0),
                 uniform(rng, -1.0, 1.0));
    const double n = v.norm();
    if (n > 1e-3 && n <= 1.0) return v / n;
  }
}

inline Vec3 random_rotation_vector(std::mt19937_64& rng, double max_angle) {
  return random_unit_vector(rng) * uniform(rng, 0.0, max_angle);
}

inline Mat3 random_rotation(std::mt19937_64& rng, double max_angle = jawkit::kPi - 0.01) {
  return exp_rotation(random_rotation_vector(rng, max_angle));
}

inline RigidTransform random_transform(std::mt19937_64& rng,
                                       double max_angle = jawkit::kPi - 0.01,
                                       double max_translation = 10.0) {
  const Vec3 t(uniform(rng, -max_translation, max_translation),
               uniform(rng, -max_translation, max_translation),
               uniform(rng, -max_translation, max_translation));
  return RigidTransform(random_rotation(rng, max_angle), t);
}

inline Mat3 rot_z(double angle_rad) {
  return exp_rotation(Vec3(0.0, 0.0, angle_rad));
}

inline Mat3 rot_x(double angle_rad) {
  return exp_rotation(Vec3(angle_rad, 0.0, 0.0));
}

/// Rotation block of the mean error transform reported by the source study
/// (printed to four decimals, hence only approximately orthonormal).
inline Mat3 study_mean_rotation() {
  Mat3 r;
  // clang-format off
  r <<  0.9997, -0.0186,  0.0132,
        0.0186,  0.9998,  0.0031,
       -0.0132, -0.0028,  0.9999;
  // clang-format on
  return r;
}

inline Vec3 study_mean_translation() { return Vec3(-1.9276, -0.4282, -0.3883); }

}  // namespace jawkit::testutil

#endif  // JAWKIT_TESTS_TEST_UTIL_HPP
