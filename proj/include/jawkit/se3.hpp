#ifndef JAWKIT_SE3_HPP
#define JAWKIT_SE3_HPP

#include <Eigen/Core>

namespace jawkit {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegPerRad = 180.0 / kPi;
constexpr double kRadPerDeg = kPi / 180.0;

/// Max absolute deviation of R^T R from identity plus |det(R) - 1|.
double rotation_drift(const Mat3& r);

/// Nearest rotation matrix in the Frobenius norm (SVD projection with
/// reflection correction).
Mat3 project_rotation(const Mat3& m);

/// Skew-symmetric matrix such that skew(v) * u = v x u.
Mat3 skew(const Vec3& v);

/// Rigid transformation: rotation R in SO(3) plus translation t in mm,
/// acting on points as p -> R p + t. Immutable value type. The rotation
/// block is re-orthonormalized on construction when drift exceeds 1e-9.
class RigidTransform {
 public:
  RigidTransform() : r_(Mat3::Identity()), t_(Vec3::Zero()) {}
  RigidTransform(const Mat3& rotation, const Vec3& translation);

  static RigidTransform identity() { return RigidTransform(); }
  static RigidTransform from_rotation(const Mat3& rotation) {
    return RigidTransform(rotation, Vec3::Zero());
  }
  static RigidTransform from_translation(const Vec3& translation) {
    return RigidTransform(Mat3::Identity(), translation);
  }
  /// Builds from a homogeneous 4x4 matrix. Throws invalid_rotation when the
  /// upper-left block has negative determinant; drifted blocks are projected.
  static RigidTransform from_matrix(const Mat4& m);

  const Mat3& rotation() const { return r_; }
  const Vec3& translation() const { return t_; }
  Mat4 matrix() const;

  RigidTransform inverse() const;

  /// Group composition: (this * other) p == this(other(p)).
  RigidTransform operator*(const RigidTransform& other) const;
  /// Point action R p + t.
  Vec3 operator*(const Vec3& p) const;

 private:
  Mat3 r_;
  Vec3 t_;
};

inline RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
  return a * b;
}
inline RigidTransform inverse(const RigidTransform& t) { return t.inverse(); }
inline Vec3 apply(const RigidTransform& t, const Vec3& p) { return t * p; }

/// Lie-algebra coordinates of SE(3): rotation vector (radians) and
/// translation part (mm). Stacked as [rot; trans] in 6-vector form.
struct TangentVector {
  Vec3 rot = Vec3::Zero();
  Vec3 trans = Vec3::Zero();

  Vec6 to_vector() const {
    Vec6 v;
    v << rot, trans;
    return v;
  }
  static TangentVector from_vector(const Vec6& v) {
    return {v.head<3>(), v.tail<3>()};
  }
};

/// Tangent-space parametrization of the translation part.
///   coupled: full SE(3) group log/exp, trans = V(r)^-1 t.
///   product: direct-product group SO(3) x R^3, trans = t.
enum class Se3Mode { coupled, product };

/// SO(3) exponential map (Rodrigues). Taylor branch below theta = 1e-6.
Mat3 exp_rotation(const Vec3& rotation_vector);

/// SO(3) logarithm as a rotation vector r = theta * u with theta in [0, pi].
/// Near theta = pi the axis is recovered from the symmetric part of R
/// (column selection by the dominant diagonal of (R + I) / 2); the residual
/// sign ambiguity at exactly pi is resolved by making the first component
/// of the axis that exceeds 1e-9 positive.
Vec3 log_rotation(const Mat3& r);

/// Rotation angle of R in radians.
double rotation_angle(const Mat3& r);

/// Left Jacobian of SO(3) and its inverse. The inverse is ill-conditioned
/// for theta near pi; callers guard via log_se3's theta_near_pi error.
Mat3 left_jacobian(const Vec3& rotation_vector);
Mat3 left_jacobian_inverse(const Vec3& rotation_vector);

/// SE(3) exponential. In coupled mode t = V(rot) * trans.
RigidTransform exp_se3(const TangentVector& v, Se3Mode mode = Se3Mode::coupled);

/// SE(3) logarithm. In coupled mode requires theta < pi - 1e-6 and throws
/// theta_near_pi otherwise; product mode is defined for every input.
TangentVector log_se3(const RigidTransform& t, Se3Mode mode = Se3Mode::coupled);

}  // namespace jawkit

#endif  // JAWKIT_SE3_HPP
