#include "jawkit/se3.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "jawkit/error.hpp"

namespace jawkit {

namespace {

constexpr double kDriftTol = 1e-9;
constexpr double kSmallAngle = 1e-6;
// Below this distance from pi the standard log formula (scaled skew part)
// loses the axis; switch to the symmetric-part branch.
constexpr double kNearPi = 1e-4;

Vec3 vee_antisymmetric(const Mat3& r) {
  return Vec3(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1)) * 0.5;
}

}  // namespace

double rotation_drift(const Mat3& r) {
  const Mat3 gram = r.transpose() * r;
  double drift = (gram - Mat3::Identity()).cwiseAbs().maxCoeff();
  drift = std::max(drift, std::abs(r.determinant() - 1.0));
  return drift;
}

Mat3 project_rotation(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 u = svd.matrixU();
  const Mat3 v = svd.matrixV();
  if ((u * v.transpose()).determinant() < 0.0) u.col(2) *= -1.0;
  return u * v.transpose();
}

Mat3 skew(const Vec3& v) {
  Mat3 s;
  // clang-format off
  s <<    0.0, -v.z(),  v.y(),
        v.z(),    0.0, -v.x(),
       -v.y(),  v.x(),    0.0;
  // clang-format on
  return s;
}

RigidTransform::RigidTransform(const Mat3& rotation, const Vec3& translation)
    : r_(rotation), t_(translation) {
  if (r_.determinant() < 0.0) {
    throw Error(ErrorCode::invalid_rotation,
                "rotation block has negative determinant");
  }
  if (rotation_drift(r_) > kDriftTol) r_ = project_rotation(r_);
}

RigidTransform RigidTransform::from_matrix(const Mat4& m) {
  return RigidTransform(m.topLeftCorner<3, 3>(), m.topRightCorner<3, 1>());
}

Mat4 RigidTransform::matrix() const {
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = r_;
  m.topRightCorner<3, 1>() = t_;
  return m;
}

RigidTransform RigidTransform::inverse() const {
  const Mat3 rt = r_.transpose();
  return RigidTransform(rt, -(rt * t_));
}

RigidTransform RigidTransform::operator*(const RigidTransform& other) const {
  return RigidTransform(r_ * other.r_, r_ * other.t_ + t_);
}

Vec3 RigidTransform::operator*(const Vec3& p) const { return r_ * p + t_; }

Mat3 exp_rotation(const Vec3& rotation_vector) {
  const double theta = rotation_vector.norm();
  const Mat3 w = skew(rotation_vector);
  double a, b;  // R = I + a W + b W^2
  if (theta < kSmallAngle) {
    const double t2 = theta * theta;
    a = 1.0 - t2 / 6.0;
    b = 0.5 - t2 / 24.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / (theta * theta);
  }
  return Mat3::Identity() + a * w + b * (w * w);
}

double rotation_angle(const Mat3& r) {
  const double sin_theta = vee_antisymmetric(r).norm();
  const double cos_theta = (r.trace() - 1.0) * 0.5;
  return std::atan2(sin_theta, cos_theta);
}

Vec3 log_rotation(const Mat3& r) {
  const Vec3 w = vee_antisymmetric(r);  // u * sin(theta)
  const double cos_theta = (r.trace() - 1.0) * 0.5;
  const double theta = std::atan2(w.norm(), cos_theta);

  if (theta < kSmallAngle) {
    // r = theta/sin(theta) * w, expanded around theta = 0.
    return w * (1.0 + theta * theta / 6.0);
  }
  if (theta < kPi - kNearPi) {
    return w * (theta / std::sin(theta));
  }

  // Near pi: sin(theta) ~ 0 so the skew part no longer carries the axis.
  // The symmetric part gives u u^T = I + (S - I) / (1 - cos(theta)) with
  // S = (R + R^T)/2, accurate to machine precision since 1 - cos ~ 2.
  const Mat3 sym = (r + r.transpose()) * 0.5;
  const Mat3 uut = Mat3::Identity() + (sym - Mat3::Identity()) / (1.0 - cos_theta);
  const Mat3 half = (r + Mat3::Identity()) * 0.5;
  int dominant = 0;
  half.diagonal().maxCoeff(&dominant);
  Vec3 axis = uut.col(dominant);
  const double norm = axis.norm();
  if (norm < 1e-12) return Vec3::Zero();  // unreachable for valid rotations
  axis /= norm;

  // Orient the axis: while sin(theta) is still meaningful use the skew part,
  // otherwise apply the fixed lexicographic tie-break.
  const double along = w.dot(axis);
  if (std::abs(along) > 1e-12) {
    if (along < 0.0) axis = -axis;
  } else {
    for (int i = 0; i < 3; ++i) {
      if (std::abs(axis[i]) > 1e-9) {
        if (axis[i] < 0.0) axis = -axis;
        break;
      }
    }
  }
  return axis * theta;
}

Mat3 left_jacobian(const Vec3& rotation_vector) {
  const double theta = rotation_vector.norm();
  const Mat3 w = skew(rotation_vector);
  double a, b;  // V = I + a W + b W^2
  if (theta < kSmallAngle) {
    const double t2 = theta * theta;
    a = 0.5 - t2 / 24.0;
    b = 1.0 / 6.0 - t2 / 120.0;
  } else {
    const double t2 = theta * theta;
    a = (1.0 - std::cos(theta)) / t2;
    b = (theta - std::sin(theta)) / (t2 * theta);
  }
  return Mat3::Identity() + a * w + b * (w * w);
}

Mat3 left_jacobian_inverse(const Vec3& rotation_vector) {
  const double theta = rotation_vector.norm();
  const Mat3 w = skew(rotation_vector);
  double c;  // V^-1 = I - W/2 + c W^2
  if (theta < kSmallAngle) {
    c = 1.0 / 12.0 + theta * theta / 720.0;
  } else {
    c = 1.0 / (theta * theta) -
        (1.0 + std::cos(theta)) / (2.0 * theta * std::sin(theta));
  }
  return Mat3::Identity() - 0.5 * w + c * (w * w);
}

RigidTransform exp_se3(const TangentVector& v, Se3Mode mode) {
  const Mat3 r = exp_rotation(v.rot);
  if (mode == Se3Mode::product) return RigidTransform(r, v.trans);
  return RigidTransform(r, left_jacobian(v.rot) * v.trans);
}

TangentVector log_se3(const RigidTransform& t, Se3Mode mode) {
  const Vec3 rot = log_rotation(t.rotation());
  if (mode == Se3Mode::product) return {rot, t.translation()};
  if (rot.norm() >= kPi - 1e-6) {
    throw Error(ErrorCode::theta_near_pi,
                "coupled SE(3) log is ill-conditioned near theta = pi; "
                "use product mode");
  }
  return {rot, left_jacobian_inverse(rot) * t.translation()};
}

}  // namespace jawkit
