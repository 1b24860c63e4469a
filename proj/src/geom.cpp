#include "colosynth/geom.hpp"

namespace colosynth {

Quat quat_from_basis(const Vec3& x_axis, const Vec3& y_axis, const Vec3& z_axis) {
  // Shepperd's method, picking the numerically largest pivot.
  double m00 = x_axis.x, m01 = y_axis.x, m02 = z_axis.x;
  double m10 = x_axis.y, m11 = y_axis.y, m12 = z_axis.y;
  double m20 = x_axis.z, m21 = y_axis.z, m22 = z_axis.z;
  double trace = m00 + m11 + m22;
  Quat q;
  if (trace > 0.0) {
    double s = std::sqrt(trace + 1.0) * 2.0;
    q.w = 0.25 * s;
    q.x = (m21 - m12) / s;
    q.y = (m02 - m20) / s;
    q.z = (m10 - m01) / s;
  } else if (m00 > m11 && m00 > m22) {
    double s = std::sqrt(1.0 + m00 - m11 - m22) * 2.0;
    q.w = (m21 - m12) / s;
    q.x = 0.25 * s;
    q.y = (m01 + m10) / s;
    q.z = (m02 + m20) / s;
  } else if (m11 > m22) {
    double s = std::sqrt(1.0 + m11 - m00 - m22) * 2.0;
    q.w = (m02 - m20) / s;
    q.x = (m01 + m10) / s;
    q.y = 0.25 * s;
    q.z = (m12 + m21) / s;
  } else {
    double s = std::sqrt(1.0 + m22 - m00 - m11) * 2.0;
    q.w = (m10 - m01) / s;
    q.x = (m02 + m20) / s;
    q.y = (m12 + m21) / s;
    q.z = 0.25 * s;
  }
  q = normalized(q);
  // Canonical sign: first nonzero component of (w, x, y, z) is positive.
  if (q.w < 0.0 || (q.w == 0.0 && (q.x < 0.0 || (q.x == 0.0 && (q.y < 0.0 || (q.y == 0.0 && q.z < 0.0)))))) {
    q.w = -q.w; q.x = -q.x; q.y = -q.y; q.z = -q.z;
  }
  return q;
}

}  // namespace colosynth
