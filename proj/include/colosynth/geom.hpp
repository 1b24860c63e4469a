#pragma once

#include <cmath>
#include <cstdint>

namespace colosynth {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3() = default;
  Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  Vec3& operator*=(double s) {
    x *= s; y *= s; z *= s;
    return *this;
  }
  bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double length_sq(const Vec3& v) { return dot(v, v); }
inline double length(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
  double len = length(v);
  return len > 0.0 ? v / len : Vec3{0.0, 0.0, 0.0};
}

inline double distance(const Vec3& a, const Vec3& b) { return length(a - b); }

inline Vec3 lerp(const Vec3& a, const Vec3& b, double t) { return a + (b - a) * t; }

inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

// World-space position in millimeters.
using WorldPoint = Vec3;

// Unit quaternion (w, x, y, z).
struct Quat {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  Quat() = default;
  Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
};

inline double norm(const Quat& q) { return std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z); }

inline Quat normalized(const Quat& q) {
  double n = norm(q);
  if (n == 0.0) return Quat{1.0, 0.0, 0.0, 0.0};
  return Quat{q.w / n, q.x / n, q.y / n, q.z / n};
}

inline Vec3 rotate(const Quat& q, const Vec3& v) {
  Vec3 u{q.x, q.y, q.z};
  Vec3 t = 2.0 * cross(u, v);
  return v + q.w * t + cross(u, t);
}

// Quaternion from an orthonormal basis given as columns (x_axis, y_axis, z_axis).
// Sign is canonicalized (w >= 0) so equal rotations serialize identically.
Quat quat_from_basis(const Vec3& x_axis, const Vec3& y_axis, const Vec3& z_axis);

// Camera convention: looks along local -z, up is local +y.
struct Pose {
  WorldPoint position;
  Quat orientation;

  Vec3 forward() const { return rotate(orientation, Vec3{0.0, 0.0, -1.0}); }
  Vec3 up() const { return rotate(orientation, Vec3{0.0, 1.0, 0.0}); }
  Vec3 right() const { return rotate(orientation, Vec3{1.0, 0.0, 0.0}); }
};

constexpr double kPi = 3.14159265358979323846;

}  // namespace colosynth
