#pragma once

#include <cmath>

namespace floqtop {

/// Real 3-vector used for Bloch fields, effective-Hamiltonian vectors and
/// spin expectation triples. Energies are dimensionless (hbar = 1).
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// Spin/texture axis label.
enum class SpinAxis { x, y, z };

inline double component(const Vec3& v, SpinAxis a) {
  switch (a) {
    case SpinAxis::x: return v.x;
    case SpinAxis::y: return v.y;
    default: return v.z;
  }
}

inline char axis_name(SpinAxis a) {
  switch (a) {
    case SpinAxis::x: return 'x';
    case SpinAxis::y: return 'y';
    default: return 'z';
  }
}

}  // namespace floqtop
