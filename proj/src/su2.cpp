#include "floqtop/su2.hpp"

#include <cmath>

namespace floqtop {

SU2Op su2_exp(const Vec3& hT) {
  const double angle = norm(hT);
  if (angle == 0.0) return su2_identity();
  const double scale = std::sin(angle) / angle;
  return {std::cos(angle), hT * scale};
}

SU2Op compose(const SU2Op& second, const SU2Op& first) {
  // (s0 - i s.sigma)(f0 - i f.sigma)
  //   = (s0 f0 - s.f) - i (s0 f + f0 s + s x f) . sigma
  SU2Op r;
  r.a0 = second.a0 * first.a0 - dot(second.a, first.a);
  r.a = second.a0 * first.a + first.a0 * second.a + cross(second.a, first.a);
  const double n = std::sqrt(r.a0 * r.a0 + dot(r.a, r.a));
  r.a0 /= n;
  r.a = r.a * (1.0 / n);
  return r;
}

double unitarity_defect(const SU2Op& u) {
  return std::abs(u.a0 * u.a0 + dot(u.a, u.a) - 1.0);
}

QubitState apply(const SU2Op& u, const QubitState& s) {
  // U = [[a0 - i az, -ay - i ax], [ay - i ax, a0 + i az]]
  const Complex d00{u.a0, -u.a.z};
  const Complex d01{-u.a.y, -u.a.x};
  const Complex d10{u.a.y, -u.a.x};
  const Complex d11{u.a0, u.a.z};
  return {d00 * s.up + d01 * s.dn, d10 * s.up + d11 * s.dn};
}

Vec3 spin_expectation(const QubitState& s) {
  const Complex c = std::conj(s.up) * s.dn;
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(s.up) - std::norm(s.dn)};
}

}  // namespace floqtop
