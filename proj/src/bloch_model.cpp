#include "floqtop/bloch_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace floqtop {

double wrap_angle(double a) {
  constexpr double pi = std::numbers::pi;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = a - two_pi * std::floor((a + pi) / two_pi);
  // floor rounding can land exactly on +pi
  if (w >= pi) w -= two_pi;
  return w;
}

QuenchProtocol::QuenchProtocol(const HamiltonianParams& s1, double T1_,
                               const HamiltonianParams& s2, double T2_)
    : stage1(s1), T1(T1_), stage2(s2), T2(T2_) {
  if (!(T1 > 0.0) || !(T2 > 0.0))
    throw std::invalid_argument("QuenchProtocol: T1 and T2 must be positive");
}

Vec3 bloch_vector(const HamiltonianParams& p, const KPoint& k) {
  const double c1 = std::cos(k.k1), c2 = std::cos(k.k2);
  const double s1 = std::sin(k.k1), s2 = std::sin(k.k2);
  const double cm = std::cos(k.k1 - k.k2), cp = std::cos(k.k1 + k.k2);
  const double sm = std::sin(k.k1 - k.k2), sp = std::sin(k.k1 + k.k2);
  return {
      p.t1 * (1.0 + c1 + c2) + p.t3 * (2.0 * cm + cp),
      p.t1 * (s1 + s2) + p.t3 * sp,
      2.0 * p.t2 * std::sin(p.phi) * (s1 - s2 - sm),
  };
}

std::pair<Vec3, Vec3> stage_fields(const QuenchProtocol& qp, const KPoint& k) {
  return {bloch_vector(qp.stage1, k), bloch_vector(qp.stage2, k)};
}

HamiltonianParams preset_stage1() {
  return {1.0, 0.8, 0.75, -std::numbers::pi / 6.0};
}

HamiltonianParams preset_stage2() {
  return {1.0, 0.8, -0.75, -std::numbers::pi / 2.0};
}

QuenchProtocol preset_protocol(double T1, double T2) {
  return {preset_stage1(), T1, preset_stage2(), T2};
}

}  // namespace floqtop
