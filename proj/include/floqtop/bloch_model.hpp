#pragma once

#include <utility>

#include "floqtop/vec3.hpp"

namespace floqtop {

/// Wrap an angle into the canonical interval [-pi, pi).
double wrap_angle(double a);

/// Hopping parameters of the generalized Haldane model on the momentum-space
/// torus: first-, second- and third-neighbor amplitudes plus the complex
/// phase attached to the second-neighbor hopping.
struct HamiltonianParams {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
  double phi = 0.0;  // normalized into [-pi, pi) on construction

  HamiltonianParams() = default;
  HamiltonianParams(double t1_, double t2_, double t3_, double phi_)
      : t1(t1_), t2(t2_), t3(t3_), phi(wrap_angle(phi_)) {}
};

/// Quasimomentum on the Brillouin-zone torus, canonical in [-pi, pi)^2.
/// All model functions are 2*pi-periodic in each component.
struct KPoint {
  double k1 = 0.0;
  double k2 = 0.0;

  KPoint() = default;
  KPoint(double k1_, double k2_) : k1(wrap_angle(k1_)), k2(wrap_angle(k2_)) {}
};

/// Two-stage piecewise quench: stage1 acts for T1, stage2 for T2,
/// repeating with period T1 + T2. Durations must be positive.
struct QuenchProtocol {
  HamiltonianParams stage1;
  double T1 = 0.0;
  HamiltonianParams stage2;
  double T2 = 0.0;

  QuenchProtocol() = default;
  QuenchProtocol(const HamiltonianParams& s1, double T1_,
                 const HamiltonianParams& s2, double T2_);

  double period() const { return T1 + T2; }
};

/// Bloch vector (h_x, h_y, h_z) of the generalized Haldane model:
///   h_x = t1 (1 + cos k1 + cos k2) + t3 [2 cos(k1-k2) + cos(k1+k2)]
///   h_y = t1 (sin k1 + sin k2) + t3 sin(k1+k2)
///   h_z = 2 t2 sin(phi) [sin k1 - sin k2 - sin(k1-k2)]
Vec3 bloch_vector(const HamiltonianParams& p, const KPoint& k);

/// The two stage fields (h1(k), h2(k)) of a quench protocol.
std::pair<Vec3, Vec3> stage_fields(const QuenchProtocol& qp, const KPoint& k);

/// Hopping values used throughout the bundled runs:
/// (t1, t2) = (1, 0.8) held fixed, stage 1 (t3, phi) = (0.75, -pi/6),
/// stage 2 (t3, phi) = (-0.75, -pi/2).
HamiltonianParams preset_stage1();
HamiltonianParams preset_stage2();
QuenchProtocol preset_protocol(double T1, double T2);

}  // namespace floqtop
