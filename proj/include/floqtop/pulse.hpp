#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "floqtop/floquet.hpp"

namespace floqtop {

/// One rotating-frame microwave segment: Rabi frequency omega_1, initial
/// phase, detuning delta = omega_0 - omega_2, and duration. Under the
/// rotating-wave approximation it generates the static field
/// ((omega_1/2) cos phase, (omega_1/2) sin phase, delta/2).
struct PulseSegment {
  double rabi = 0.0;      // >= 0
  double phase = 0.0;     // radians
  double detuning = 0.0;
  double duration = 0.0;  // >= 0

  PulseSegment() = default;
  PulseSegment(double rabi_, double phase_, double detuning_, double duration_);
};

/// Rotating-frame field of a segment.
Vec3 rotating_hamiltonian(const PulseSegment& seg);

/// Unitary of one segment, exp(-i H_rot * duration).
SU2Op segment_unitary(const PulseSegment& seg);

/// Resonant pulse that maps |0> onto the E+ eigenstate of d.sigma:
/// phase = arg(d_x + i d_y) + pi/2, duration = arccos(d_z/|d|) / rabi.
/// Throws ZeroField when |d| = 0.
PulseSegment prep_pulse(const EffectiveBloch& d, double rabi);

/// Two detuned segments reproducing one quench period at this k. For each
/// stage, with rho = |(h_x, h_y)|:
///   phase = arg(h_x + i h_y), duration = 2 rho T / rabi,
///   detuning = rabi h_z / rho,
/// so the rotating-frame field times the duration equals h T componentwise.
/// When rho vanishes (pure sigma_z stage field) the stage degenerates to a
/// zero-amplitude detuning segment with the same phase area:
/// detuning = rabi sgn(h_z), duration = 2 |h_z| T / rabi.
std::pair<PulseSegment, PulseSegment> floquet_drive_pulses(
    const QuenchProtocol& qp, const KPoint& k, double rabi,
    double planar_tol = 1e-12);

/// Apply the segments in order to state0.
QubitState simulate_sequence(std::span<const PulseSegment> segments,
                             const QubitState& state0);

/// N-fold repetition of the segment list (the driven-evolution wrapper).
QubitState simulate_sequence(std::span<const PulseSegment> segments,
                             const QubitState& state0, int repeats);

/// Projective readout along an axis: sigma_x via a pi/2 rotation about -y
/// followed by a sigma_z readout, sigma_y via a pi/2 rotation about +x,
/// sigma_z directly. |0> is the sigma_z = +1 state.
double measure_axis(const QubitState& state, SpinAxis axis);

/// Shot-sampled variant: n_shots Bernoulli draws from p = (1 + <sigma_z>)/2
/// after the axis rotation, with a caller-provided seed.
double measure_axis_sampled(const QubitState& state, SpinAxis axis,
                            int n_shots, std::uint64_t seed);

/// Saturation model of the amplifier chain, omega_R = a exp(-b A) + c.
struct RabiCalibration {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double residual_norm = 0.0;
};

/// Least-squares fit of (amplitude, frequency) pairs to the saturation
/// model: a coarse scan over b with linear sub-solves for (a, c), then a
/// golden-section refinement. Requires at least 4 points with distinct
/// amplitudes. Throws FitDiverged when the profiled objective cannot be
/// evaluated at the optimum.
RabiCalibration rabi_fit(std::span<const std::pair<double, double>> data);

/// Amplitude -> Rabi frequency. The fit applies from A = 0.05 up; below the
/// calibrated range the saturation-free linear rule through the origin and
/// the A = 0.05 fit value is used.
double rabi_frequency(const RabiCalibration& cal, double amplitude);

/// Photon-count readout: signal and reference counts plus the contrast
/// parameters (x0, a) of the Rabi-oscillation fit used for normalization.
struct ReadoutRecord {
  double signal = 0.0;     // >= 0
  double reference = 1.0;  // > 0
  double x0 = 0.0;
  double a = 1.0;
};

struct ReadoutResult {
  double sigma_z = 0.0;  // clipped to [-1, 1]
  bool clipped = false;
};

/// x = (s - r)/r, x_n = (x - x0)/(2a) + 1/2, sigma_z = 2 x_n - 1.
ReadoutResult normalize_readout(const ReadoutRecord& rec);

}  // namespace floqtop
