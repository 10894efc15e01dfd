#include "floqtop/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "floqtop/errors.hpp"

namespace floqtop {

namespace {
constexpr double kPi = std::numbers::pi;
}

PulseSegment::PulseSegment(double rabi_, double phase_, double detuning_,
                           double duration_)
    : rabi(rabi_), phase(phase_), detuning(detuning_), duration(duration_) {
  if (rabi < 0.0) throw std::invalid_argument("PulseSegment: rabi must be >= 0");
  if (duration < 0.0)
    throw std::invalid_argument("PulseSegment: duration must be >= 0");
}

Vec3 rotating_hamiltonian(const PulseSegment& seg) {
  return {0.5 * seg.rabi * std::cos(seg.phase),
          0.5 * seg.rabi * std::sin(seg.phase), 0.5 * seg.detuning};
}

SU2Op segment_unitary(const PulseSegment& seg) {
  return su2_exp(rotating_hamiltonian(seg) * seg.duration);
}

PulseSegment prep_pulse(const EffectiveBloch& d, double rabi) {
  if (!(rabi > 0.0)) throw std::invalid_argument("prep_pulse: rabi must be > 0");
  const double mag = norm(d.d);
  if (mag == 0.0) throw ZeroField("prep_pulse: |d| = 0");
  PulseSegment seg;
  seg.rabi = rabi;
  seg.phase = std::atan2(d.d.y, d.d.x) + kPi / 2.0;
  seg.detuning = 0.0;
  seg.duration = std::acos(std::clamp(d.d.z / mag, -1.0, 1.0)) / rabi;
  return seg;
}

std::pair<PulseSegment, PulseSegment> floquet_drive_pulses(
    const QuenchProtocol& qp, const KPoint& k, double rabi, double planar_tol) {
  if (!(rabi > 0.0))
    throw std::invalid_argument("floquet_drive_pulses: rabi must be > 0");
  const auto [h1, h2] = stage_fields(qp, k);

  auto stage_segment = [&](const Vec3& h, double T) {
    PulseSegment seg;
    const double rho = std::hypot(h.x, h.y);
    if (rho < planar_tol) {
      // pure sigma_z stage field: zero-amplitude segment of equal phase area
      seg.rabi = 0.0;
      seg.phase = 0.0;
      seg.detuning = h.z >= 0.0 ? rabi : -rabi;
      seg.duration = 2.0 * std::abs(h.z) * T / rabi;
      return seg;
    }
    seg.rabi = rabi;
    seg.phase = std::atan2(h.y, h.x);
    seg.detuning = rabi * h.z / rho;
    seg.duration = 2.0 * rho * T / rabi;
    return seg;
  };
  return {stage_segment(h1, qp.T1), stage_segment(h2, qp.T2)};
}

QubitState simulate_sequence(std::span<const PulseSegment> segments,
                             const QubitState& state0) {
  QubitState s = state0;
  for (const auto& seg : segments) s = apply(segment_unitary(seg), s);
  return s;
}

QubitState simulate_sequence(std::span<const PulseSegment> segments,
                             const QubitState& state0, int repeats) {
  if (repeats < 0)
    throw std::invalid_argument("simulate_sequence: repeats must be >= 0");
  QubitState s = state0;
  for (int r = 0; r < repeats; ++r) s = simulate_sequence(segments, s);
  return s;
}

namespace {

QubitState rotate_for_axis(const QubitState& state, SpinAxis axis) {
  switch (axis) {
    case SpinAxis::x:
      // pi/2 rotation about -y maps <sigma_x> onto <sigma_z>
      return apply(su2_exp({0.0, -kPi / 4.0, 0.0}), state);
    case SpinAxis::y:
      // pi/2 rotation about +x maps <sigma_y> onto <sigma_z>
      return apply(su2_exp({kPi / 4.0, 0.0, 0.0}), state);
    default:
      return state;
  }
}

}  // namespace

double measure_axis(const QubitState& state, SpinAxis axis) {
  const QubitState rotated = rotate_for_axis(state, axis);
  return std::norm(rotated.up) - std::norm(rotated.dn);
}

double measure_axis_sampled(const QubitState& state, SpinAxis axis,
                            int n_shots, std::uint64_t seed) {
  if (n_shots < 1)
    throw std::invalid_argument("measure_axis_sampled: n_shots must be >= 1");
  const double p = 0.5 * (1.0 + measure_axis(state, axis));
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution shot(std::clamp(p, 0.0, 1.0));
  long ones = 0;
  for (int i = 0; i < n_shots; ++i) ones += shot(rng) ? 1 : 0;
  return 2.0 * static_cast<double>(ones) / n_shots - 1.0;
}

namespace {

// profile the saturation model over b: for fixed b the optimum (a, c) is a
// 2x2 linear least-squares problem in the basis {exp(-bA), 1}
struct ProfileResult {
  double sse = 0.0;
  double a = 0.0;
  double c = 0.0;
  bool ok = false;
};

ProfileResult profile_b(std::span<const std::pair<double, double>> data,
                        double b) {
  double s_ee = 0.0, s_e1 = 0.0, s_11 = 0.0, s_ey = 0.0, s_1y = 0.0;
  for (const auto& [A, w] : data) {
    const double e = std::exp(-b * A);
    s_ee += e * e;
    s_e1 += e;
    s_11 += 1.0;
    s_ey += e * w;
    s_1y += w;
  }
  ProfileResult r;
  const double det = s_ee * s_11 - s_e1 * s_e1;
  if (!(std::abs(det) > 1e-14 * s_11 * std::max(s_ee, 1e-300))) return r;
  r.a = (s_ey * s_11 - s_e1 * s_1y) / det;
  r.c = (s_ee * s_1y - s_e1 * s_ey) / det;
  for (const auto& [A, w] : data) {
    const double res = w - (r.a * std::exp(-b * A) + r.c);
    r.sse += res * res;
  }
  r.ok = std::isfinite(r.sse);
  return r;
}

}  // namespace

RabiCalibration rabi_fit(std::span<const std::pair<double, double>> data) {
  if (data.size() < 4)
    throw std::invalid_argument("rabi_fit: need at least 4 points");
  std::set<double> amplitudes;
  for (const auto& [A, w] : data) amplitudes.insert(A);
  if (amplitudes.size() != data.size())
    throw std::invalid_argument("rabi_fit: amplitudes must be distinct");

  // coarse scan over the decay rate
  double best_b = 0.0, best_sse = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 4000; ++i) {
    const double b = 20.0 * i / 4000.0;
    const ProfileResult p = profile_b(data, b);
    if (p.ok && p.sse < best_sse) {
      best_sse = p.sse;
      best_b = b;
    }
  }
  if (!std::isfinite(best_sse))
    throw FitDiverged("rabi_fit: profiled objective not evaluable");

  // golden-section refinement around the coarse minimum
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = std::max(1e-6, best_b - 0.01), hi = best_b + 0.01;
  for (int it = 0; it < 120; ++it) {
    const double m1 = hi - gr * (hi - lo);
    const double m2 = lo + gr * (hi - lo);
    if (profile_b(data, m1).sse < profile_b(data, m2).sse)
      hi = m2;
    else
      lo = m1;
  }
  const double b = 0.5 * (lo + hi);
  const ProfileResult p = profile_b(data, b);
  if (!p.ok || !(p.sse <= best_sse + 1e-12))
    throw FitDiverged("rabi_fit: residual failed to decrease");
  return {p.a, b, p.c, std::sqrt(p.sse)};
}

double rabi_frequency(const RabiCalibration& cal, double amplitude) {
  constexpr double kLinearBelow = 0.05;
  const double at_edge = cal.a * std::exp(-cal.b * kLinearBelow) + cal.c;
  if (amplitude < kLinearBelow) return amplitude / kLinearBelow * at_edge;
  return cal.a * std::exp(-cal.b * amplitude) + cal.c;
}

ReadoutResult normalize_readout(const ReadoutRecord& rec) {
  if (!(rec.reference > 0.0))
    throw std::invalid_argument("normalize_readout: reference counts must be > 0");
  if (rec.signal < 0.0)
    throw std::invalid_argument("normalize_readout: signal counts must be >= 0");
  if (rec.a == 0.0)
    throw std::invalid_argument("normalize_readout: zero contrast amplitude");
  const double x = (rec.signal - rec.reference) / rec.reference;
  const double x_n = (x - rec.x0) / (2.0 * rec.a) + 0.5;
  const double y_n = 2.0 * x_n - 1.0;
  ReadoutResult out;
  out.sigma_z = std::clamp(y_n, -1.0, 1.0);
  out.clipped = y_n != out.sigma_z;
  return out;
}

}  // namespace floqtop
