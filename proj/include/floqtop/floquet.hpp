#pragma once

#include <utility>

#include "floqtop/bloch_model.hpp"
#include "floqtop/su2.hpp"

namespace floqtop {

/// Default tolerance below which |sin E| marks a closed quasienergy gap.
inline constexpr double kDegeneracyTol = 1e-9;

/// One-period evolution operator
///   U(k) = exp(-i T2 h2(k).sigma) exp(-i T1 h1(k).sigma),
/// stage 1 first in time.
SU2Op floquet_operator(const QuenchProtocol& qp, const KPoint& k);

/// Quasienergy data of a Floquet operator. E+ = arccos(a0) in [0, pi],
/// E- = -E+; r_hat is the rotation axis (Bloch vector of the E+ eigenstate).
/// degenerate is set when |sin E+| falls below the tolerance, in which case
/// r_hat is unspecified.
struct QuasienergyInfo {
  double e_plus = 0.0;
  Vec3 r_hat{};
  bool degenerate = false;
};

QuasienergyInfo quasienergy(const SU2Op& u, double tol = kDegeneracyTol);

/// Effective-Hamiltonian Bloch vector d with |d| = E+ in (0, pi).
/// The 1/T prefactor of (i/T) ln U is deliberately dropped: every downstream
/// quantity uses only d's direction or component ratios, so the uniform
/// rescaling cancels.
struct EffectiveBloch {
  Vec3 d{};
};

/// Throws DegeneratePoint when the gap is closed at this k.
EffectiveBloch effective_bloch(const SU2Op& u, double tol = kDegeneracyTol);

/// Floquet band label. Band::plus is the E+ band with spin texture +d^;
/// it is the band the preparation pulses populate and the one whose Chern
/// numbers reproduce the positive reference values (+1, +2, +4). Band::minus
/// is its partner with texture -d^ and opposite Chern number.
enum class Band { plus, minus };

inline int band_sign(Band b) { return b == Band::plus ? +1 : -1; }

/// Normalized +1 eigenstate of (axis . sigma) for a nonzero axis vector.
/// Phase convention: the first amplitude is real and non-negative; when it
/// vanishes the second amplitude is +1. Fixed so texture maps reproduce
/// bit-for-bit.
QubitState axis_eigenstate(const Vec3& axis);

/// (state_plus, state_minus): eigenstates with Bloch vectors +d^ and -d^.
std::pair<QubitState, QubitState> eigenstates(const EffectiveBloch& d);

/// Amplitudes of a state in the Floquet eigenbasis,
/// |psi> = c_plus |u+> + c_minus |u->.
struct StateDecomposition {
  Complex c_plus{};
  Complex c_minus{};
};

StateDecomposition decompose(const QubitState& psi, const EffectiveBloch& d);

/// |c+|^2 - |c-|^2, the stroboscopic weight gap of the decomposition.
inline double weight_gap(const StateDecomposition& dec) {
  return std::norm(dec.c_plus) - std::norm(dec.c_minus);
}

/// Secular spin expectation (|c+|^2 - |c-|^2) d^, the part that survives
/// long-time stroboscopic averaging. The cross terms present at finite time
/// are covered by the general-state spin_expectation(QubitState) overload.
Vec3 spin_expectation(const StateDecomposition& dec, const EffectiveBloch& d);

}  // namespace floqtop
