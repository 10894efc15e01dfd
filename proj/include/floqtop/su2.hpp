#pragma once

#include <complex>

#include "floqtop/vec3.hpp"

namespace floqtop {

using Complex = std::complex<double>;

/// Special-unitary 2x2 operator stored as a real unit quaternion:
///   U = a0 * 1 - i (a . sigma),  a0^2 + |a|^2 = 1.
/// Unitarity is a norm constraint and composition is branch-free; the dense
/// complex form exists only inside test oracles.
struct SU2Op {
  double a0 = 1.0;
  Vec3 a{};
};

inline SU2Op su2_identity() { return {1.0, {0.0, 0.0, 0.0}}; }

/// exp(-i hT . sigma) = cos|hT| - i sin|hT| (hT^ . sigma).
/// |hT| = 0 gives the identity.
SU2Op su2_exp(const Vec3& hT);

/// Quaternion product implementing U = second * first (first acts first in
/// time). The result is renormalized to unit norm to absorb rounding.
SU2Op compose(const SU2Op& second, const SU2Op& first);

/// deviation of a0^2 + |a|^2 from 1
double unitarity_defect(const SU2Op& u);

/// Two-component spin state; |0> = (1, 0) is the sigma_z = +1 state.
struct QubitState {
  Complex up{1.0, 0.0};
  Complex dn{0.0, 0.0};
};

QubitState apply(const SU2Op& u, const QubitState& s);

inline Complex inner(const QubitState& a, const QubitState& b) {
  return std::conj(a.up) * b.up + std::conj(a.dn) * b.dn;
}

inline double state_norm(const QubitState& s) {
  return std::sqrt(std::norm(s.up) + std::norm(s.dn));
}

/// (<sigma_x>, <sigma_y>, <sigma_z>) of a pure state, cross terms included.
Vec3 spin_expectation(const QubitState& s);

}  // namespace floqtop
