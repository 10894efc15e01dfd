#pragma once

// Dense 2x2 complex-matrix oracle used to cross-check the quaternion
// representation. Lives only in test code; the library never touches the
// dense form.

#include <array>
#include <cmath>
#include <complex>

#include "floqtop/su2.hpp"
#include "floqtop/vec3.hpp"

namespace oracle {

using floqtop::Complex;
using floqtop::QubitState;
using floqtop::SU2Op;
using floqtop::Vec3;

struct Mat2 {
  // row-major entries
  std::array<Complex, 4> m{};

  Complex& operator()(int r, int c) { return m[2 * r + c]; }
  const Complex& operator()(int r, int c) const { return m[2 * r + c]; }
};

inline Mat2 identity() {
  Mat2 I;
  I(0, 0) = 1.0;
  I(1, 1) = 1.0;
  return I;
}

inline Mat2 multiply(const Mat2& A, const Mat2& B) {
  Mat2 C;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      C(r, c) = A(r, 0) * B(0, c) + A(r, 1) * B(1, c);
  return C;
}

inline Mat2 power(const Mat2& A, int n) {
  Mat2 P = identity();
  for (int i = 0; i < n; ++i) P = multiply(P, A);
  return P;
}

// h.sigma as a dense matrix
inline Mat2 pauli_field(const Vec3& h) {
  Mat2 H;
  H(0, 0) = Complex{h.z, 0.0};
  H(0, 1) = Complex{h.x, -h.y};
  H(1, 0) = Complex{h.x, h.y};
  H(1, 1) = Complex{-h.z, 0.0};
  return H;
}

// exp(-i h.sigma) by diagonalizing h.sigma: eigenvalues +-|h| with
// projectors (1 +- h^.sigma)/2
inline Mat2 exp_pauli(const Vec3& h) {
  const double mag = floqtop::norm(h);
  if (mag == 0.0) return identity();
  const Mat2 H = pauli_field(h * (1.0 / mag));
  const Complex ep = std::exp(Complex{0.0, -mag});
  const Complex em = std::exp(Complex{0.0, mag});
  Mat2 U;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const Complex id = (r == c) ? 1.0 : 0.0;
      U(r, c) = ep * 0.5 * (id + H(r, c)) + em * 0.5 * (id - H(r, c));
    }
  return U;
}

inline Mat2 dense(const SU2Op& u) {
  Mat2 M;
  M(0, 0) = Complex{u.a0, -u.a.z};
  M(0, 1) = Complex{-u.a.y, -u.a.x};
  M(1, 0) = Complex{u.a.y, -u.a.x};
  M(1, 1) = Complex{u.a0, u.a.z};
  return M;
}

inline double max_entry_diff(const Mat2& A, const Mat2& B) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(A.m[i] - B.m[i]));
  return d;
}

// eigenphase of U in [0, pi]: the eigenvalues of a special-unitary 2x2
// matrix are exp(-+i E) with cos E = Re tr(U)/2
inline double eigenphase(const Mat2& U) {
  const double c = 0.5 * (U(0, 0) + U(1, 1)).real();
  return std::acos(std::min(1.0, std::max(-1.0, c)));
}

// rotation axis from the traceless part: U = cos E - i sin E (r.sigma)
inline Vec3 rotation_axis(const Mat2& U) {
  const double s = std::sin(eigenphase(U));
  // -Im tr(U sigma_j) / (2 sin E)
  const Complex tx = U(0, 1) + U(1, 0);
  const Complex ty = Complex{0.0, 1.0} * (U(0, 1) - U(1, 0));
  const Complex tz = U(0, 0) - U(1, 1);
  return {-tx.imag() / (2.0 * s), -ty.imag() / (2.0 * s), -tz.imag() / (2.0 * s)};
}

inline QubitState apply(const Mat2& U, const QubitState& s) {
  return {U(0, 0) * s.up + U(0, 1) * s.dn, U(1, 0) * s.up + U(1, 1) * s.dn};
}

}  // namespace oracle
