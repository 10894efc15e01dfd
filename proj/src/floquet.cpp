#include "floqtop/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "floqtop/errors.hpp"

namespace floqtop {

SU2Op floquet_operator(const QuenchProtocol& qp, const KPoint& k) {
  const auto [h1, h2] = stage_fields(qp, k);
  return compose(su2_exp(qp.T2 * h2), su2_exp(qp.T1 * h1));
}

QuasienergyInfo quasienergy(const SU2Op& u, double tol) {
  QuasienergyInfo q;
  const double a0 = std::clamp(u.a0, -1.0, 1.0);
  q.e_plus = std::acos(a0);
  const double s = norm(u.a);  // equals |sin E+| for a unit quaternion
  if (s < tol) {
    q.degenerate = true;
    return q;
  }
  q.r_hat = u.a * (1.0 / s);
  return q;
}

EffectiveBloch effective_bloch(const SU2Op& u, double tol) {
  const QuasienergyInfo q = quasienergy(u, tol);
  if (q.degenerate)
    throw DegeneratePoint("effective_bloch: quasienergy gap closed (|sin E| = " +
                          std::to_string(norm(u.a)) + ")");
  return {q.e_plus * q.r_hat};
}

QubitState axis_eigenstate(const Vec3& axis) {
  const double n = norm(axis);
  if (n == 0.0)
    throw DegeneratePoint("axis_eigenstate: zero axis has no eigenbasis");
  const Vec3 a = axis * (1.0 / n);
  const double amp0 = std::sqrt(std::max(0.0, 0.5 * (1.0 + a.z)));
  if (amp0 < 1e-12) return {Complex{0.0, 0.0}, Complex{1.0, 0.0}};
  return {Complex{amp0, 0.0}, Complex{a.x, a.y} / (2.0 * amp0)};
}

std::pair<QubitState, QubitState> eigenstates(const EffectiveBloch& d) {
  return {axis_eigenstate(d.d), axis_eigenstate(-d.d)};
}

StateDecomposition decompose(const QubitState& psi, const EffectiveBloch& d) {
  const auto [up, dn] = eigenstates(d);
  return {inner(up, psi), inner(dn, psi)};
}

Vec3 spin_expectation(const StateDecomposition& dec, const EffectiveBloch& d) {
  return weight_gap(dec) * (d.d * (1.0 / norm(d.d)));
}

}  // namespace floqtop
