#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "floqtop/errors.hpp"
#include "floqtop/floquet.hpp"
#include "oracle.hpp"

using namespace floqtop;

namespace {

constexpr double pi = std::numbers::pi;

Vec3 random_vec(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng)};
}

SU2Op random_su2(std::mt19937_64& rng) { return su2_exp(random_vec(rng, 3.0)); }

QubitState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  QubitState s{Complex{u(rng), u(rng)}, Complex{u(rng), u(rng)}};
  const double n = state_norm(s);
  s.up /= n;
  s.dn /= n;
  return s;
}

}  // namespace

TEST_CASE("su2_exp basic rotations") {
  const SU2Op id = su2_exp({0.0, 0.0, 0.0});
  CHECK(id.a0 == 1.0);
  CHECK(norm(id.a) == 0.0);

  // quarter rotation about z: U = -i sigma_z
  const SU2Op qz = su2_exp({0.0, 0.0, pi / 2.0});
  CHECK(std::abs(qz.a0) < 1e-15);
  CHECK(qz.a.z == doctest::Approx(1.0));

  // half-period: U = -1
  const SU2Op half = su2_exp({pi, 0.0, 0.0});
  CHECK(half.a0 == doctest::Approx(-1.0));
  CHECK(norm(half.a) < 1e-15);
}

TEST_CASE("compose identity and collinear rotations") {
  std::mt19937_64 rng(21);
  const SU2Op x = random_su2(rng);
  const SU2Op with_id = compose(su2_identity(), x);
  CHECK(with_id.a0 == doctest::Approx(x.a0).epsilon(1e-14));
  CHECK(norm(with_id.a - x.a) < 1e-14);

  const Vec3 axis{0.3, -0.5, 0.81};
  const Vec3 n = axis * (1.0 / norm(axis));
  const SU2Op sum = compose(su2_exp(0.7 * n), su2_exp(0.4 * n));
  const SU2Op direct = su2_exp(1.1 * n);
  CHECK(sum.a0 == doctest::Approx(direct.a0).epsilon(1e-13));
  CHECK(norm(sum.a - direct.a) < 1e-13);
}

TEST_CASE("compose matches dense matrix product") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    const SU2Op a = random_su2(rng);
    const SU2Op b = random_su2(rng);
    const oracle::Mat2 prod =
        oracle::multiply(oracle::dense(b), oracle::dense(a));
    CHECK(oracle::max_entry_diff(oracle::dense(compose(b, a)), prod) < 1e-12);
  }
}

TEST_CASE("compose is associative") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const SU2Op a = random_su2(rng), b = random_su2(rng), c = random_su2(rng);
    const SU2Op left = compose(compose(c, b), a);
    const SU2Op right = compose(c, compose(b, a));
    CHECK(std::abs(left.a0 - right.a0) < 1e-12);
    CHECK(norm(left.a - right.a) < 1e-12);
  }
}

TEST_CASE("every produced operator stays unit norm") {
  std::mt19937_64 rng(24);
  SU2Op u = su2_identity();
  for (int trial = 0; trial < 200; ++trial) {
    u = compose(random_su2(rng), u);
    CHECK(unitarity_defect(u) < 1e-12);
  }
}

TEST_CASE("floquet_operator collinear closure and identity limits") {
  // both stage fields point along +x at k = 0 with magnitudes 5.25 and 0.75,
  // total phase (5.25 + 0.75) * pi/6 = pi, so U = -1
  const QuenchProtocol qp = preset_protocol(pi / 6.0, pi / 6.0);
  const SU2Op u = floquet_operator(qp, {0.0, 0.0});
  CHECK(u.a0 == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(norm(u.a) < 1e-12);

  const QuenchProtocol tiny = preset_protocol(1e-300, 1e-300);
  const SU2Op almost_id = floquet_operator(tiny, {0.7, 0.4});
  CHECK(almost_id.a0 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("floquet_operator matches dense exponential oracle") {
  const QuenchProtocol qp = preset_protocol(0.9, 0.8);
  const KPoint k{1.0, -0.7};
  const auto [h1, h2] = stage_fields(qp, k);
  const oracle::Mat2 expected = oracle::multiply(
      oracle::exp_pauli(qp.T2 * h2), oracle::exp_pauli(qp.T1 * h1));
  CHECK(oracle::max_entry_diff(oracle::dense(floquet_operator(qp, k)),
                               expected) < 1e-12);
}

TEST_CASE("floquet_operator is 2pi-periodic") {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> uk(-pi, pi);
  const QuenchProtocol qp = preset_protocol(0.9, 1.2);
  for (int trial = 0; trial < 50; ++trial) {
    const double k1 = uk(rng), k2 = uk(rng);
    const SU2Op a = floquet_operator(qp, {k1, k2});
    const SU2Op b = floquet_operator(qp, {k1 + 2.0 * pi, k2 - 4.0 * pi});
    CHECK(std::abs(a.a0 - b.a0) < 1e-12);
    CHECK(norm(a.a - b.a) < 1e-12);
  }
}

TEST_CASE("quasienergy branches and degeneracy flag") {
  const QuasienergyInfo id = quasienergy(su2_identity());
  CHECK(id.e_plus == 0.0);
  CHECK(id.degenerate);

  const QuasienergyInfo qz = quasienergy(su2_exp({0.0, 0.0, pi / 2.0}));
  CHECK(qz.e_plus == doctest::Approx(pi / 2.0));
  CHECK_FALSE(qz.degenerate);
  CHECK(qz.r_hat.z == doctest::Approx(1.0));

  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 200; ++trial) {
    const SU2Op u = random_su2(rng);
    const QuasienergyInfo q = quasienergy(u);
    if (q.degenerate) continue;
    CHECK(std::abs(q.e_plus - oracle::eigenphase(oracle::dense(u))) < 1e-10);
    CHECK(std::abs(norm(q.r_hat) - 1.0) < 1e-10);
  }
}

TEST_CASE("effective_bloch direction and magnitude") {
  const double theta = 1.234;
  const EffectiveBloch dz = effective_bloch(su2_exp({0.0, 0.0, theta}));
  CHECK(dz.d.z == doctest::Approx(theta).epsilon(1e-13));
  CHECK(std::abs(dz.d.x) < 1e-14);

  const EffectiveBloch dx = effective_bloch(su2_exp({pi / 2.0, 0.0, 0.0}));
  CHECK(dx.d.x == doctest::Approx(pi / 2.0));

  CHECK_THROWS_AS(effective_bloch(su2_identity()), DegeneratePoint);
  CHECK_THROWS_AS(effective_bloch(su2_exp({pi, 0.0, 0.0})), DegeneratePoint);

  // axis from the dense rotation-axis formula
  const QuenchProtocol qp = preset_protocol(0.9, 0.8);
  const SU2Op u = floquet_operator(qp, {0.3, 0.5});
  const EffectiveBloch d = effective_bloch(u);
  const Vec3 axis = oracle::rotation_axis(oracle::dense(u));
  CHECK(norm(d.d * (1.0 / norm(d.d)) - axis) < 1e-9);
}

TEST_CASE("eigenstates conventions and spectral action") {
  const auto [pz, mz] = eigenstates(EffectiveBloch{{0.0, 0.0, 1.0}});
  CHECK(pz.up == Complex{1.0, 0.0});
  CHECK(pz.dn == Complex{0.0, 0.0});
  CHECK(mz.up == Complex{0.0, 0.0});
  CHECK(mz.dn == Complex{1.0, 0.0});

  const auto [px, mx] = eigenstates(EffectiveBloch{{1.0, 0.0, 0.0}});
  CHECK(px.up.real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(px.dn.real() == doctest::Approx(1.0 / std::sqrt(2.0)));

  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 d = random_vec(rng, 2.0);
    if (norm(d) < 1e-6) continue;
    const auto [up, dn] = eigenstates(EffectiveBloch{d});
    const Vec3 dhat = d * (1.0 / norm(d));
    CHECK(dot(spin_expectation(up), dhat) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dot(spin_expectation(dn), dhat) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(inner(up, dn)) < 1e-12);
    // phase convention: first amplitude real and non-negative
    CHECK(up.up.imag() == 0.0);
    CHECK(up.up.real() >= 0.0);
  }
}

TEST_CASE("floquet eigenstates diagonalize U with phase exp(-iE)") {
  std::mt19937_64 rng(28);
  std::uniform_real_distribution<double> uk(-pi, pi);
  const QuenchProtocol qp = preset_protocol(0.9, 0.8);
  for (int trial = 0; trial < 50; ++trial) {
    const SU2Op u = floquet_operator(qp, {uk(rng), uk(rng)});
    const QuasienergyInfo q = quasienergy(u);
    if (q.degenerate) continue;
    const auto [up, dn] = eigenstates(EffectiveBloch{q.e_plus * q.r_hat});
    const QubitState acted = apply(u, up);
    const Complex phase = std::exp(Complex{0.0, -q.e_plus});
    CHECK(std::abs(acted.up - phase * up.up) < 1e-10);
    CHECK(std::abs(acted.dn - phase * up.dn) < 1e-10);
  }
}

TEST_CASE("secular spin expectation") {
  const EffectiveBloch d{{0.6, -0.3, 1.1}};
  const Vec3 dhat = d.d * (1.0 / norm(d.d));

  const Vec3 pure = spin_expectation(StateDecomposition{1.0, 0.0}, d);
  CHECK(norm(pure - dhat) < 1e-14);
  CHECK(norm(pure) == doctest::Approx(1.0).epsilon(1e-12));

  const Vec3 balanced = spin_expectation(
      StateDecomposition{1.0 / std::sqrt(2.0), Complex{0.0, 1.0 / std::sqrt(2.0)}}, d);
  CHECK(norm(balanced) < 1e-14);
}

TEST_CASE("secular part equals long-time average of the full expectation") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> uk(-pi, pi);
  const QuenchProtocol qp = preset_protocol(0.9, 0.8);
  for (int trial = 0; trial < 5; ++trial) {
    const SU2Op u = floquet_operator(qp, {uk(rng), uk(rng)});
    const QuasienergyInfo q = quasienergy(u);
    if (q.degenerate || std::abs(std::sin(q.e_plus)) < 0.3) continue;
    const EffectiveBloch d{q.e_plus * q.r_hat};
    const QubitState psi0 = random_state(rng);

    Vec3 acc{};
    QubitState s = psi0;
    const int N = 100000;
    for (int l = 0; l < N; ++l) {
      s = apply(u, s);
      acc += spin_expectation(s);
    }
    acc = acc * (1.0 / N);
    const Vec3 secular = spin_expectation(decompose(psi0, d), d);
    CHECK(norm(acc - secular) < 2e-3);
  }
}

TEST_CASE("decomposition amplitudes are normalized") {
  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 dv = random_vec(rng, 2.0);
    if (norm(dv) < 1e-6) continue;
    const StateDecomposition dec =
        decompose(random_state(rng), EffectiveBloch{dv});
    CHECK(std::norm(dec.c_plus) + std::norm(dec.c_minus) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}
