#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "floqtop/bloch_model.hpp"

using namespace floqtop;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("bloch_vector at high-symmetry points") {
  const HamiltonianParams p1 = preset_stage1();
  const Vec3 h = bloch_vector(p1, {0.0, 0.0});
  CHECK(h.x == doctest::Approx(5.25).epsilon(1e-14));
  CHECK(h.y == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(h.z == doctest::Approx(0.0).epsilon(1e-14));

  const Vec3 h2 = bloch_vector(preset_stage2(), {0.0, 0.0});
  CHECK(h2.x == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(h2.y == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(h2.z == doctest::Approx(0.0).epsilon(1e-14));

  // cos k1 = cos k2 = -1, cos(k1-k2) = cos(k1+k2) = 1, all sines vanish
  const Vec3 hm = bloch_vector(p1, {pi, pi});
  CHECK(hm.x == doctest::Approx(-1.0 + 3.0 * 0.75).epsilon(1e-12));
  CHECK(std::abs(hm.y) < 1e-12);
  CHECK(std::abs(hm.z) < 1e-12);
}

TEST_CASE("stage_fields composes both stages") {
  const QuenchProtocol qp = preset_protocol(0.9, 0.8);
  const auto [h1, h2] = stage_fields(qp, {0.0, 0.0});
  CHECK(h1.x == doctest::Approx(5.25));
  CHECK(h2.x == doctest::Approx(0.75));

  const QuenchProtocol same(preset_stage1(), 0.5, preset_stage1(), 0.5);
  const auto [a, b] = stage_fields(same, {0.7, -1.1});
  CHECK(a.x == b.x);
  CHECK(a.y == b.y);
  CHECK(a.z == b.z);
}

TEST_CASE("stage_fields at (pi/2, -pi/2) against symbolic evaluation") {
  // h_x = t1 (1 + 0 + 0) + t3 (2 cos(pi) + cos(0)) = t1 - t3
  // h_y = t1 (1 - 1) + t3 sin(0) = 0
  // h_z = 2 t2 sin(phi) (1 + 1 - 0) = 4 t2 sin(phi)
  const QuenchProtocol qp = preset_protocol(0.9, 0.8);
  const auto [h1, h2] = stage_fields(qp, {pi / 2.0, -pi / 2.0});
  CHECK(h1.x == doctest::Approx(1.0 - 0.75).epsilon(1e-14));
  CHECK(h1.y == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(h1.z == doctest::Approx(4.0 * 0.8 * std::sin(-pi / 6.0)).epsilon(1e-14));
  CHECK(h2.x == doctest::Approx(1.0 + 0.75).epsilon(1e-14));
  CHECK(h2.y == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(h2.z == doctest::Approx(4.0 * 0.8 * std::sin(-pi / 2.0)).epsilon(1e-14));
}

TEST_CASE("periodicity in both momentum components") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uk(-pi, pi);
  std::uniform_real_distribution<double> up(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const HamiltonianParams p(up(rng), up(rng), up(rng), uk(rng));
    const double k1 = uk(rng), k2 = uk(rng);
    const int m = static_cast<int>(rng() % 7) - 3;
    const int n = static_cast<int>(rng() % 7) - 3;
    const Vec3 a = bloch_vector(p, {k1, k2});
    const Vec3 b = bloch_vector(p, {k1 + 2.0 * pi * m, k2 + 2.0 * pi * n});
    CHECK(std::abs(a.x - b.x) < 1e-12);
    CHECK(std::abs(a.y - b.y) < 1e-12);
    CHECK(std::abs(a.z - b.z) < 1e-12);
  }
}

TEST_CASE("h_z vanishes when t2 = 0 or sin(phi) = 0") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> uk(-pi, pi);
  for (int trial = 0; trial < 100; ++trial) {
    const KPoint k{uk(rng), uk(rng)};
    CHECK(std::abs(bloch_vector({1.0, 0.0, 0.5, 0.7}, k).z) < 1e-12);
    CHECK(std::abs(bloch_vector({1.0, 0.8, 0.5, 0.0}, k).z) < 1e-12);
    CHECK(std::abs(bloch_vector({1.0, 0.8, 0.5, -pi}, k).z) < 1e-12);
  }
}

TEST_CASE("h_x even and h_y odd under k -> -k") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> uk(-pi, pi);
  std::uniform_real_distribution<double> up(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const HamiltonianParams p(up(rng), up(rng), up(rng), uk(rng));
    const double k1 = uk(rng), k2 = uk(rng);
    const Vec3 a = bloch_vector(p, {k1, k2});
    const Vec3 b = bloch_vector(p, {-k1, -k2});
    CHECK(std::abs(a.x - b.x) < 1e-12);
    CHECK(std::abs(a.y + b.y) < 1e-12);
  }
}

TEST_CASE("phi normalized into [-pi, pi) on construction") {
  const HamiltonianParams p(1.0, 1.0, 1.0, 3.0 * pi / 2.0);
  CHECK(p.phi == doctest::Approx(-pi / 2.0));
  const HamiltonianParams q(1.0, 1.0, 1.0, pi);
  CHECK(q.phi == doctest::Approx(-pi));
  CHECK(q.phi < pi);
}

TEST_CASE("k-point canonical representative") {
  const KPoint k(3.0 * pi, -5.0 * pi / 2.0);
  CHECK(k.k1 == doctest::Approx(-pi));
  CHECK(k.k2 == doctest::Approx(-pi / 2.0));
}

TEST_CASE("protocol durations validated") {
  CHECK_THROWS_AS(QuenchProtocol(preset_stage1(), -1.0, preset_stage2(), 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(QuenchProtocol(preset_stage1(), 0.5, preset_stage2(), 0.0),
                  std::invalid_argument);
}
