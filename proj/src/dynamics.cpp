#include "floqtop/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "floqtop/errors.hpp"
#include "floqtop/parallel.hpp"

namespace floqtop {

std::vector<QubitState> evolve_stroboscopic(const SU2Op& u,
                                            const QubitState& state0, int N) {
  if (N < 1) throw std::invalid_argument("evolve_stroboscopic: N must be >= 1");
  if (std::abs(state_norm(state0) - 1.0) > 1e-12)
    throw std::invalid_argument("evolve_stroboscopic: state0 not normalized");
  std::vector<QubitState> out;
  out.reserve(N);
  QubitState s = state0;
  for (int l = 0; l < N; ++l) {
    s = apply(u, s);
    out.push_back(s);
  }
  return out;
}

Vec3 time_averaged_spin(const SU2Op& u, const QubitState& state0, int N) {
  if (N < 1) throw std::invalid_argument("time_averaged_spin: N must be >= 1");
  if (std::abs(state_norm(state0) - 1.0) > 1e-12)
    throw std::invalid_argument("time_averaged_spin: state0 not normalized");
  Vec3 acc{};
  QubitState s = state0;
  for (int l = 0; l < N; ++l) {
    s = apply(u, s);
    acc += spin_expectation(s);
  }
  return acc * (1.0 / N);
}

WindingAngles dwa(const SU2Op& u, const QubitState& state0, int N, SpinAxis j,
                  SpinAxis l, double tol) {
  return swa(time_averaged_spin(u, state0, N), j, l, tol);
}

StroboscopicRun stroboscopic_run(const QuenchProtocol& qp, const KPoint& k,
                                 const QubitState& state0, int N, double tol) {
  StroboscopicRun run;
  run.k = k;
  run.initial_state = state0;
  run.periods = N;
  const SU2Op u = floquet_operator(qp, k);
  run.averaged_spin = time_averaged_spin(u, state0, N);
  const QuasienergyInfo q = quasienergy(u, tol);
  if (q.degenerate) {
    run.degenerate = true;
  } else {
    run.weight_gap =
        weight_gap(decompose(state0, EffectiveBloch{q.e_plus * q.r_hat}));
  }
  return run;
}

InitialStateRule basis_zero_rule() {
  return {"zero", [](const KPoint&) { return QubitState{}; }};
}

InitialStateRule fixed_state_rule(const QubitState& s, std::string name) {
  return {std::move(name), [s](const KPoint&) { return s; }};
}

InitialStateRule random_state_rule(std::uint64_t seed) {
  // one state drawn uniformly from the Bloch sphere, used at every k
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double z = 2.0 * u(rng) - 1.0;
  const double phi = 2.0 * std::numbers::pi * u(rng);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const QubitState s =
      axis_eigenstate(Vec3{r * std::cos(phi), r * std::sin(phi), z});
  return {"random:" + std::to_string(seed), [s](const KPoint&) { return s; }};
}

DynamicTexture dynamic_texture(const QuenchProtocol& qp,
                               const InitialStateRule& rule, int n1, int n2,
                               int N, double tol, int threads) {
  if (n1 < 2 || n2 < 2)
    throw std::invalid_argument("dynamic_texture: grid sizes must be >= 2");
  if (N < 1) throw std::invalid_argument("dynamic_texture: N must be >= 1");
  DynamicTexture dt;
  dt.periods = N;
  dt.texture.n1 = n1;
  dt.texture.n2 = n2;
  dt.texture.band = Band::plus;
  dt.texture.values.assign(static_cast<size_t>(n1) * n2, Vec3{});
  dt.weight_gap.assign(static_cast<size_t>(n1) * n2, 0.0);
  std::vector<std::vector<std::pair<int, int>>> row_degenerate(n1);

  parallel_for(n1, threads, [&](int i1) {
    for (int i2 = 0; i2 < n2; ++i2) {
      const KPoint k = dt.texture.kpoint(i1, i2);
      const StroboscopicRun run = stroboscopic_run(qp, k, rule.make(k), N, tol);
      const size_t idx = dt.texture.index(i1, i2);
      dt.texture.values[idx] = run.averaged_spin;
      dt.weight_gap[idx] = run.weight_gap;
      if (run.degenerate) row_degenerate[i1].emplace_back(i1, i2);
    }
  });
  for (auto& row : row_degenerate)
    dt.texture.degenerate_points.insert(dt.texture.degenerate_points.end(),
                                        row.begin(), row.end());
  return dt;
}

DynamicChernReport chern_dynamic(const QuenchProtocol& qp,
                                 const InitialStateRule& rule, int grid_n,
                                 int N, const AxisTriple& axis,
                                 const DynamicChernOptions& opts, int threads) {
  DynamicTexture dt =
      dynamic_texture(qp, rule, grid_n, grid_n, N, opts.degeneracy_tol, threads);

  DynamicChernReport rep;
  rep.grid_n = grid_n;
  rep.periods = N;
  rep.axis = axis;

  // reduce to the filled-band representative and mask unusable points
  SpinTextureGrid rectified = dt.texture;
  std::vector<bool> usable(rectified.values.size(), true);
  size_t n_usable = 0;
  for (int i1 = 0; i1 < grid_n; ++i1) {
    for (int i2 = 0; i2 < grid_n; ++i2) {
      const size_t idx = rectified.index(i1, i2);
      const double w = dt.weight_gap[idx];
      if (std::abs(w) < opts.weight_threshold) {
        usable[idx] = false;
        rep.low_weight_points.push_back(rectified.kpoint(i1, i2));
        continue;
      }
      ++n_usable;
      if (w < 0.0) rectified.values[idx] = -rectified.values[idx];
    }
  }
  for (const auto& [i1, i2] : dt.texture.degenerate_points) {
    usable[rectified.index(i1, i2)] = false;
    rep.degenerate_points.push_back(rectified.kpoint(i1, i2));
  }
  if (n_usable == 0)
    throw WeightGapViolation("chern_dynamic: |c+|^2 ~ |c-|^2 for rule '" +
                             rule.name + "' on the entire grid");

  SingularityOptions sopts = opts.singularity;
  sopts.mask = &usable;
  sopts.skipped_windings = &rep.masked_windings;
  rep.singularities = find_singularities(rectified, axis, sopts);
  rep.chern = chern_from_singularities(rep.singularities);
  return rep;
}

}  // namespace floqtop
