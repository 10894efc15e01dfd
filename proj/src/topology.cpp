#include "floqtop/topology.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <string>

#include "floqtop/errors.hpp"
#include "floqtop/parallel.hpp"

namespace floqtop {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_pm_pi(double a) {
  if (a > kPi) return a - kTwoPi;
  if (a <= -kPi) return a + kTwoPi;
  return a;
}

std::string format_kpoint(const KPoint& k) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%.6g, %.6g)", k.k1, k.k2);
  return buf;
}

}  // namespace

KPoint EffectiveFieldGrid::kpoint(int i1, int i2) const {
  return {-kPi + kTwoPi * i1 / n, -kPi + kTwoPi * i2 / n};
}

KPoint SpinTextureGrid::kpoint(int i1, int i2) const {
  return {-kPi + kTwoPi * i1 / n1, -kPi + kTwoPi * i2 / n2};
}

EffectiveFieldGrid effective_field_grid(const QuenchProtocol& qp, int n,
                                        double tol, int threads) {
  if (n < 2) throw std::invalid_argument("effective_field_grid: n must be >= 2");
  EffectiveFieldGrid g;
  g.n = n;
  g.e_plus.assign(static_cast<size_t>(n) * n, 0.0);
  g.d_hat.assign(static_cast<size_t>(n) * n, Vec3{});
  std::vector<std::vector<std::pair<int, int>>> row_degenerate(n);

  parallel_for(n, threads, [&](int i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const KPoint k = g.kpoint(i1, i2);
      const QuasienergyInfo q = quasienergy(floquet_operator(qp, k), tol);
      g.e_plus[g.index(i1, i2)] = q.e_plus;
      if (q.degenerate)
        row_degenerate[i1].emplace_back(i1, i2);
      else
        g.d_hat[g.index(i1, i2)] = q.r_hat;
    }
  });
  for (auto& row : row_degenerate)
    g.degenerate.insert(g.degenerate.end(), row.begin(), row.end());

  double e_min = kPi, e_max = 0.0;
  for (double e : g.e_plus) {
    e_min = std::min(e_min, e);
    e_max = std::max(e_max, e);
  }
  g.min_gap_0 = e_min;
  g.min_gap_pi = kPi - e_max;
  return g;
}

SpectrumGrid band_spectrum(const QuenchProtocol& qp, int grid_n, int threads) {
  EffectiveFieldGrid g = effective_field_grid(qp, grid_n, kDegeneracyTol, threads);
  return {g.n, std::move(g.e_plus), g.min_gap_0, g.min_gap_pi};
}

SpinTextureGrid band_texture(const QuenchProtocol& qp, Band band, int n1,
                             int n2, double tol, int threads) {
  if (n1 < 2 || n2 < 2)
    throw std::invalid_argument("band_texture: grid sizes must be >= 2");
  SpinTextureGrid t;
  t.n1 = n1;
  t.n2 = n2;
  t.band = band;
  t.values.assign(static_cast<size_t>(n1) * n2, Vec3{});
  std::vector<std::vector<std::pair<int, int>>> row_degenerate(n1);
  const double s = band_sign(band);

  parallel_for(n1, threads, [&](int i1) {
    for (int i2 = 0; i2 < n2; ++i2) {
      const KPoint k = t.kpoint(i1, i2);
      const QuasienergyInfo q = quasienergy(floquet_operator(qp, k), tol);
      if (q.degenerate)
        row_degenerate[i1].emplace_back(i1, i2);
      else
        t.values[t.index(i1, i2)] = s * q.r_hat;
    }
  });
  for (auto& row : row_degenerate)
    t.degenerate_points.insert(t.degenerate_points.end(), row.begin(),
                               row.end());
  return t;
}

double lattice_chern_sum(int n, const std::vector<QubitState>& states) {
  if (static_cast<int>(states.size()) != n * n)
    throw std::invalid_argument("lattice_chern_sum: grid size mismatch");
  auto at = [&](int i1, int i2) -> const QubitState& {
    return states[((i1 % n + n) % n) * n + ((i2 % n + n) % n)];
  };
  double total = 0.0;
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const Complex w = inner(at(i1, i2), at(i1 + 1, i2)) *
                        inner(at(i1 + 1, i2), at(i1 + 1, i2 + 1)) *
                        inner(at(i1 + 1, i2 + 1), at(i1, i2 + 1)) *
                        inner(at(i1, i2 + 1), at(i1, i2));
      if (std::abs(w) < 1e-24)
        throw NonQuantized(
            "lattice_chern_sum: vanishing link product, grid under-resolved");
      total -= std::arg(w);
    }
  }
  return total / kTwoPi;
}

int quantize_chern(double raw, double residual_tol) {
  const double rounded = std::round(raw);
  const double residual = std::abs(raw - rounded);
  if (residual > residual_tol)
    throw NonQuantized("chern sum " + std::to_string(raw) +
                       " deviates from an integer by " +
                       std::to_string(residual));
  return static_cast<int>(rounded);
}

namespace {

int chern_from_field_grid(const EffectiveFieldGrid& g, Band band) {
  if (!g.degenerate.empty()) {
    const auto [i1, i2] = g.degenerate.front();
    throw DegenerateGrid("gap closure at k = " + format_kpoint(g.kpoint(i1, i2)) +
                         " (grid " + std::to_string(g.n) + ")");
  }
  const double s = band_sign(band);
  std::vector<QubitState> states(g.d_hat.size());
  for (size_t i = 0; i < g.d_hat.size(); ++i)
    states[i] = axis_eigenstate(s * g.d_hat[i]);
  const double raw = lattice_chern_sum(g.n, states);
  const int c = quantize_chern(raw);
  // the plaquette sum telescopes to an exact multiple of 2 pi; anything
  // beyond rounding noise means the grid cannot resolve the band
  if (std::abs(raw - c) > 1e-6)
    throw NonQuantized("chern residual " + std::to_string(std::abs(raw - c)) +
                       " above 1e-6 on grid " + std::to_string(g.n));
  return c;
}

}  // namespace

int chern_lattice(const QuenchProtocol& qp, Band band, int grid_n, double tol,
                  int threads) {
  return chern_from_field_grid(effective_field_grid(qp, grid_n, tol, threads),
                               band);
}

double curvature_integral(int n, const std::vector<Vec3>& d_hat) {
  if (static_cast<int>(d_hat.size()) != n * n)
    throw std::invalid_argument("curvature_integral: grid size mismatch");
  auto at = [&](int i1, int i2) -> const Vec3& {
    return d_hat[((i1 % n + n) % n) * n + ((i2 % n + n) % n)];
  };
  const double dk = kTwoPi / n;
  double total = 0.0;
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const Vec3 d1 = (8.0 * (at(i1 + 1, i2) - at(i1 - 1, i2)) -
                       (at(i1 + 2, i2) - at(i1 - 2, i2))) *
                      (1.0 / (12.0 * dk));
      const Vec3 d2 = (8.0 * (at(i1, i2 + 1) - at(i1, i2 - 1)) -
                       (at(i1, i2 + 2) - at(i1, i2 - 2))) *
                      (1.0 / (12.0 * dk));
      total += dot(at(i1, i2), cross(d1, d2));
    }
  }
  return total * dk * dk / (4.0 * kPi);
}

double chern_curvature(const QuenchProtocol& qp, Band band, int grid_n,
                       double tol, int threads) {
  EffectiveFieldGrid g = effective_field_grid(qp, grid_n, tol, threads);
  if (!g.degenerate.empty()) {
    const auto [i1, i2] = g.degenerate.front();
    throw DegenerateGrid("gap closure at k = " +
                         format_kpoint(g.kpoint(i1, i2)) + " (grid " +
                         std::to_string(g.n) + ")");
  }
  const double sign = band == Band::plus ? -1.0 : 1.0;
  return sign * curvature_integral(g.n, g.d_hat);
}

WindingAngles swa(const Vec3& s, SpinAxis j, SpinAxis l, double tol) {
  const double sj = component(s, j);
  const double sl = component(s, l);
  if (std::abs(sj) < tol && std::abs(sl) < tol)
    throw SingularPoint("swa: both texture components below tolerance");
  double full = std::atan2(sj, sl);
  if (full <= -kPi) full = kPi;
  double theta = full;
  if (theta > kPi / 2.0) theta -= kPi;
  if (theta <= -kPi / 2.0) theta += kPi;
  return {theta, full};
}

AxisTriple cyclic_axis_triple(SpinAxis i) {
  switch (i) {
    case SpinAxis::x: return {SpinAxis::x, SpinAxis::y, SpinAxis::z};
    case SpinAxis::y: return {SpinAxis::y, SpinAxis::z, SpinAxis::x};
    default: return {SpinAxis::z, SpinAxis::x, SpinAxis::y};
  }
}

namespace {

// bilinear zero of the planar field (f, g) inside a unit cell with the given
// corner values; Newton from the cell center, clamped to the cell
std::pair<double, double> bilinear_zero(double f00, double f10, double f01,
                                        double f11, double g00, double g10,
                                        double g01, double g11) {
  double u = 0.5, v = 0.5;
  for (int it = 0; it < 40; ++it) {
    const double f = f00 * (1 - u) * (1 - v) + f10 * u * (1 - v) +
                     f01 * (1 - u) * v + f11 * u * v;
    const double g = g00 * (1 - u) * (1 - v) + g10 * u * (1 - v) +
                     g01 * (1 - u) * v + g11 * u * v;
    const double fu = (f10 - f00) * (1 - v) + (f11 - f01) * v;
    const double fv = (f01 - f00) * (1 - u) + (f11 - f10) * u;
    const double gu = (g10 - g00) * (1 - v) + (g11 - g01) * v;
    const double gv = (g01 - g00) * (1 - u) + (g11 - g10) * u;
    const double det = fu * gv - fv * gu;
    if (std::abs(det) < 1e-30) break;
    const double du = (f * gv - g * fv) / det;
    const double dv = (fu * g - gu * f) / det;
    u = std::clamp(u - du, 0.0, 1.0);
    v = std::clamp(v - dv, 0.0, 1.0);
    if (std::abs(du) + std::abs(dv) < 1e-14) break;
  }
  return {u, v};
}

double bilinear_at(double a00, double a10, double a01, double a11, double u,
                   double v) {
  return a00 * (1 - u) * (1 - v) + a10 * u * (1 - v) + a01 * (1 - u) * v +
         a11 * u * v;
}

}  // namespace

std::vector<SingularityRecord> find_singularities(
    const SpinTextureGrid& grid, const AxisTriple& axis,
    const SingularityOptions& opts) {
  const int n1 = grid.n1, n2 = grid.n2;
  const size_t npts = static_cast<size_t>(n1) * n2;
  if (opts.mask && opts.mask->size() != npts)
    throw std::invalid_argument("find_singularities: mask size mismatch");

  std::vector<double> full(npts, 0.0);
  std::vector<bool> valid(npts, true);
  std::vector<bool> zero_node(npts, false);
  for (int i1 = 0; i1 < n1; ++i1) {
    for (int i2 = 0; i2 < n2; ++i2) {
      const size_t idx = grid.index(i1, i2);
      if (opts.mask && !(*opts.mask)[idx]) {
        valid[idx] = false;
        continue;
      }
      const Vec3& s = grid.at(i1, i2);
      const double sj = component(s, axis.j);
      const double sl = component(s, axis.l);
      // a zero pinned on a node (a symmetry point, typically) gets the four
      // surrounding plaquettes merged into one block below
      zero_node[idx] =
          std::abs(sj) < opts.component_tol && std::abs(sl) < opts.component_tol;
      full[idx] = std::atan2(sj, sl);
    }
  }

  auto wrap_index = [](int i, int n) { return (i % n + n) % n; };
  auto node = [&](int i1, int i2) {
    return grid.index(wrap_index(i1, n1), wrap_index(i2, n2));
  };

  std::vector<SingularityRecord> records;
  std::vector<bool> consumed(npts, false);  // plaquette keyed by its low corner

  // node-pinned zeros: the angle at the core is meaningless, so take the
  // winding along the boundary of the surrounding 2x2 block instead
  for (int i1 = 0; i1 < n1; ++i1) {
    for (int i2 = 0; i2 < n2; ++i2) {
      if (!zero_node[node(i1, i2)]) continue;
      for (const auto& [d1, d2] :
           {std::pair{1, 0}, {0, 1}, {1, 1}, {-1, 1}})
        if (zero_node[node(i1 + d1, i2 + d2)])
          throw UnresolvedSingularity(
              "adjacent texture zeros on grid nodes near k = " +
              format_kpoint(grid.kpoint(i1, i2)) + "; refine the grid");
      consumed[node(i1, i2)] = true;
      consumed[node(i1 - 1, i2)] = true;
      consumed[node(i1, i2 - 1)] = true;
      consumed[node(i1 - 1, i2 - 1)] = true;

      const int ring[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {1, 0},
                              {1, 1},   {0, 1},  {-1, 1}, {-1, 0}};
      bool ring_valid = true;
      for (const auto& d : ring)
        ring_valid = ring_valid && valid[node(i1 + d[0], i2 + d[1])];
      if (!valid[node(i1, i2)] || !ring_valid) {
        if (opts.skipped_windings) ++(*opts.skipped_windings);
        continue;
      }
      double tot = 0.0;
      for (int s = 0; s < 8; ++s) {
        const double a = full[node(i1 + ring[s][0], i2 + ring[s][1])];
        const double b = full[node(i1 + ring[(s + 1) % 8][0],
                                   i2 + ring[(s + 1) % 8][1])];
        tot += wrap_pm_pi(b - a);
      }
      const int wi = static_cast<int>(std::lround(tot / kTwoPi));
      if (wi == 0) continue;
      if (std::abs(tot / kTwoPi - wi) > opts.winding_residual)
        throw UnresolvedSingularity(
            "block winding " + std::to_string(tot / kTwoPi) +
            " not an integer at k = " + format_kpoint(grid.kpoint(i1, i2)));
      SingularityRecord rec;
      rec.k0 = grid.kpoint(i1, i2);
      rec.winding = wi;
      rec.weight_sign =
          component(grid.at(i1, i2), axis.i) >= 0.0 ? +1 : -1;
      rec.axis = axis;
      records.push_back(rec);
    }
  }

  for (int i1 = 0; i1 < n1; ++i1) {
    const int i1n = (i1 + 1) % n1;
    for (int i2 = 0; i2 < n2; ++i2) {
      if (consumed[grid.index(i1, i2)]) continue;
      const int i2n = (i2 + 1) % n2;
      const size_t c0 = grid.index(i1, i2), c1 = grid.index(i1n, i2);
      const size_t c2 = grid.index(i1n, i2n), c3 = grid.index(i1, i2n);
      const bool usable = valid[c0] && valid[c1] && valid[c2] && valid[c3];
      const double tot = wrap_pm_pi(full[c1] - full[c0]) +
                         wrap_pm_pi(full[c2] - full[c1]) +
                         wrap_pm_pi(full[c3] - full[c2]) +
                         wrap_pm_pi(full[c0] - full[c3]);
      const double w = tot / kTwoPi;
      const int wi = static_cast<int>(std::lround(w));
      if (wi == 0) continue;
      if (!usable) {
        if (opts.skipped_windings) ++(*opts.skipped_windings);
        continue;
      }
      if (std::abs(w - wi) > opts.winding_residual)
        throw UnresolvedSingularity(
            "plaquette winding " + std::to_string(w) +
            " not an integer near k = " + format_kpoint(grid.kpoint(i1, i2)));

      const Vec3 &s00 = grid.values[c0], &s10 = grid.values[c1];
      const Vec3 &s11 = grid.values[c2], &s01 = grid.values[c3];
      const auto [u, v] = bilinear_zero(
          component(s00, axis.l), component(s10, axis.l),
          component(s01, axis.l), component(s11, axis.l),
          component(s00, axis.j), component(s10, axis.j),
          component(s01, axis.j), component(s11, axis.j));
      double wi_val = bilinear_at(component(s00, axis.i), component(s10, axis.i),
                                  component(s01, axis.i), component(s11, axis.i),
                                  u, v);
      if (wi_val == 0.0)
        wi_val = component(s00, axis.i) + component(s10, axis.i) +
                 component(s01, axis.i) + component(s11, axis.i);

      SingularityRecord rec;
      const KPoint base = grid.kpoint(i1, i2);
      rec.k0 = {base.k1 + u * kTwoPi / n1, base.k2 + v * kTwoPi / n2};
      rec.winding = wi;
      rec.weight_sign = wi_val >= 0.0 ? +1 : -1;
      rec.axis = axis;
      records.push_back(rec);
    }
  }

  // opposite-winding singularities closer than two cells cannot be trusted
  const double cell1 = kTwoPi / n1, cell2 = kTwoPi / n2;
  for (size_t p = 0; p < records.size(); ++p) {
    for (size_t q = p + 1; q < records.size(); ++q) {
      if (records[p].winding * records[q].winding >= 0) continue;
      double d1 = std::abs(wrap_pm_pi(records[p].k0.k1 - records[q].k0.k1));
      double d2 = std::abs(wrap_pm_pi(records[p].k0.k2 - records[q].k0.k2));
      const double cells = std::hypot(d1 / cell1, d2 / cell2);
      if (cells < opts.min_separation_cells)
        throw UnresolvedSingularity(
            "opposite windings " + std::to_string(cells) +
            " cells apart near k = " + format_kpoint(records[p].k0) +
            "; refine the grid");
    }
  }
  return records;
}

std::function<Vec3(const KPoint&)> texture_sampler(const SpinTextureGrid& g) {
  return [grid = g](const KPoint& k) -> Vec3 {
    const double x = (k.k1 + kPi) / (kTwoPi / grid.n1);
    const double y = (k.k2 + kPi) / (kTwoPi / grid.n2);
    const int i1 = static_cast<int>(std::floor(x));
    const int i2 = static_cast<int>(std::floor(y));
    const double u = x - i1, v = y - i2;
    auto at = [&](int a, int b) -> const Vec3& {
      return grid.values[((a % grid.n1 + grid.n1) % grid.n1) * grid.n2 +
                         ((b % grid.n2 + grid.n2) % grid.n2)];
    };
    return (1 - u) * (1 - v) * at(i1, i2) + u * (1 - v) * at(i1 + 1, i2) +
           (1 - u) * v * at(i1, i2 + 1) + u * v * at(i1 + 1, i2 + 1);
  };
}

int loop_winding(const std::function<Vec3(const KPoint&)>& texture,
                 const KPoint& k0, double radius, int samples,
                 const AxisTriple& axis, double component_tol) {
  if (samples < 8) throw std::invalid_argument("loop_winding: samples < 8");
  double prev = 0.0, total = 0.0;
  for (int t = 0; t <= samples; ++t) {
    const double ang = kTwoPi * t / samples;
    const KPoint k{k0.k1 + radius * std::cos(ang),
                   k0.k2 + radius * std::sin(ang)};
    const double cur = swa(texture(k), axis.j, axis.l, component_tol).full;
    if (t > 0) {
      const double delta = wrap_pm_pi(cur - prev);
      if (std::abs(delta) > kPi / 2.0)
        throw AmbiguousUnwrap("loop_winding: step of " + std::to_string(delta) +
                              " rad between samples; increase samples");
      total += delta;
    }
    prev = cur;
  }
  const double w = total / kTwoPi;
  const int wi = static_cast<int>(std::lround(w));
  if (std::abs(w - wi) > 1e-3)
    throw AmbiguousUnwrap("loop_winding: accumulated " + std::to_string(w) +
                          " turns, not an integer");
  return wi;
}

int chern_from_singularities(const std::vector<SingularityRecord>& records) {
  long sum = 0;
  for (const auto& r : records) sum += static_cast<long>(r.weight_sign) * r.winding;
  if (sum % 2 != 0)
    throw OddSum("weighted winding sum " + std::to_string(sum) +
                 " is odd; singularities missed or misweighted");
  return static_cast<int>(sum / 2);
}

BandTouchingReport band_touching_check(const QuenchProtocol& qp,
                                       const KPoint& k, double tol) {
  const auto [h1, h2] = stage_fields(qp, k);
  const double n1 = norm(h1), n2 = norm(h2);
  BandTouchingReport rep;

  bool collinear;
  if (n1 < tol || n2 < tol) {
    // a vanishing stage field imposes no direction constraint
    collinear = true;
    rep.parallel = +1;
  } else {
    const Vec3 u1 = h1 * (1.0 / n1), u2 = h2 * (1.0 / n2);
    collinear = norm(cross(u1, u2)) <= tol;
    rep.parallel = collinear ? (dot(u1, u2) >= 0.0 ? +1 : -1) : 0;
  }

  const double sign = rep.parallel == 0 ? +1.0 : rep.parallel;
  const double phase = n1 * qp.T1 + sign * n2 * qp.T2;
  rep.n = std::lround(phase / kPi);
  rep.phase_sum_mod_pi = phase - rep.n * kPi;
  rep.touches = collinear && std::abs(rep.phase_sum_mod_pi) <= tol;
  return rep;
}

std::vector<PhaseDiagramCell> phase_diagram(
    const std::vector<double>& T1_values, const std::vector<double>& T2_values,
    const HamiltonianParams& stage1, const HamiltonianParams& stage2,
    int grid_n_k, int grid_cap, Band band, double tol, int threads) {
  if (T1_values.empty() || T2_values.empty())
    throw std::invalid_argument("phase_diagram: empty duration range");
  for (double t : T1_values)
    if (!(t > 0.0)) throw std::invalid_argument("phase_diagram: T1 <= 0");
  for (double t : T2_values)
    if (!(t > 0.0)) throw std::invalid_argument("phase_diagram: T2 <= 0");

  const int n2 = static_cast<int>(T2_values.size());
  std::vector<PhaseDiagramCell> cells(T1_values.size() * T2_values.size());

  parallel_for(static_cast<int>(cells.size()), threads, [&](int c) {
    PhaseDiagramCell& cell = cells[c];
    cell.T1 = T1_values[c / n2];
    cell.T2 = T2_values[c % n2];
    const QuenchProtocol qp(stage1, cell.T1, stage2, cell.T2);
    for (int n = grid_n_k; n <= grid_cap; n *= 2) {
      const EffectiveFieldGrid g = effective_field_grid(qp, n, tol, 1);
      cell.min_gap_0 = g.min_gap_0;
      cell.min_gap_pi = g.min_gap_pi;
      cell.grid_used = n;
      try {
        cell.chern = chern_from_field_grid(g, band);
        return;
      } catch (const NumericalError&) {
        cell.chern.reset();  // refine and retry
      }
    }
  });
  return cells;
}

}  // namespace floqtop
