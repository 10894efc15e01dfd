// floqtop: Floquet band topology of the periodically quenched generalized
// Haldane model. Subcommands: spectrum, chern, phase-diagram, texture, pulse.
//
// Exit codes: 0 success, 2 configuration/validation error, 3 numerical
// failure (gap closure, non-quantized sum, odd winding sum, ...).

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "floqtop/dynamics.hpp"
#include "floqtop/errors.hpp"
#include "floqtop/gridio.hpp"
#include "floqtop/parallel.hpp"
#include "floqtop/pulse.hpp"
#include "floqtop/topology.hpp"

using namespace floqtop;

namespace {

constexpr double kPi = std::numbers::pi;

struct RunConfig {
  // model; defaults are the bundled quench preset
  double t1 = 1.0;
  double t2 = 0.8;
  double t3_a = 0.75;
  double phi_a = -kPi / 6.0;
  double t3_b = -0.75;
  double phi_b = -kPi / 2.0;
  double T1 = 0.3;
  double T2 = 0.3;

  int grid_n = 120;
  int texture_n = 48;
  std::string band = "plus";
  std::string method = "lattice";
  std::string axis = "z";
  int periods = 64;
  unsigned long long seed = 12345;
  int threads = 0;
  std::string out;
  double degeneracy_tol = 1e-9;
  double weight_threshold = 0.1;
  int refine_cap = 480;

  // phase diagram ranges
  double T1_min = 0.05, T1_max = 2.0;
  double T2_min = 0.05, T2_max = 2.0;
  int T1_steps = 30, T2_steps = 30;

  // single k / loop / box
  double k1 = 0.0, k2 = 0.0;
  double center_k1 = 0.0, center_k2 = 0.0;
  double half_width = 0.5;
  int samples_per_side = 32;
  double k1_min = -kPi, k1_max = kPi;
  double k2_min = -kPi, k2_max = kPi;

  // texture/pulse modes
  std::string mode = "static";
  double rabi = 0.0;  // 0 = derive from the detuning cap
  double detuning_cap = 50.0;
  int repeats = 64;
  bool compare = false;
  std::string data;
};

QuenchProtocol protocol_of(const RunConfig& cfg) {
  return {{cfg.t1, cfg.t2, cfg.t3_a, cfg.phi_a},
          cfg.T1,
          {cfg.t1, cfg.t2, cfg.t3_b, cfg.phi_b},
          cfg.T2};
}

Band band_of(const RunConfig& cfg) {
  if (cfg.band == "plus" || cfg.band == "filled" || cfg.band == "upper")
    return Band::plus;
  if (cfg.band == "minus" || cfg.band == "lower") return Band::minus;
  throw std::invalid_argument("band must be plus|minus, got '" + cfg.band + "'");
}

AxisTriple axis_of(const RunConfig& cfg) {
  if (cfg.axis == "x") return cyclic_axis_triple(SpinAxis::x);
  if (cfg.axis == "y") return cyclic_axis_triple(SpinAxis::y);
  if (cfg.axis == "z") return cyclic_axis_triple(SpinAxis::z);
  throw std::invalid_argument("axis must be x|y|z, got '" + cfg.axis + "'");
}

void validate_common(const RunConfig& cfg) {
  if (!(cfg.T1 > 0.0))
    throw std::invalid_argument("T1 must be > 0, got " + format_num(cfg.T1));
  if (!(cfg.T2 > 0.0))
    throw std::invalid_argument("T2 must be > 0, got " + format_num(cfg.T2));
  if (cfg.grid_n < 2)
    throw std::invalid_argument("grid_n must be >= 2, got " +
                                std::to_string(cfg.grid_n));
  if (cfg.texture_n < 2)
    throw std::invalid_argument("texture_n must be >= 2, got " +
                                std::to_string(cfg.texture_n));
  if (cfg.periods < 1)
    throw std::invalid_argument("periods must be >= 1, got " +
                                std::to_string(cfg.periods));
  if (cfg.threads < 0) throw std::invalid_argument("threads must be >= 0");
  if (!(cfg.degeneracy_tol > 0.0))
    throw std::invalid_argument("degeneracy_tol must be > 0");
  band_of(cfg);
  axis_of(cfg);
}

void echo_config(TableWriter& w, const std::string& command,
                 const RunConfig& cfg) {
  w.header("command", command);
  w.header("t1", cfg.t1);
  w.header("t2", cfg.t2);
  w.header("t3_a", cfg.t3_a);
  w.header("phi_a", cfg.phi_a);
  w.header("t3_b", cfg.t3_b);
  w.header("phi_b", cfg.phi_b);
  w.header("T1", cfg.T1);
  w.header("T2", cfg.T2);
  w.header("grid_n", static_cast<long>(cfg.grid_n));
  w.header("texture_n", static_cast<long>(cfg.texture_n));
  w.header("band", cfg.band);
  w.header("method", cfg.method);
  w.header("axis", cfg.axis);
  w.header("periods", static_cast<long>(cfg.periods));
  w.header("seed", std::to_string(cfg.seed));
  w.header("threads", static_cast<long>(cfg.threads));
  w.header("degeneracy_tol", cfg.degeneracy_tol);
  w.header("weight_threshold", cfg.weight_threshold);
}

std::string angle_cell(const Vec3& s, SpinAxis j, SpinAxis l) {
  try {
    return format_num(swa(s, j, l).theta);
  } catch (const SingularPoint&) {
    return "singular";
  }
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const RunConfig& cfg) {
  validate_common(cfg);
  const SpectrumGrid sp =
      band_spectrum(protocol_of(cfg), cfg.grid_n, cfg.threads);
  std::printf("min_gap_0 = %s\nmin_gap_pi = %s\n",
              format_num(sp.min_gap_0).c_str(),
              format_num(sp.min_gap_pi).c_str());
  if (!cfg.out.empty()) {
    TableWriter w;
    echo_config(w, "spectrum", cfg);
    w.header("min_gap_0", sp.min_gap_0);
    w.header("min_gap_pi", sp.min_gap_pi);
    w.columns({"k1", "k2", "e_plus", "e_minus"});
    for (int i1 = 0; i1 < sp.n; ++i1)
      for (int i2 = 0; i2 < sp.n; ++i2) {
        const double e = sp.e_plus[i1 * sp.n + i2];
        w.begin_row();
        w.cell(-kPi + 2.0 * kPi * i1 / sp.n);
        w.cell(-kPi + 2.0 * kPi * i2 / sp.n);
        w.cell(e);
        w.cell(-e);
      }
    w.write_file(cfg.out);
  }
  return 0;
}

// ------------------------------------------------------------------- chern

void write_singularity_report(TableWriter& w,
                              const std::vector<SingularityRecord>& records,
                              int chern) {
  w.header("singularities", static_cast<long>(records.size()));
  w.header("chern", static_cast<long>(chern));
  w.columns(
      {"k0_1", "k0_2", "winding", "weight_sign", "axis_choice", "contribution"});
  for (const auto& r : records) {
    w.begin_row();
    w.cell(r.k0.k1);
    w.cell(r.k0.k2);
    w.cell(static_cast<long>(r.winding));
    w.cell(static_cast<long>(r.weight_sign));
    std::string ax{axis_name(r.axis.i)};
    ax += ";";
    ax += axis_name(r.axis.j);
    ax += ",";
    ax += axis_name(r.axis.l);
    w.cell(ax);
    w.cell(static_cast<long>(r.weight_sign * r.winding));
  }
}

int cmd_chern(const RunConfig& cfg) {
  validate_common(cfg);
  const QuenchProtocol qp = protocol_of(cfg);
  const Band band = band_of(cfg);
  const AxisTriple axis = axis_of(cfg);

  TableWriter w;
  echo_config(w, "chern", cfg);
  int c = 0;

  if (cfg.method == "lattice") {
    c = chern_lattice(qp, band, cfg.grid_n, cfg.degeneracy_tol, cfg.threads);
    const double curv =
        chern_curvature(qp, band, cfg.grid_n, cfg.degeneracy_tol, cfg.threads);
    std::printf("C = %d (lattice, grid %d); curvature cross-check %s\n", c,
                cfg.grid_n, format_num(curv).c_str());
    w.header("chern", static_cast<long>(c));
    w.header("curvature_check", curv);
  } else if (cfg.method == "swa") {
    // crowded singularities double the grid up to the refinement cap
    std::vector<SingularityRecord> records;
    int grid_used = cfg.grid_n;
    for (int n = cfg.grid_n;; n *= 2) {
      const SpinTextureGrid tex =
          band_texture(qp, band, n, n, cfg.degeneracy_tol, cfg.threads);
      if (!tex.degenerate_points.empty()) {
        const auto [i1, i2] = tex.degenerate_points.front();
        const KPoint k = tex.kpoint(i1, i2);
        throw DegenerateGrid("gap closure at k = (" + format_num(k.k1) + ", " +
                             format_num(k.k2) + ")");
      }
      try {
        records = find_singularities(tex, axis);
        grid_used = n;
        break;
      } catch (const UnresolvedSingularity&) {
        if (2 * n > cfg.refine_cap) throw;
      }
    }
    c = chern_from_singularities(records);
    std::printf("C = %d (swa, %zu singularities, grid %d)\n", c, records.size(),
                grid_used);
    w.header("grid_used", static_cast<long>(grid_used));
    write_singularity_report(w, records, c);
  } else if (cfg.method == "dwa") {
    DynamicChernOptions opts;
    opts.weight_threshold = cfg.weight_threshold;
    opts.degeneracy_tol = cfg.degeneracy_tol;
    const DynamicChernReport rep = chern_dynamic(
        qp, basis_zero_rule(), cfg.grid_n, cfg.periods, axis, opts, cfg.threads);
    c = rep.chern;
    std::printf(
        "C = %d (dwa, %zu singularities, grid %d, N = %d, %zu low-weight "
        "points)\n",
        c, rep.singularities.size(), cfg.grid_n, cfg.periods,
        rep.low_weight_points.size());
    w.header("low_weight_points",
             static_cast<long>(rep.low_weight_points.size()));
    w.header("masked_windings", static_cast<long>(rep.masked_windings));
    write_singularity_report(w, rep.singularities, c);
  } else {
    throw std::invalid_argument("method must be lattice|swa|dwa, got '" +
                                cfg.method + "'");
  }

  if (!cfg.out.empty()) w.write_file(cfg.out);
  return 0;
}

// --------------------------------------------------------- phase diagram

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("range needs at least one step");
  if (n == 1) return {lo};
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

int cmd_phase_diagram(const RunConfig& cfg) {
  validate_common(cfg);
  if (!(cfg.T1_min > 0.0) || !(cfg.T2_min > 0.0))
    throw std::invalid_argument("duration ranges must be positive");
  if (cfg.T1_max < cfg.T1_min || cfg.T2_max < cfg.T2_min)
    throw std::invalid_argument("duration range is empty");
  if (cfg.T1_steps < 1 || cfg.T2_steps < 1)
    throw std::invalid_argument("range steps must be >= 1");

  const auto cells =
      phase_diagram(linspace(cfg.T1_min, cfg.T1_max, cfg.T1_steps),
                    linspace(cfg.T2_min, cfg.T2_max, cfg.T2_steps),
                    {cfg.t1, cfg.t2, cfg.t3_a, cfg.phi_a},
                    {cfg.t1, cfg.t2, cfg.t3_b, cfg.phi_b}, cfg.grid_n,
                    cfg.refine_cap, band_of(cfg), cfg.degeneracy_tol,
                    cfg.threads);

  int resolved = 0;
  for (const auto& cell : cells) resolved += cell.chern.has_value();
  std::printf("%d/%zu cells resolved\n", resolved, cells.size());

  if (!cfg.out.empty()) {
    TableWriter w;
    echo_config(w, "phase-diagram", cfg);
    w.header("T1_range", format_num(cfg.T1_min) + ".." + format_num(cfg.T1_max) +
                             " x" + std::to_string(cfg.T1_steps));
    w.header("T2_range", format_num(cfg.T2_min) + ".." + format_num(cfg.T2_max) +
                             " x" + std::to_string(cfg.T2_steps));
    w.columns({"T1", "T2", "chern", "min_gap_0", "min_gap_pi", "grid_used"});
    for (const auto& cell : cells) {
      w.begin_row();
      w.cell(cell.T1);
      w.cell(cell.T2);
      if (cell.chern)
        w.cell(static_cast<long>(*cell.chern));
      else
        w.cell("degenerate");
      w.cell(cell.min_gap_0);
      w.cell(cell.min_gap_pi);
      w.cell(static_cast<long>(cell.grid_used));
    }
    w.write_file(cfg.out);
  }
  return 0;
}

// ----------------------------------------------------------------- texture

void texture_row(TableWriter& w, const KPoint& k, const Vec3& s) {
  w.begin_row();
  w.cell(k.k1);
  w.cell(k.k2);
  w.cell(s.x);
  w.cell(s.y);
  w.cell(s.z);
  w.cell(angle_cell(s, SpinAxis::x, SpinAxis::z));
  w.cell(angle_cell(s, SpinAxis::z, SpinAxis::y));
  w.cell(angle_cell(s, SpinAxis::y, SpinAxis::x));
}

int cmd_texture(const RunConfig& cfg) {
  validate_common(cfg);
  const QuenchProtocol qp = protocol_of(cfg);
  if (cfg.out.empty()) throw std::invalid_argument("texture requires --out");

  TableWriter w;
  echo_config(w, "texture", cfg);
  w.header("mode", cfg.mode);

  if (cfg.mode == "static") {
    const SpinTextureGrid tex =
        band_texture(qp, band_of(cfg), cfg.texture_n, cfg.texture_n,
                     cfg.degeneracy_tol, cfg.threads);
    w.columns({"k1", "k2", "sx", "sy", "sz", "theta_xz", "theta_zy",
               "theta_yx"});
    std::vector<bool> degenerate(tex.values.size(), false);
    for (const auto& [d1, d2] : tex.degenerate_points)
      degenerate[tex.index(d1, d2)] = true;
    for (int i1 = 0; i1 < tex.n1; ++i1)
      for (int i2 = 0; i2 < tex.n2; ++i2) {
        const KPoint k = tex.kpoint(i1, i2);
        if (degenerate[tex.index(i1, i2)]) {
          w.begin_row();
          w.cell(k.k1);
          w.cell(k.k2);
          for (int c = 0; c < 6; ++c) w.cell("degenerate");
          continue;
        }
        texture_row(w, k, tex.at(i1, i2));
      }
  } else if (cfg.mode == "dynamic") {
    // stroboscopic average of |0> over the requested k-box
    if (!(cfg.k1_max > cfg.k1_min) || !(cfg.k2_max > cfg.k2_min))
      throw std::invalid_argument("texture box is empty");
    w.header("box", format_num(cfg.k1_min) + " " + format_num(cfg.k1_max) +
                        " " + format_num(cfg.k2_min) + " " +
                        format_num(cfg.k2_max));
    w.columns({"k1", "k2", "sx", "sy", "sz", "theta_xz", "theta_zy",
               "theta_yx", "N", "weight_gap"});
    const int n = cfg.texture_n;
    std::vector<StroboscopicRun> runs(static_cast<size_t>(n) * n);
    parallel_for(n, cfg.threads, [&](int i1) {
      for (int i2 = 0; i2 < n; ++i2) {
        const KPoint k{cfg.k1_min + (cfg.k1_max - cfg.k1_min) * i1 / (n - 1),
                       cfg.k2_min + (cfg.k2_max - cfg.k2_min) * i2 / (n - 1)};
        runs[i1 * n + i2] = stroboscopic_run(qp, k, QubitState{}, cfg.periods,
                                             cfg.degeneracy_tol);
      }
    });
    for (const auto& run : runs) {
      texture_row(w, run.k, run.averaged_spin);
      w.cell(static_cast<long>(run.periods));
      if (run.degenerate)
        w.cell("degenerate");
      else
        w.cell(run.weight_gap);
    }
  } else if (cfg.mode == "loop") {
    // winding-angle profile along a square loop: static theta and dynamic eta
    if (!(cfg.half_width > 0.0))
      throw std::invalid_argument("half_width must be > 0");
    if (cfg.samples_per_side < 2)
      throw std::invalid_argument("samples_per_side must be >= 2");
    w.header("center",
             format_num(cfg.center_k1) + " " + format_num(cfg.center_k2));
    w.header("half_width", cfg.half_width);
    w.columns({"idx", "k1", "k2", "theta", "eta"});
    // square boundary from the lower-left corner, plaquette orientation
    std::vector<KPoint> loop;
    const double hw = cfg.half_width;
    const int m = cfg.samples_per_side;
    for (int s = 0; s < m; ++s)
      loop.push_back(
          {cfg.center_k1 - hw + 2.0 * hw * s / m, cfg.center_k2 - hw});
    for (int s = 0; s < m; ++s)
      loop.push_back(
          {cfg.center_k1 + hw, cfg.center_k2 - hw + 2.0 * hw * s / m});
    for (int s = 0; s < m; ++s)
      loop.push_back(
          {cfg.center_k1 + hw - 2.0 * hw * s / m, cfg.center_k2 + hw});
    for (int s = 0; s < m; ++s)
      loop.push_back(
          {cfg.center_k1 - hw, cfg.center_k2 + hw - 2.0 * hw * s / m});

    const Band band = band_of(cfg);
    for (size_t i = 0; i < loop.size(); ++i) {
      const KPoint& k = loop[i];
      const SU2Op u = floquet_operator(qp, k);
      w.begin_row();
      w.cell(static_cast<long>(i));
      w.cell(k.k1);
      w.cell(k.k2);
      std::string theta = "degenerate";
      std::string eta = "singular";
      try {
        const EffectiveBloch d = effective_bloch(u, cfg.degeneracy_tol);
        const Vec3 s =
            static_cast<double>(band_sign(band)) * (d.d * (1.0 / norm(d.d)));
        theta = angle_cell(s, SpinAxis::x, SpinAxis::z);
      } catch (const DegeneratePoint&) {
      }
      try {
        eta = format_num(
            dwa(u, QubitState{}, cfg.periods, SpinAxis::x, SpinAxis::z).theta);
      } catch (const SingularPoint&) {
      }
      w.cell(theta);
      w.cell(eta);
    }
  } else {
    throw std::invalid_argument("mode must be static|dynamic|loop, got '" +
                                cfg.mode + "'");
  }
  w.write_file(cfg.out);
  std::printf("texture written to %s\n", cfg.out.c_str());
  return 0;
}

// ------------------------------------------------------------------- pulse

double resolve_rabi(const RunConfig& cfg, const QuenchProtocol& qp,
                    const KPoint& k) {
  if (cfg.rabi > 0.0) return cfg.rabi;
  if (cfg.rabi < 0.0) throw std::invalid_argument("rabi must be >= 0");
  // shortest drive compatible with the detuning cap
  if (!(cfg.detuning_cap > 0.0))
    throw std::invalid_argument("detuning_cap must be > 0");
  const auto [h1, h2] = stage_fields(qp, k);
  double rabi = cfg.detuning_cap;
  for (const Vec3& h : {h1, h2}) {
    const double rho = std::hypot(h.x, h.y);
    if (rho > 1e-12 && std::abs(h.z) > 1e-12)
      rabi = std::min(rabi, cfg.detuning_cap * rho / std::abs(h.z));
  }
  return std::max(rabi, 1e-3);
}

void write_segments(TableWriter& w, const std::vector<PulseSegment>& segs) {
  w.columns({"segment", "rabi", "phase", "detuning", "duration"});
  for (size_t i = 0; i < segs.size(); ++i) {
    w.begin_row();
    w.cell(static_cast<long>(i));
    w.cell(segs[i].rabi);
    w.cell(segs[i].phase);
    w.cell(segs[i].detuning);
    w.cell(segs[i].duration);
  }
}

double fidelity(const QubitState& a, const QubitState& b) {
  return std::norm(inner(a, b));
}

int cmd_pulse(const RunConfig& cfg) {
  validate_common(cfg);
  const QuenchProtocol qp = protocol_of(cfg);
  const KPoint k{cfg.k1, cfg.k2};

  TableWriter w;
  echo_config(w, "pulse", cfg);
  w.header("mode", cfg.mode);

  if (cfg.mode == "prep") {
    const SU2Op u = floquet_operator(qp, k);
    const EffectiveBloch d = effective_bloch(u, cfg.degeneracy_tol);
    const EffectiveBloch target{static_cast<double>(band_sign(band_of(cfg))) *
                                d.d};
    const double rabi = resolve_rabi(cfg, qp, k);
    const PulseSegment seg = prep_pulse(target, rabi);
    const std::vector<PulseSegment> segs{seg};
    const QubitState prepared =
        simulate_sequence(std::span<const PulseSegment>{segs}, QubitState{});
    const double fid = fidelity(prepared, eigenstates(target).first);
    std::printf("prep fidelity = %s\n", format_num(fid).c_str());
    w.header("k1", cfg.k1);
    w.header("k2", cfg.k2);
    w.header("rabi", rabi);
    w.header("fidelity", fid);
    write_segments(w, segs);
  } else if (cfg.mode == "drive") {
    if (cfg.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
    const double rabi = resolve_rabi(cfg, qp, k);
    const auto [seg1, seg2] = floquet_drive_pulses(qp, k, rabi);
    w.header("k1", cfg.k1);
    w.header("k2", cfg.k2);
    w.header("rabi", rabi);
    w.header("repeats", static_cast<long>(cfg.repeats));
    if (cfg.compare) {
      const std::vector<PulseSegment> segs{seg1, seg2};
      const QubitState driven = simulate_sequence(
          std::span<const PulseSegment>{segs}, QubitState{}, cfg.repeats);
      SU2Op un = su2_identity();
      const SU2Op u = floquet_operator(qp, k);
      for (int r = 0; r < cfg.repeats; ++r) un = compose(u, un);
      const double fid = fidelity(driven, apply(un, QubitState{}));
      std::printf("drive fidelity over %d periods = %s\n", cfg.repeats,
                  format_num(fid).c_str());
      w.header("fidelity", fid);
    }
    write_segments(w, {seg1, seg2});
  } else if (cfg.mode == "calibrate") {
    if (cfg.data.empty())
      throw std::invalid_argument("calibrate requires --data FILE");
    std::ifstream f(cfg.data);
    if (!f)
      throw std::invalid_argument("cannot open calibration data: " + cfg.data);
    std::vector<std::pair<double, double>> points;
    std::string line;
    while (std::getline(f, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      double a_col = 0.0, w_col = 0.0;
      if (std::sscanf(line.c_str(), "%lf %lf", &a_col, &w_col) != 2)
        throw std::invalid_argument(
            "calibration data: expected two columns: " + line);
      points.emplace_back(a_col, w_col);
    }
    const RabiCalibration cal = rabi_fit(points);
    std::printf("a = %s\nb = %s\nc = %s\nresidual_norm = %s\n",
                format_num(cal.a).c_str(), format_num(cal.b).c_str(),
                format_num(cal.c).c_str(),
                format_num(cal.residual_norm).c_str());
    w.header("data", cfg.data);
    w.header("fit_a", cal.a);
    w.header("fit_b", cal.b);
    w.header("fit_c", cal.c);
    w.header("residual_norm", cal.residual_norm);
    w.columns({"amplitude", "measured", "fitted"});
    for (const auto& [A, wr] : points) {
      w.begin_row();
      w.cell(A);
      w.cell(wr);
      w.cell(rabi_frequency(cal, A));
    }
  } else {
    throw std::invalid_argument("mode must be prep|drive|calibrate, got '" +
                                cfg.mode + "'");
  }

  if (!cfg.out.empty()) w.write_file(cfg.out);
  return 0;
}

// -------------------------------------------------------------------- main

void add_model_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--config", "flat key=value run configuration file")
      ->expected(1);
  cmd->add_option("--t1", cfg.t1, "first-neighbor hopping");
  cmd->add_option("--t2", cfg.t2, "second-neighbor hopping");
  cmd->add_option("--t3_a", cfg.t3_a, "stage-1 third-neighbor hopping");
  cmd->add_option("--phi_a", cfg.phi_a, "stage-1 second-neighbor phase");
  cmd->add_option("--t3_b", cfg.t3_b, "stage-2 third-neighbor hopping");
  cmd->add_option("--phi_b", cfg.phi_b, "stage-2 second-neighbor phase");
  cmd->add_option("--T1", cfg.T1, "stage-1 duration");
  cmd->add_option("--T2", cfg.T2, "stage-2 duration");
  cmd->add_option("--grid_n", cfg.grid_n, "k-grid size for invariants");
  cmd->add_option("--texture_n", cfg.texture_n, "texture grid size");
  cmd->add_option("--band", cfg.band, "plus|minus");
  cmd->add_option("--axis", cfg.axis, "weight axis of the cyclic axis triple");
  cmd->add_option("--periods", cfg.periods, "stroboscopic periods N");
  cmd->add_option("--seed", cfg.seed, "rng seed for shot sampling");
  cmd->add_option("--threads", cfg.threads, "worker pool size (0 = auto)");
  cmd->add_option("--out", cfg.out, "output file path");
  cmd->add_option("--degeneracy_tol", cfg.degeneracy_tol,
                  "|sin E| gap-closure tolerance");
  cmd->add_option("--weight_threshold", cfg.weight_threshold,
                  "minimum usable |weight gap|");
  cmd->add_option("--refine_cap", cfg.refine_cap,
                  "maximum k-grid during refinement");
}

int dispatch(const std::string& name, const RunConfig& cfg) {
  if (name == "spectrum") return cmd_spectrum(cfg);
  if (name == "chern") return cmd_chern(cfg);
  if (name == "phase-diagram") return cmd_phase_diagram(cfg);
  if (name == "texture") return cmd_texture(cfg);
  return cmd_pulse(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Floquet band topology of a periodically quenched generalized Haldane "
      "model"};
  app.require_subcommand(1);
  RunConfig cfg;

  CLI::App* spectrum =
      app.add_subcommand("spectrum", "quasienergy bands and gap summary");
  add_model_options(spectrum, cfg);

  CLI::App* chern = app.add_subcommand(
      "chern", "Chern number by lattice, static or dynamic winding method");
  add_model_options(chern, cfg);
  chern->add_option("--method", cfg.method, "lattice|swa|dwa");

  CLI::App* diagram =
      app.add_subcommand("phase-diagram", "Chern numbers over a (T1, T2) sweep");
  add_model_options(diagram, cfg);
  diagram->add_option("--T1_min", cfg.T1_min, "sweep start");
  diagram->add_option("--T1_max", cfg.T1_max, "sweep end");
  diagram->add_option("--T1_steps", cfg.T1_steps, "sweep cells");
  diagram->add_option("--T2_min", cfg.T2_min, "sweep start");
  diagram->add_option("--T2_max", cfg.T2_max, "sweep end");
  diagram->add_option("--T2_steps", cfg.T2_steps, "sweep cells");

  CLI::App* texture = app.add_subcommand(
      "texture", "spin texture grids, dynamic averages, loop profiles");
  add_model_options(texture, cfg);
  texture->add_option("--mode", cfg.mode, "static|dynamic|loop");
  texture->add_option("--k1_min", cfg.k1_min, "dynamic box bound");
  texture->add_option("--k1_max", cfg.k1_max, "dynamic box bound");
  texture->add_option("--k2_min", cfg.k2_min, "dynamic box bound");
  texture->add_option("--k2_max", cfg.k2_max, "dynamic box bound");
  texture->add_option("--center_k1", cfg.center_k1, "loop center");
  texture->add_option("--center_k2", cfg.center_k2, "loop center");
  texture->add_option("--half_width", cfg.half_width, "loop half width");
  texture->add_option("--samples_per_side", cfg.samples_per_side,
                      "loop samples per side");

  CLI::App* pulse = app.add_subcommand(
      "pulse", "preparation/drive pulse synthesis and Rabi calibration");
  add_model_options(pulse, cfg);
  pulse->add_option("--mode", cfg.mode, "prep|drive|calibrate");
  pulse->add_option("--k1", cfg.k1, "quasimomentum");
  pulse->add_option("--k2", cfg.k2, "quasimomentum");
  pulse->add_option("--rabi", cfg.rabi, "Rabi frequency (0 = auto)");
  pulse->add_option("--detuning_cap", cfg.detuning_cap,
                    "detuning bound for the auto Rabi rule");
  pulse->add_option("--repeats", cfg.repeats, "driving periods");
  pulse->add_flag("--compare", cfg.compare,
                  "compare driven state against the target evolution");
  pulse->add_option("--data", cfg.data, "two-column calibration data file");

  // flat key=value config: inject file entries as options ahead of the
  // user's explicit flags so the command line keeps the last word
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    for (size_t i = 1; i < args.size(); ++i) {
      std::string path;
      if (args[i] == "--config" && i + 1 < args.size())
        path = args[i + 1];
      else if (args[i].rfind("--config=", 0) == 0)
        path = args[i].substr(9);
      if (path.empty()) continue;
      std::vector<std::string> injected;
      for (const auto& [key, value] : read_kv_config(path))
        injected.push_back("--" + key + "=" + value);
      // place injected options right after the subcommand name
      args.insert(args.begin() + 1, injected.begin(), injected.end());
      break;
    }

    std::vector<const char*> cargs{argv[0]};
    for (const auto& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), const_cast<char**>(cargs.data()));

    for (CLI::App* sub : {spectrum, chern, diagram, texture, pulse})
      if (sub->parsed()) return dispatch(sub->get_name(), cfg);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
