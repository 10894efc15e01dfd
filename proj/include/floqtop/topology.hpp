#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "floqtop/floquet.hpp"

namespace floqtop {

/// Uniform torus grid k_i = (-pi + 2 pi i1/n, -pi + 2 pi i2/n) of the
/// effective-field data: E+ and the unit vector d^ per point, plus the
/// minimum distances of E+ to the gap positions 0 and pi.
struct EffectiveFieldGrid {
  int n = 0;
  std::vector<double> e_plus;                       // n*n, row-major (i1*n+i2)
  std::vector<Vec3> d_hat;                          // unit where non-degenerate
  std::vector<std::pair<int, int>> degenerate;      // flagged grid indices
  double min_gap_0 = 0.0;
  double min_gap_pi = 0.0;

  int index(int i1, int i2) const { return i1 * n + i2; }
  KPoint kpoint(int i1, int i2) const;
};

EffectiveFieldGrid effective_field_grid(const QuenchProtocol& qp, int n,
                                        double tol = kDegeneracyTol,
                                        int threads = 1);

/// Quasienergy bands E+-(k) on the torus grid with gap summaries.
struct SpectrumGrid {
  int n = 0;
  std::vector<double> e_plus;
  double min_gap_0 = 0.0;
  double min_gap_pi = 0.0;
};

SpectrumGrid band_spectrum(const QuenchProtocol& qp, int grid_n,
                           int threads = 1);

/// Per-k spin expectation triples of one filled Floquet band.
struct SpinTextureGrid {
  int n1 = 0;
  int n2 = 0;
  std::vector<Vec3> values;                      // row-major (i1*n2+i2)
  Band band = Band::plus;
  std::vector<std::pair<int, int>> degenerate_points;

  int index(int i1, int i2) const { return i1 * n2 + i2; }
  const Vec3& at(int i1, int i2) const { return values[index(i1, i2)]; }
  KPoint kpoint(int i1, int i2) const;
};

SpinTextureGrid band_texture(const QuenchProtocol& qp, Band band, int n1,
                             int n2, double tol = kDegeneracyTol,
                             int threads = 1);

/// Gauge-invariant plaquette link sum over an n x n grid of states; the
/// result is the (un-rounded) Chern number of the band the states span.
double lattice_chern_sum(int n, const std::vector<QubitState>& states);

/// Round a plaquette sum to the integer Chern number; throws NonQuantized
/// when the residual exceeds the tolerance.
int quantize_chern(double raw, double residual_tol = 1e-3);

/// Integer Chern number of the chosen Floquet band by the plaquette
/// link-variable method. Throws DegenerateGrid on gap closure and
/// NonQuantized on under-resolution.
int chern_lattice(const QuenchProtocol& qp, Band band, int grid_n,
                  double tol = kDegeneracyTol, int threads = 1);

/// (1/4pi) sum d^ . (d1 d^ x d2 d^) dk^2 over a periodic n x n grid of unit
/// vectors, with fourth-order central differences.
double curvature_integral(int n, const std::vector<Vec3>& d_hat);

/// Direct finite-difference curvature integral for the chosen band, the
/// cross-validation partner of chern_lattice. The unit-d^ integral equals
/// the minus band's Chern number; Band::plus carries the opposite sign.
double chern_curvature(const QuenchProtocol& qp, Band band, int grid_n,
                       double tol = kDegeneracyTol, int threads = 1);

/// Winding angle of a spin texture triple for component pair (j, l):
/// theta = arctan(s_j / s_l) on the principal branch (-pi/2, pi/2], and the
/// full planar angle of the vector (s_l, s_j) in (-pi, pi]. The full angle
/// is the one used for winding numbers: the arctan form jumps by pi at zeros
/// of s_l, which makes unwrapping ambiguous.
struct WindingAngles {
  double theta = 0.0;
  double full = 0.0;
};

WindingAngles swa(const Vec3& s, SpinAxis j, SpinAxis l,
                  double tol = 1e-8);

/// Axis permutation (i; j, l): the winding angle is built from (s_j, s_l)
/// and each singularity is weighted by sgn(s_i).
struct AxisTriple {
  SpinAxis i = SpinAxis::z;
  SpinAxis j = SpinAxis::x;
  SpinAxis l = SpinAxis::y;
};

/// The cyclic permutation with the given weight axis.
AxisTriple cyclic_axis_triple(SpinAxis i);

/// A phase singularity of the winding angle: both texture components vanish
/// and the full angle winds by an integer around it.
struct SingularityRecord {
  KPoint k0{};           // subpixel estimate by bilinear zero crossing
  int winding = 0;       // nonzero integer
  int weight_sign = 0;   // sign of s_i at k0
  AxisTriple axis{};
};

struct SingularityOptions {
  double component_tol = 1e-8;   // both components below this => singular node
  double winding_residual = 1e-3;
  double min_separation_cells = 2.0;  // opposite-winding pair guard
  /// Optional per-grid-point validity mask (size n1*n2). Plaquettes touching
  /// an excluded point are not scanned; used by the dynamic pipeline to skip
  /// low-weight-gap regions.
  const std::vector<bool>* mask = nullptr;
  int* skipped_windings = nullptr;  // optional count of masked-out windings
};

/// Locate all phase singularities of the (s_l, s_j) planar field by plaquette
/// winding of the full angle. Plaquettes are traversed in the right-handed
/// (k1, k2) orientation, the same orientation loop_winding uses. Throws
/// UnresolvedSingularity when a texture zero sits on a grid node or when
/// opposite-winding singularities are closer than two grid cells.
std::vector<SingularityRecord> find_singularities(
    const SpinTextureGrid& grid, const AxisTriple& axis,
    const SingularityOptions& opts = {});

/// Texture sampler for loop evaluation; bilinear interpolation on the torus.
std::function<Vec3(const KPoint&)> texture_sampler(const SpinTextureGrid& g);

/// Winding of the full angle along a circular loop of the given radius
/// around k0, unwrapped sample to sample with jump threshold pi. The loop is
/// traversed in the plaquette orientation. Throws AmbiguousUnwrap when
/// consecutive unwrapped samples differ by more than pi/2.
int loop_winding(const std::function<Vec3(const KPoint&)>& texture,
                 const KPoint& k0, double radius, int samples,
                 const AxisTriple& axis, double component_tol = 1e-8);

/// C = (1/2) sum sgn(s_i) w(k0); the sum is checked to be even (OddSum
/// indicates missed singularities or wrong weights).
int chern_from_singularities(const std::vector<SingularityRecord>& records);

/// Band-touching analysis at one k: the two quasienergy bands touch when
/// the stage fields are collinear and |h1| T1 +- |h2| T2 = n pi with the
/// sign matched to the collinearity sign.
struct BandTouchingReport {
  int parallel = 0;              // +1, -1 collinearity sign; 0 when not collinear
  double phase_sum_mod_pi = 0.0; // residual of the matched phase sum mod pi
  bool touches = false;
  long n = 0;
};

BandTouchingReport band_touching_check(const QuenchProtocol& qp,
                                       const KPoint& k, double tol = 1e-6);

/// One cell of the (T1, T2) phase diagram. chern is present only when both
/// minimum gaps stayed open at every refinement the cell attempted.
struct PhaseDiagramCell {
  double T1 = 0.0;
  double T2 = 0.0;
  std::optional<int> chern;
  double min_gap_0 = 0.0;
  double min_gap_pi = 0.0;
  int grid_used = 0;
};

/// chern_lattice per cell with adaptive grid refinement: the grid doubles on
/// DegenerateGrid or NonQuantized up to the cap, after which the cell is
/// marked degenerate. Cells are independent work units; results go into
/// preallocated slots, so parallel execution is deterministic.
std::vector<PhaseDiagramCell> phase_diagram(
    const std::vector<double>& T1_values, const std::vector<double>& T2_values,
    const HamiltonianParams& stage1, const HamiltonianParams& stage2,
    int grid_n_k, int grid_cap, Band band = Band::plus,
    double tol = kDegeneracyTol, int threads = 1);

}  // namespace floqtop
