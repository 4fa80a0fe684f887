#pragma once

// Zero location and zero-free certification for Zak transforms of TP
// windows, plus the sign-change and unit-monotonicity tools behind them.
//
// TP windows are handled through their EB-spline factor B_{-a}: the
// prefactor of the factorization has neither zeros nor poles inside the
// strip |tau| < a0 / (2 pi), so Z g and Z B_{-a} vanish at the same points.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zaktp/ebspline.hpp"
#include "zaktp/weights.hpp"
#include "zaktp/zak.hpp"

namespace zaktp {

/// Z B(., s) restricted to [0, periods), one piece per unit interval.
ComplexPiecewiseExpPoly zak_slice(const PiecewiseExpPoly& spline, ComplexFrequency s, int periods);

/// Z B(., 1/2) on [0, periods); real valued, piece p = (-1)^p piece 0.
PiecewiseExpPoly zak_half_slice(const PiecewiseExpPoly& spline, int periods);

/// x in [0,1) with Z(x, 1/2) = 0, bracketed by sign changes and refined by
/// bisection to width `tol`.
///
/// Throws NoZero when Z(., 1/2) keeps its sign on [0,1) (n = 1), and
/// MultipleZeros when more than one bracket survives or the zero is not
/// isolated (flat over more than 100 tol).
double locate_zero_half(const PiecewiseExpPoly& spline, double tol = 1e-12);
double locate_zero_half(const WeightMultiset& weights, double tol = 1e-12);

/// Closed box in (x, w, tau). A degenerate axis (lo == hi) is a slice.
struct Region {
  double x_lo = 0.0;
  double x_hi = 1.0;
  double omega_lo = 0.0;
  double omega_hi = 1.0;
  double tau_lo = 0.0;
  double tau_hi = 0.0;

  bool operator==(const Region&) const = default;
};

enum class Verdict { zero_free_certified, zero_found, inconclusive };

const char* verdict_name(Verdict verdict) noexcept;
Verdict verdict_from_name(const std::string& name);

struct GridPoint {
  double x = 0.0;
  double omega = 0.0;
  double tau = 0.0;

  bool operator==(const GridPoint&) const = default;
};

struct ZeroCertificate {
  Region region;
  double grid_step = 0.0;           // requested step
  std::array<int, 3> grid_points{};  // samples along x, w, tau
  double cover_radius = 0.0;        // max distance from a region point to the grid
  double min_modulus = 0.0;
  double lipschitz_bound = 0.0;     // largest local bound used
  double certified_margin = 0.0;    // min of |Z(c)| - L * radius over accepted cells; < 0 if one failed
  long refined_boxes = 0;           // sub-boxes checked after the base grid
  GridPoint min_location;
  Verdict verdict = Verdict::inconclusive;
  std::optional<GridPoint> zero_location;

  bool operator==(const ZeroCertificate&) const = default;
};

/// Scans |Z B| on a grid with spacing <= grid_step and certifies the region
/// zero free when |Z B(p)| > L(p) * cover_radius at every grid point p, L(p)
/// a Lipschitz majorant of Z B on the ball of radius cover_radius around p,
/// built from sup bounds of B and B' on that x window. Cells failing the test
/// are bisected along each active axis, at most 10 times, and the same test
/// is applied to every part. Region x must lie in
/// [0,1]. A grid value below 1e-12 of the grid maximum is reported as
/// zero_found.
ZeroCertificate certify_zero_free(const PiecewiseExpPoly& spline, const Region& region, double grid_step);

/// TP overload; throws StripViolation when the region leaves the strip.
ZeroCertificate certify_zero_free(const WeightMultiset& weights, const Region& region, double grid_step);

/// S^- of a sequence: strict sign alternations, zeros skipped.
int strong_sign_changes(std::span<const double> samples);

/// Offset x0 in [0,2) (preferring [0,1)) such that the samples are monotone
/// on [x0, x0 + 1) and [x0 + 1, x0 + 2), cyclically. `samples` are uniform
/// over one period [0,2); their count must be even and >= 64. x0 is taken
/// among the sample extrema. Throws NotUnitMonotone.
double unit_monotone_offset(std::span<const double> samples);

struct ReducedSliceReport {
  double eta = 0.0;
  double slice_offset = 0.0;    // x0 for Z B(., 1/2)
  double reduced_offset = 0.0;  // y0 for D_eta Z B(., 1/2)
};

/// Monotonicity offsets of Z B(., 1/2) and of D_eta Z B(., 1/2), eta the
/// cluster `eta_index` of lambda.
ReducedSliceReport reduced_slice_monotonicity(const WeightVector& lambda, int eta_index,
                                              int samples_per_unit = 1024);
/// TP overload, lambda = -a.
ReducedSliceReport reduced_slice_monotonicity(const WeightMultiset& weights, int eta_index,
                                              int samples_per_unit = 1024);

/// D_1^{mu_1 - 1} D_2^{mu_2} ... D_r^{mu_r}: maps a combination of
/// q_j(x) e^{eta_j x}, deg q_j < mu_j, to a multiple of e^{eta_1 x}.
template <class T>
BasicPiecewiseExpPoly<T> exponential_reduction(const BasicPiecewiseExpPoly<T>& f,
                                               const std::vector<Cluster>& clusters) {
  BasicPiecewiseExpPoly<T> out = f;
  for (std::size_t j = 0; j < clusters.size(); ++j) {
    const int times = (j == 0) ? clusters[j].multiplicity - 1 : clusters[j].multiplicity;
    for (int t = 0; t < times; ++t) out = reduce(out, clusters[j].value);
  }
  return out;
}

/// S^- of Re(D Z B(., w)) sampled at interior points of [0, periods), D the
/// full reduction above.
int reduced_slice_sign_changes(const WeightVector& lambda, double omega, int periods,
                               int samples_per_unit = 64);

}  // namespace zaktp
