#include "zaktp/analysis.hpp"

#include <algorithm>
#include <array>
#include <complex>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "zaktp/errors.hpp"
#include "zaktp/parallel.hpp"

namespace zaktp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Sum of piece k of `spline` times coefficient[k], all pieces collapsed
// onto the unit interval.
template <class T>
ExpPolyPiece<T> collapse(const PiecewiseExpPoly& spline, const std::vector<T>& coefficient) {
  ExpPolyPiece<T> out;
  for (int k = 0; k < spline.size(); ++k) {
    for (const auto& term : spline.piece(k)) {
      std::vector<T> poly(term.poly.begin(), term.poly.end());
      detail::accumulate<T>(out, term.eta, poly, coefficient[k]);
    }
  }
  return out;
}

template <class T>
ExpPolyPiece<T> scaled_piece(const ExpPolyPiece<T>& piece, T factor) {
  ExpPolyPiece<T> out = piece;
  for (auto& t : out)
    for (auto& c : t.poly) c *= factor;
  return out;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

ComplexPiecewiseExpPoly zak_slice(const PiecewiseExpPoly& spline, ComplexFrequency s, int periods) {
  if (periods < 1) throw Error(ErrorKind::InvalidArgument, "slice needs at least one period");
  const std::complex<double> phase = std::complex<double>(0.0, -kTwoPi) * s.s();
  std::vector<std::complex<double>> coefficient;
  for (int k = 0; k < spline.size(); ++k) coefficient.push_back(std::exp(phase * static_cast<double>(k)));
  const auto base = collapse(spline, coefficient);
  std::vector<ExpPolyPiece<std::complex<double>>> pieces;
  for (int p = 0; p < periods; ++p)
    pieces.push_back(scaled_piece(base, std::exp(-phase * static_cast<double>(p))));
  return ComplexPiecewiseExpPoly(std::move(pieces));
}

PiecewiseExpPoly zak_half_slice(const PiecewiseExpPoly& spline, int periods) {
  if (periods < 1) throw Error(ErrorKind::InvalidArgument, "slice needs at least one period");
  std::vector<double> coefficient;
  for (int k = 0; k < spline.size(); ++k) coefficient.push_back(k % 2 == 0 ? 1.0 : -1.0);
  const auto base = collapse(spline, coefficient);
  std::vector<ExpPolyPiece<double>> pieces;
  for (int p = 0; p < periods; ++p) pieces.push_back(scaled_piece(base, p % 2 == 0 ? 1.0 : -1.0));
  return PiecewiseExpPoly(std::move(pieces));
}

double locate_zero_half(const PiecewiseExpPoly& spline, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  const PiecewiseExpPoly slice = zak_half_slice(spline, 1);
  const auto f = [&](double u) { return slice.local(0, u); };

  constexpr int kSamples = 4096;
  std::vector<double> values(kSamples + 1);
  double scale = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    values[i] = f(static_cast<double>(i) / kSamples);
    scale = std::max(scale, std::abs(values[i]));
  }

  // Roots on the sample grid plus strict sign-change brackets. u = 1 is
  // u = 0 of the next cell, so an exact zero there is not counted twice.
  std::vector<std::pair<double, double>> brackets;
  for (int i = 0; i < kSamples; ++i) {
    const double u = static_cast<double>(i) / kSamples;
    if (values[i] == 0.0) {
      brackets.emplace_back(u, u);
    } else if (values[i + 1] != 0.0 && values[i] * values[i + 1] < 0.0) {
      brackets.emplace_back(u, static_cast<double>(i + 1) / kSamples);
    }
  }
  if (values[kSamples] == 0.0 && values[0] != 0.0) brackets.emplace_back(1.0, 1.0);

  if (brackets.empty()) throw Error(ErrorKind::NoZero, "Z(., 1/2) has no sign change on [0,1)");
  if (brackets.size() > 1)
    throw Error(ErrorKind::MultipleZeros,
                std::to_string(brackets.size()) + " zero brackets of Z(., 1/2) on [0,1)");

  auto [lo, hi] = brackets.front();
  double f_lo = f(lo);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if (sign_of(f_mid) == sign_of(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  double root = 0.5 * (lo + hi);

  // Isolation: Z(., 1/2) must change sign across [root - w, root + w] with
  // w = 100 tol, unless both probes sit in rounding noise, in which case w
  // widens until they are resolved.
  const double noise = 1e-13 * scale;
  for (double w = 100.0 * tol;; w *= 10.0) {
    const double left = slice(root - w < 0.0 ? 0.0 : root - w);
    const double right = f(std::min(root + w, 1.0));
    const bool resolved = std::abs(left) > noise && std::abs(right) > noise;
    if (resolved) {
      if (sign_of(left) == sign_of(right))
        throw Error(ErrorKind::MultipleZeros, "zero of Z(., 1/2) is not isolated");
      break;
    }
    if (w > 1e-4) throw Error(ErrorKind::MultipleZeros, "Z(., 1/2) vanishes on an interval");
  }
  if (root >= 1.0) root -= 1.0;
  return root;
}

double locate_zero_half(const WeightMultiset& weights, double tol) {
  return locate_zero_half(build_ebspline(tp_spline_weights(weights)), tol);
}

const char* verdict_name(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::zero_free_certified: return "zero_free_certified";
    case Verdict::zero_found: return "zero_found";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict verdict_from_name(const std::string& name) {
  if (name == "zero_free_certified") return Verdict::zero_free_certified;
  if (name == "zero_found") return Verdict::zero_found;
  if (name == "inconclusive") return Verdict::inconclusive;
  throw Error(ErrorKind::InvalidArgument, "unknown verdict '" + name + "'");
}

namespace {

constexpr int kMaxRefineDepth = 10;

// Axis-aligned box in (x, w, tau); lo == hi on inactive axes.
struct Box {
  std::array<double, 3> lo;
  std::array<double, 3> hi;
};

// Z B and a Lipschitz majorant of Z B over a box, from the pieces of B, B'.
class LocalZak {
 public:
  LocalZak(const PiecewiseExpPoly& spline, std::array<bool, 3> active)
      : spline_(spline), d1_(spline.derivative()), active_(active) {
    const PiecewiseExpPoly d2 = d1_.derivative();
    for (int k = 0; k < spline.size(); ++k) {
      m1_.push_back(d1_.magnitude_bound(k));
      m2_.push_back(d2.magnitude_bound(k));
    }
  }

  std::complex<double> value(double x, double omega, double tau) const {
    const std::complex<double> phase = std::complex<double>(0.0, -kTwoPi) * std::complex<double>(omega, tau);
    std::complex<double> z(0.0, 0.0);
    for (int k = 0; k < spline_.size(); ++k) z += spline_.local(k, x) * std::exp(phase * static_cast<double>(k));
    return z;
  }

  // Bound on |grad Z B| over points within half width hx of x and tau <= tau_top.
  double lipschitz(double x, double hx, double tau_top) const {
    double lx = 0.0;
    double lw = 0.0;
    for (int k = 0; k < spline_.size(); ++k) {
      const double growth = std::exp(kTwoPi * k * tau_top);
      lx += (std::abs(d1_.local(k, x)) + hx * m2_[k]) * growth;
      lw += kTwoPi * k * (std::abs(spline_.local(k, x)) + hx * m1_[k]) * growth;
    }
    return std::sqrt((active_[0] ? lx * lx : 0.0) + (active_[1] ? lw * lw : 0.0) + (active_[2] ? lw * lw : 0.0));
  }

  std::array<bool, 3> active() const { return active_; }

 private:
  const PiecewiseExpPoly& spline_;
  PiecewiseExpPoly d1_;
  std::array<bool, 3> active_;
  std::vector<double> m1_, m2_;
};

enum class BoxResult { certified, failed, zero };

// Splits the box in halves along active axes until every part satisfies
// |Z(c)| > L * radius at its centre c, or the depth cap is hit.
BoxResult refine(const LocalZak& zak, const Box& box, int depth, double zero_level, double& margin, long& boxes,
                 GridPoint& where) {
  const auto active = zak.active();
  for (int corner = 0; corner < 8; ++corner) {
    Box part = box;
    bool skip = false;
    for (int a = 0; a < 3; ++a) {
      const bool upper = corner >> a & 1;
      if (!active[a]) {
        skip = skip || upper;
        continue;
      }
      const double mid = 0.5 * (box.lo[a] + box.hi[a]);
      (upper ? part.lo[a] : part.hi[a]) = mid;
    }
    if (skip) continue;
    ++boxes;
    double radius2 = 0.0;
    std::array<double, 3> c;
    for (int a = 0; a < 3; ++a) {
      c[a] = 0.5 * (part.lo[a] + part.hi[a]);
      radius2 += 0.25 * (part.hi[a] - part.lo[a]) * (part.hi[a] - part.lo[a]);
    }
    const double mod = std::abs(zak.value(c[0], c[1], c[2]));
    const double bound = zak.lipschitz(c[0], 0.5 * (part.hi[0] - part.lo[0]), part.hi[2]) * std::sqrt(radius2);
    if (mod <= zero_level) {
      where = {c[0], c[1], c[2]};
      return BoxResult::zero;
    }
    if (mod > bound) {
      margin = std::min(margin, mod - bound);
      continue;
    }
    if (depth >= kMaxRefineDepth) {
      where = {c[0], c[1], c[2]};
      return BoxResult::failed;
    }
    const auto r = refine(zak, part, depth + 1, zero_level, margin, boxes, where);
    if (r != BoxResult::certified) return r;
  }
  return BoxResult::certified;
}

}  // namespace

ZeroCertificate certify_zero_free(const PiecewiseExpPoly& spline, const Region& region, double grid_step) {
  if (!(grid_step > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid step must be positive");
  if (!(region.x_lo >= 0.0 && region.x_hi <= 1.0 && region.x_lo <= region.x_hi))
    throw Error(ErrorKind::InvalidArgument, "certification region must have 0 <= x_lo <= x_hi <= 1");
  if (!(region.omega_lo <= region.omega_hi && region.tau_lo <= region.tau_hi))
    throw Error(ErrorKind::InvalidArgument, "certification region bounds are reversed");

  ZeroCertificate cert;
  cert.region = region;
  cert.grid_step = grid_step;

  // Axis samples; each axis is split into equal intervals no wider than the step.
  int dims = 0;
  double step = 0.0;
  std::array<double, 3> spacing{0.0, 0.0, 0.0};
  auto axis = [&](double lo, double hi, int slot) {
    std::vector<double> pts;
    const double extent = hi - lo;
    if (extent <= 0.0) {
      pts.push_back(lo);
    } else {
      const int intervals = std::max(1, static_cast<int>(std::ceil(extent / grid_step - 1e-9)));
      for (int i = 0; i <= intervals; ++i) pts.push_back(lo + extent * i / intervals);
      ++dims;
      spacing[slot] = extent / intervals;
      step = std::max(step, spacing[slot]);
    }
    cert.grid_points[slot] = static_cast<int>(pts.size());
    return pts;
  };
  const auto xs = axis(region.x_lo, region.x_hi, 0);
  const auto omegas = axis(region.omega_lo, region.omega_hi, 1);
  const auto taus = axis(region.tau_lo, region.tau_hi, 2);
  cert.cover_radius = step * std::sqrt(static_cast<double>(dims)) / 2.0;

  const double r = cert.cover_radius;
  const std::array<bool, 3> active{region.x_hi > region.x_lo, region.omega_hi > region.omega_lo,
                                   region.tau_hi > region.tau_lo};
  const LocalZak local(spline, active);

  // Per x sample: values of each piece, and sup bounds of |B| and |B'| over
  // the x window of half width r around the sample.
  const int m = spline.size();
  const PiecewiseExpPoly d1 = spline.derivative();
  const PiecewiseExpPoly d2 = d1.derivative();
  std::vector<double> table(xs.size() * m), sup0(xs.size() * m), sup1(xs.size() * m);
  for (int k = 0; k < m; ++k) {
    const double m1 = d1.magnitude_bound(k);
    const double m2 = d2.magnitude_bound(k);
    const double half = active[0] ? r : 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      // Piece k on its closed interval, so x = 1 uses the left limit.
      table[i * m + k] = spline.local(k, xs[i]);
      sup0[i * m + k] = std::abs(table[i * m + k]) + half * m1;
      sup1[i * m + k] = std::abs(d1.local(k, xs[i])) + half * m2;
    }
  }

  // |d/dx Z B| <= sum_k sup|B'| e^{2 pi k tau},
  // |d/dw Z B| = |d/dtau Z B| <= 2 pi sum_k k sup|B| e^{2 pi k tau},
  // each over the ball of radius r around the grid point.
  struct Pending {
    std::size_t i;
    double omega;
    double tau;
  };
  struct RowResult {
    double min = std::numeric_limits<double>::infinity();
    double max = 0.0;
    double margin = std::numeric_limits<double>::infinity();
    double lipschitz = 0.0;
    GridPoint at;
    std::vector<Pending> pending;
  };
  const std::size_t rows = omegas.size() * taus.size();
  std::vector<RowResult> results(rows);
  parallel_for(rows, [&](std::size_t row) {
    const double omega = omegas[row % omegas.size()];
    const double tau = taus[row / omegas.size()];
    const std::complex<double> phase = std::complex<double>(0.0, -kTwoPi) * std::complex<double>(omega, tau);
    const double tau_top = active[2] ? std::min(tau + r, region.tau_hi) : tau;
    std::vector<std::complex<double>> factor(m);
    std::vector<double> growth(m);
    for (int k = 0; k < m; ++k) {
      factor[k] = std::exp(phase * static_cast<double>(k));
      growth[k] = std::exp(kTwoPi * k * tau_top);
    }
    RowResult& out = results[row];
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::complex<double> z(0.0, 0.0);
      double lx = 0.0;
      double lw = 0.0;
      for (int k = 0; k < m; ++k) {
        z += table[i * m + k] * factor[k];
        lx += sup1[i * m + k] * growth[k];
        lw += kTwoPi * k * sup0[i * m + k] * growth[k];
      }
      const double lip = std::sqrt((active[0] ? lx * lx : 0.0) + (active[1] ? lw * lw : 0.0) +
                                   (active[2] ? lw * lw : 0.0));
      const double mod = std::abs(z);
      out.max = std::max(out.max, mod);
      out.lipschitz = std::max(out.lipschitz, lip);
      if (mod > lip * r) {
        out.margin = std::min(out.margin, mod - lip * r);
      } else {
        out.pending.push_back({i, omega, tau});
      }
      if (mod < out.min) {
        out.min = mod;
        out.at = {xs[i], omega, tau};
      }
    }
  });

  double max_modulus = 0.0;
  cert.min_modulus = std::numeric_limits<double>::infinity();
  cert.certified_margin = std::numeric_limits<double>::infinity();
  std::vector<Pending> pending;
  for (const auto& res : results) {
    max_modulus = std::max(max_modulus, res.max);
    cert.lipschitz_bound = std::max(cert.lipschitz_bound, res.lipschitz);
    cert.certified_margin = std::min(cert.certified_margin, res.margin);
    pending.insert(pending.end(), res.pending.begin(), res.pending.end());
    if (res.min < cert.min_modulus) {
      cert.min_modulus = res.min;
      cert.min_location = res.at;
    }
  }

  const double zero_level = 1e-12 * max_modulus;
  if (cert.min_modulus <= zero_level) {
    cert.verdict = Verdict::zero_found;
    cert.zero_location = cert.min_location;
    return cert;
  }

  // Cells whose grid point misses the bound are refined. The cell of a grid
  // point is the box of half the spacing around it, clipped to the region.
  const std::array<double, 3> lo{region.x_lo, region.omega_lo, region.tau_lo};
  const std::array<double, 3> hi{region.x_hi, region.omega_hi, region.tau_hi};
  for (const auto& p : pending) {
    const std::array<double, 3> c{xs[p.i], p.omega, p.tau};
    Box cell;
    for (int a = 0; a < 3; ++a) {
      cell.lo[a] = std::max(lo[a], c[a] - 0.5 * spacing[a]);
      cell.hi[a] = std::min(hi[a], c[a] + 0.5 * spacing[a]);
    }
    GridPoint where;
    long boxes = 0;
    const auto result = refine(local, cell, 1, zero_level, cert.certified_margin, boxes, where);
    cert.refined_boxes += boxes;
    if (result == BoxResult::zero) {
      cert.verdict = Verdict::zero_found;
      cert.zero_location = where;
      return cert;
    }
    if (result == BoxResult::failed) {
      cert.certified_margin = -1.0;
      cert.verdict = Verdict::inconclusive;
      return cert;
    }
  }
  cert.verdict = Verdict::zero_free_certified;
  return cert;
}

ZeroCertificate certify_zero_free(const WeightMultiset& weights, const Region& region, double grid_step) {
  const double limit = strip_limit(weights.a0());
  if (std::abs(region.tau_lo) >= limit || std::abs(region.tau_hi) >= limit)
    throw Error(ErrorKind::StripViolation, "certification region leaves the strip |tau| < a0/(2 pi)");
  return certify_zero_free(build_ebspline(tp_spline_weights(weights)), region, grid_step);
}

int strong_sign_changes(std::span<const double> samples) {
  int changes = 0;
  int last = 0;
  for (double v : samples) {
    const int s = sign_of(v);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

double unit_monotone_offset(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 64 || n % 2 != 0)
    throw Error(ErrorKind::InvalidArgument, "need an even number (>= 64) of samples over [0,2)");
  const std::size_t half = n / 2;
  double peak = 1.0;
  for (double v : samples) peak = std::max(peak, std::abs(v));
  const double dead_band = 1e-12 * peak;

  const auto monotone_from = [&](std::size_t start) {
    for (std::size_t seg = 0; seg < 2; ++seg) {
      bool up = true;
      bool down = true;
      const std::size_t first = start + seg * half;
      for (std::size_t t = 0; t + 1 < half; ++t) {
        const double d = samples[(first + t + 1) % n] - samples[(first + t) % n];
        if (d < -dead_band) up = false;
        if (d > dead_band) down = false;
      }
      if (!up && !down) return false;
    }
    return true;
  };

  const auto max_it = std::max_element(samples.begin(), samples.end());
  const auto min_it = std::min_element(samples.begin(), samples.end());
  std::vector<std::size_t> candidates{static_cast<std::size_t>(max_it - samples.begin()),
                                      static_cast<std::size_t>(min_it - samples.begin())};
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](auto a, auto b) { return (a < half) > (b < half); });
  for (std::size_t c : candidates)
    if (monotone_from(c)) return 2.0 * static_cast<double>(c) / static_cast<double>(n);
  throw Error(ErrorKind::NotUnitMonotone, "no extremum offset gives monotone unit intervals");
}

ReducedSliceReport reduced_slice_monotonicity(const WeightVector& lambda, int eta_index, int samples_per_unit) {
  if (eta_index < 0 || eta_index >= static_cast<int>(lambda.clusters.size()))
    throw Error(ErrorKind::InvalidArgument, "eta index out of range");
  const PiecewiseExpPoly slice = zak_half_slice(build_ebspline(lambda), 2);
  const double eta = lambda.clusters[eta_index].value;
  const PiecewiseExpPoly reduced = reduce(slice, eta);

  std::vector<double> a(2 * samples_per_unit);
  std::vector<double> b(2 * samples_per_unit);
  for (int i = 0; i < 2 * samples_per_unit; ++i) {
    const double x = static_cast<double>(i) / samples_per_unit;
    a[i] = slice(x);
    b[i] = reduced(x);
  }
  ReducedSliceReport report;
  report.eta = eta;
  report.slice_offset = unit_monotone_offset(a);
  report.reduced_offset = unit_monotone_offset(b);
  return report;
}

ReducedSliceReport reduced_slice_monotonicity(const WeightMultiset& weights, int eta_index,
                                              int samples_per_unit) {
  return reduced_slice_monotonicity(tp_spline_weights(weights), eta_index, samples_per_unit);
}

int reduced_slice_sign_changes(const WeightVector& lambda, double omega, int periods, int samples_per_unit) {
  const ComplexPiecewiseExpPoly slice = zak_slice(build_ebspline(lambda), {omega, 0.0}, periods);
  const ComplexPiecewiseExpPoly reduced = exponential_reduction(slice, lambda.clusters);
  std::vector<double> values;
  for (int p = 0; p < periods; ++p)
    for (int i = 0; i < samples_per_unit; ++i)
      values.push_back(reduced.local(p, (i + 0.5) / samples_per_unit).real());
  return strong_sign_changes(values);
}

}  // namespace zaktp
