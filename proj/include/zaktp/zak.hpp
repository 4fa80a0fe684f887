#pragma once

// Zak transforms of TP windows and EB-splines,
//
//     Z f(x, s) = sum_k f(x + k) e^{-2 pi i k s},   s = w + i tau,
//
// evaluated either as a truncated series with a certified tail or through
// the EB-spline factorization
//
//     Z g(x, s) = prod_v a_v / (1 - e^{-(a_v + 2 pi i s)}) * Z B_{-a}(x, s).

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "zaktp/ebspline.hpp"
#include "zaktp/weights.hpp"

namespace zaktp {

struct ComplexFrequency {
  double omega = 0.0;
  double tau = 0.0;

  std::complex<double> s() const noexcept { return {omega, tau}; }
};

/// Largest |tau| accepted for a TP window with decay rate a0.
double strip_limit(double a0) noexcept;

struct ZakSeriesValue {
  std::complex<double> value;
  double tail_bound = 0.0;  // bound on |value - exact|
  long terms = 0;           // K in sum_{|k| <= K}
};

/// Upper bound for sum_{|k| > K} |f(x + step k)| e^{2 pi k step tau} when
/// |f| is dominated termwise by `majorant` (coefficients taken in absolute
/// value). Requires x in [0, step).
double lattice_tail_bound(const ExpSumRep& majorant, double x, double step, double tau, long K);

/// Smallest K whose tail bound is below tol; throws ToleranceUnreachable
/// past `cap`.
long lattice_terms_for(const ExpSumRep& majorant, double x, double step, double tau, double tol,
                       long cap = 1'000'000);

/// Direct-series evaluator for one weight set; reusable across points.
class TpZakEvaluator {
 public:
  explicit TpZakEvaluator(const WeightMultiset& weights);

  /// Throws StripViolation or ToleranceUnreachable.
  ZakSeriesValue operator()(double x, ComplexFrequency s, double tol) const;

  /// Z_step g(x, w) = sum_k g(x + step k) e^{-2 pi i k step w}.
  ZakSeriesValue lattice(double x, double step, ComplexFrequency s, double tol) const;

  const WeightMultiset& weights() const noexcept { return weights_; }
  const ExpSumRep& representation() const noexcept { return rep_; }

 private:
  WeightMultiset weights_;
  ExpSumRep rep_;
};

ZakSeriesValue zak_tp(const WeightMultiset& weights, double x, ComplexFrequency s, double tol);

/// Exact finite sum over the shifts supported by the spline; any x, s.
std::complex<double> zak_ebspline(const PiecewiseExpPoly& spline, double x, ComplexFrequency s);

/// Factorized evaluator: prefactor(s) * Z B_{-a}(x, s).
class FactorizedZak {
 public:
  explicit FactorizedZak(const WeightMultiset& weights);

  /// Throws PoleHit when some |1 - e^{-(a + 2 pi i s)}| < 1e-14.
  std::complex<double> prefactor(ComplexFrequency s) const;
  std::complex<double> operator()(double x, ComplexFrequency s) const;

  const PiecewiseExpPoly& spline() const noexcept { return spline_; }
  const WeightMultiset& weights() const noexcept { return weights_; }

 private:
  WeightMultiset weights_;
  PiecewiseExpPoly spline_;
};

std::complex<double> zak_factorized(const WeightMultiset& weights, double x, ComplexFrequency s);

/// Z(x0 + n, s + m) from z = Z(x0, s).
std::complex<double> extend_quasiperiodic(std::complex<double> z, int shift_n, int shift_m,
                                          std::complex<double> s);

/// Gauss-Legendre value of int_0^1 Z g(x, w) e^{-2 pi i x w} dx, which
/// equals g^(w). Requires quad_points >= 16.
std::complex<double> zak_inversion_check(const WeightMultiset& weights, double omega, int quad_points);

struct DilationCheck {
  /// Z_alpha g(x, w) by direct lattice sum.
  std::complex<double> scaled_lattice;
  /// Z_1 g(alpha .)(x / alpha, alpha w), through the rescaled weight set.
  std::complex<double> rescaled_window;
  /// alpha Z_alpha g(x, w), only with the Fourier-side check.
  std::optional<std::complex<double>> time_side;
  /// e^{2 pi i x w} Z_{1/alpha} g^(w, -x).
  std::optional<std::complex<double>> frequency_side;
};

/// Both sides of the dilation identity, and of the time/frequency identity
/// when `with_fourier_side` is set. The frequency series decays only
/// algebraically, so it is truncated against `tol` with an integral bound;
/// throws SlowDecay when n < 2.
DilationCheck zak_dilation_check(const WeightMultiset& weights, double alpha, double x, double omega,
                                 bool with_fourier_side = true, double tol = 1e-8);

enum class ZakSource { direct_series, ebspline_factorized };

const char* zak_source_name(ZakSource source) noexcept;

struct ZakGrid {
  std::vector<double> x_samples;
  std::vector<double> omega_samples;
  double tau = 0.0;
  /// values[i * omega_samples.size() + j] = Z(x_i, w_j + i tau)
  std::vector<std::complex<double>> values;
  double tail_bound = 0.0;
  ZakSource source = ZakSource::ebspline_factorized;

  std::complex<double> at(std::size_t i, std::size_t j) const {
    return values[i * omega_samples.size() + j];
  }

  bool operator==(const ZakGrid&) const = default;
};

/// Samples within [0,1) x [0,1); throws InvalidArgument otherwise.
ZakGrid zak_grid(const WeightMultiset& weights, const std::vector<double>& xs,
                 const std::vector<double>& omegas, double tau, ZakSource source, double tol = 1e-13);

}  // namespace zaktp
