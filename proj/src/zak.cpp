#include "zaktp/zak.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "zaktp/errors.hpp"
#include "zaktp/quadrature.hpp"

namespace zaktp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Bound for sum_{k > K} P(y_k) e^{-beta y_k + gamma k}, y_k = y0 + h k, P with
// nonnegative coefficients. Consecutive terms shrink by at most
// q(y) = ((y + h)/y)^deg e^{-beta h + gamma}, which decreases in y, so the
// tail is dominated by a geometric series from k = K + 1.
double side_tail(const std::vector<double>& abs_poly, double beta, double gamma, double y0, double h,
                 long K) {
  const double y = y0 + h * static_cast<double>(K + 1);
  if (y <= 0.0) return kInf;
  const double degree = static_cast<double>(abs_poly.size()) - 1.0;
  const double q = std::pow((y + h) / y, std::max(degree, 0.0)) * std::exp(-beta * h + gamma);
  if (!(q < 1.0)) return kInf;
  double p = 0.0;
  for (auto it = abs_poly.rbegin(); it != abs_poly.rend(); ++it) p = p * y + std::abs(*it);
  const double first = p * std::exp(-beta * y + gamma * static_cast<double>(K + 1));
  return first / (1.0 - q);
}

void check_strip(const WeightMultiset& weights, double tau) {
  if (std::abs(tau) >= strip_limit(weights.a0()))
    throw Error(ErrorKind::StripViolation,
                "|tau| = " + std::to_string(std::abs(tau)) + " reaches the strip edge a0/(2 pi) = " +
                    std::to_string(weights.a0() / kTwoPi));
}

}  // namespace

double strip_limit(double a0) noexcept { return (1.0 - 1e-6) * a0 / kTwoPi; }

double lattice_tail_bound(const ExpSumRep& majorant, double x, double step, double tau, long K) {
  // |e^{-2 pi i k step s}| = e^{2 pi k step tau}.
  const double gamma = kTwoPi * step * tau;
  double total = 0.0;
  for (const auto& t : majorant.positive_side) total += side_tail(t.poly, t.rate, gamma, x, step, K);
  for (const auto& t : majorant.negative_side) total += side_tail(t.poly, -t.rate, -gamma, -x, step, K);
  return total;
}

long lattice_terms_for(const ExpSumRep& majorant, double x, double step, double tau, double tol, long cap) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  long hi = 1;
  while (!(lattice_tail_bound(majorant, x, step, tau, hi) < tol)) {
    if (hi >= cap)
      throw Error(ErrorKind::ToleranceUnreachable,
                  "more than " + std::to_string(cap) + " terms needed; tau too close to the strip edge");
    hi = std::min(hi * 2, cap);
  }
  long lo = hi / 2;  // lo fails (or is 0), hi passes
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (lattice_tail_bound(majorant, x, step, tau, mid) < tol)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

TpZakEvaluator::TpZakEvaluator(const WeightMultiset& weights)
    : weights_(weights), rep_(exp_sum_rep(weights)) {}

ZakSeriesValue TpZakEvaluator::lattice(double x, double step, ComplexFrequency s, double tol) const {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "lattice step must be positive");
  check_strip(weights_, s.tau * step);
  const double n = std::floor(x / step);
  const double x0 = x - n * step;

  ZakSeriesValue out;
  out.terms = lattice_terms_for(rep_, x0, step, s.tau, tol);
  out.tail_bound = lattice_tail_bound(rep_, x0, step, s.tau, out.terms);
  const std::complex<double> phase = std::complex<double>(0.0, -kTwoPi * step) * s.s();
  std::complex<double> sum(0.0, 0.0);
  for (long k = -out.terms; k <= out.terms; ++k) {
    const double g = rep_(x0 + step * static_cast<double>(k));
    if (g != 0.0) sum += g * std::exp(phase * static_cast<double>(k));
  }
  // Z(x0 + n step, s) = e^{2 pi i n step s} Z(x0, s)
  out.value = sum * std::exp(-phase * n);
  return out;
}

ZakSeriesValue TpZakEvaluator::operator()(double x, ComplexFrequency s, double tol) const {
  return lattice(x, 1.0, s, tol);
}

ZakSeriesValue zak_tp(const WeightMultiset& weights, double x, ComplexFrequency s, double tol) {
  return TpZakEvaluator(weights)(x, s, tol);
}

std::complex<double> zak_ebspline(const PiecewiseExpPoly& spline, double x, ComplexFrequency s) {
  const std::complex<double> phase = std::complex<double>(0.0, -kTwoPi) * s.s();
  const long first = static_cast<long>(std::ceil(-x)) - 1;
  const long last = static_cast<long>(std::floor(spline.size() - x)) + 1;
  std::complex<double> sum(0.0, 0.0);
  for (long k = first; k <= last; ++k) {
    const double b = spline(x + static_cast<double>(k));
    if (b != 0.0) sum += b * std::exp(phase * static_cast<double>(k));
  }
  return sum;
}

FactorizedZak::FactorizedZak(const WeightMultiset& weights)
    : weights_(weights), spline_(build_ebspline(tp_spline_weights(weights))) {}

std::complex<double> FactorizedZak::prefactor(ComplexFrequency s) const {
  const std::complex<double> two_pi_i_s = std::complex<double>(0.0, kTwoPi) * s.s();
  std::complex<double> prod(1.0, 0.0);
  for (const auto& c : weights_.clusters()) {
    const std::complex<double> denom = 1.0 - std::exp(-(c.value + two_pi_i_s));
    if (std::abs(denom) < 1e-14)
      throw Error(ErrorKind::PoleHit, "prefactor pole for weight " + std::to_string(c.value));
    const std::complex<double> factor = c.value / denom;
    for (int k = 0; k < c.multiplicity; ++k) prod *= factor;
  }
  return prod;
}

std::complex<double> FactorizedZak::operator()(double x, ComplexFrequency s) const {
  return prefactor(s) * zak_ebspline(spline_, x, s);
}

std::complex<double> zak_factorized(const WeightMultiset& weights, double x, ComplexFrequency s) {
  return FactorizedZak(weights)(x, s);
}

std::complex<double> extend_quasiperiodic(std::complex<double> z, int shift_n, int /*shift_m*/,
                                          std::complex<double> s) {
  if (shift_n == 0) return z;
  return std::exp(std::complex<double>(0.0, kTwoPi * shift_n) * s) * z;
}

std::complex<double> zak_inversion_check(const WeightMultiset& weights, double omega, int quad_points) {
  if (quad_points < 16) throw Error(ErrorKind::InvalidArgument, "inversion quadrature needs >= 16 points");
  const TpZakEvaluator zak(weights);
  const QuadratureRule rule = gauss_legendre(quad_points);
  std::complex<double> sum(0.0, 0.0);
  for (int i = 0; i < quad_points; ++i) {
    const double x = rule.nodes[i];
    const auto z = zak(x, {omega, 0.0}, 1e-15).value;
    sum += rule.weights[i] * z * std::exp(std::complex<double>(0.0, -kTwoPi * x * omega));
  }
  return sum;
}

DilationCheck zak_dilation_check(const WeightMultiset& weights, double alpha, double x, double omega,
                                 bool with_fourier_side, double tol) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidArgument, "alpha must be positive");
  if (with_fourier_side && weights.size() < 2)
    throw Error(ErrorKind::SlowDecay, "the Fourier-side Zak series needs n >= 2 for integrable decay");

  DilationCheck out;
  const TpZakEvaluator direct(weights);
  out.scaled_lattice = direct.lattice(x, alpha, {omega, 0.0}, 1e-15).value;

  // g(alpha .) = g_{alpha a} / alpha.
  std::vector<double> scaled;
  for (const auto& c : weights.clusters())
    for (int k = 0; k < c.multiplicity; ++k) scaled.push_back(alpha * c.value);
  const WeightMultiset rescaled = make_weights(scaled, 0.0);
  out.rescaled_window = zak_tp(rescaled, x / alpha, {alpha * omega, 0.0}, 1e-15).value / alpha;

  if (with_fourier_side) {
    // |g^(v)| <= C (2 pi |v|)^{-n}, C = prod |a|; the two-sided tail beyond
    // |k| > K is at most 2 C (2 pi)^{-n} alpha (K/alpha - |w|)^{1-n} / (n-1).
    const int n = weights.size();
    double c = 1.0;
    for (double a : weights.raw()) c *= std::abs(a);
    const double scale = 2.0 * c * std::pow(kTwoPi, -n) * alpha / (n - 1.0);
    const double reach = std::pow(scale / tol, 1.0 / (n - 1.0));
    const double k_real = alpha * (std::abs(omega) + reach);
    constexpr double kCap = 2e7;
    if (!(k_real < kCap))
      throw Error(ErrorKind::ToleranceUnreachable, "Fourier-side series needs more than 2e7 terms");
    const long K = static_cast<long>(std::ceil(k_real)) + 1;

    std::complex<double> sum(0.0, 0.0);
    for (long k = -K; k <= K; ++k) {
      const double nu = omega + static_cast<double>(k) / alpha;
      sum += fourier_tp(weights, nu) * std::exp(std::complex<double>(0.0, kTwoPi * k * x / alpha));
    }
    out.time_side = alpha * out.scaled_lattice;
    out.frequency_side = std::exp(std::complex<double>(0.0, kTwoPi * x * omega)) * sum;
  }
  return out;
}

const char* zak_source_name(ZakSource source) noexcept {
  return source == ZakSource::direct_series ? "direct_series" : "ebspline_factorized";
}

ZakGrid zak_grid(const WeightMultiset& weights, const std::vector<double>& xs,
                 const std::vector<double>& omegas, double tau, ZakSource source, double tol) {
  for (double x : xs)
    if (!(x >= 0.0 && x < 1.0)) throw Error(ErrorKind::InvalidArgument, "x samples must lie in [0,1)");
  for (double w : omegas)
    if (!(w >= 0.0 && w < 1.0)) throw Error(ErrorKind::InvalidArgument, "omega samples must lie in [0,1)");
  check_strip(weights, tau);

  ZakGrid grid;
  grid.x_samples = xs;
  grid.omega_samples = omegas;
  grid.tau = tau;
  grid.source = source;
  grid.values.resize(xs.size() * omegas.size());

  if (source == ZakSource::direct_series) {
    const TpZakEvaluator zak(weights);
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = 0; j < omegas.size(); ++j) {
        const auto v = zak(xs[i], {omegas[j], tau}, tol);
        grid.values[i * omegas.size() + j] = v.value;
        grid.tail_bound = std::max(grid.tail_bound, v.tail_bound);
      }
  } else {
    const FactorizedZak zak(weights);
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = 0; j < omegas.size(); ++j)
        grid.values[i * omegas.size() + j] = zak(xs[i], {omegas[j], tau});
  }
  return grid;
}

}  // namespace zaktp
