#pragma once

// Test-side oracles, independent of the library's closed forms, and a
// seeded generator of random weight sets.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include "zaktp/weights.hpp"

namespace zaktp::test {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double relative_error(std::complex<double> a, std::complex<double> b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

/// Random nonzero weights with |a| in [lo, hi] (default [0.5, 8]), random
/// signs and pairwise distance >= (hi - lo) / 75 between the values.
class WeightSampler {
 public:
  explicit WeightSampler(std::uint64_t seed) : rng_(seed) {}

  std::vector<double> values(int n, double lo = 0.5, double hi = 8.0) {
    std::uniform_real_distribution<double> mag(lo, hi);
    const double gap = (hi - lo) / 75.0;
    std::bernoulli_distribution sign(0.5);
    std::vector<double> out;
    while (static_cast<int>(out.size()) < n) {
      const double a = sign(rng_) ? mag(rng_) : -mag(rng_);
      if (std::all_of(out.begin(), out.end(), [&](double b) { return std::abs(a - b) >= gap; }))
        out.push_back(a);
    }
    return out;
  }

  WeightMultiset weights(int n, double lo = 0.5, double hi = 8.0) { return make_weights(values(n, lo, hi)); }

  /// Even set: pairs (a, -a), plus nothing else.
  WeightMultiset even_weights(int pairs) {
    std::vector<double> out;
    for (double a : values(pairs)) {
      out.push_back(std::abs(a));
      out.push_back(-std::abs(a));
    }
    return make_weights(out);
  }

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// int_a^b f with 20-point Gauss on each of `pieces` equal parts.
inline double gauss_integral(const std::function<double(double)>& f, double a, double b, int pieces = 1) {
  double sum = 0.0;
  const double h = (b - a) / pieces;
  for (int p = 0; p < pieces; ++p)
    sum += boost::math::quadrature::gauss<double, 20>::integrate(f, a + p * h, a + (p + 1) * h);
  return sum;
}

/// B_lambda(x) by the recursion B_k(x) = int_0^1 e^{lambda_k t} B_{k-1}(x - t) dt,
/// splitting [0,1] where x - t crosses an integer.
inline double spline_by_quadrature(const std::vector<double>& lambda, double x, std::size_t count = 0) {
  if (count == 0) count = lambda.size();
  if (count == 1) return (x >= 0.0 && x < 1.0) ? std::exp(lambda[0] * x) : 0.0;
  if (x <= 0.0 || x >= static_cast<double>(count)) return 0.0;
  const double lam = lambda[count - 1];
  const auto integrand = [&](double t) { return std::exp(lam * t) * spline_by_quadrature(lambda, x - t, count - 1); };
  std::vector<double> cuts{0.0};
  const double frac = x - std::floor(x);
  if (frac > 0.0) cuts.push_back(frac);
  cuts.push_back(1.0);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    sum += boost::math::quadrature::gauss<double, 20>::integrate(integrand, cuts[i], cuts[i + 1]);
  return sum;
}

/// int g(x) e^{-2 pi i w x} dx by exp-sinh quadrature on both half lines.
inline std::complex<double> fourier_by_quadrature(const std::function<double(double)>& g, double omega) {
  boost::math::quadrature::exp_sinh<double> rule;
  const auto part = [&](auto trig) {
    const double right = rule.integrate([&](double x) { return g(x) * trig(kTwoPi * omega * x); }, 0.0,
                                        std::numeric_limits<double>::infinity());
    const double left = rule.integrate([&](double x) { return g(-x) * trig(-kTwoPi * omega * x); }, 0.0,
                                       std::numeric_limits<double>::infinity());
    return right + left;
  };
  const double re = part([](double v) { return std::cos(v); });
  const double im = -part([](double v) { return std::sin(v); });
  return {re, im};
}

/// sum_{|k| <= K} f(x + k) e^{-2 pi i k s}.
inline std::complex<double> zak_brute_force(const std::function<double(double)>& f, double x, std::complex<double> s,
                                            int K) {
  std::complex<double> sum(0.0, 0.0);
  for (int k = -K; k <= K; ++k) {
    const double v = f(x + k);
    if (v != 0.0) sum += v * std::exp(std::complex<double>(0.0, -kTwoPi * k) * s);
  }
  return sum;
}

}  // namespace zaktp::test
