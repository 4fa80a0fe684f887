#include "zaktp/frames.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <numbers>

#include <Eigen/Dense>

#include "zaktp/analysis.hpp"
#include "zaktp/errors.hpp"
#include "zaktp/parallel.hpp"
#include "zaktp/zak.hpp"

namespace zaktp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Scan {
  double min = std::numeric_limits<double>::infinity();
  double max = 0.0;
  double min_x = 0.0;
  double min_omega = 0.0;
};

// values[i * n_omega + j] = sum_l |Z g(x_i, w_j + l/N)|^2.
Scan scan(const std::vector<double>& xs, int n_omega, const std::vector<double>& values, int stride_x,
          int stride_omega, std::size_t extra_rows) {
  Scan out;
  const std::size_t regular = xs.size() - extra_rows;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i < regular && i % stride_x != 0) continue;
    for (int j = 0; j < n_omega; j += stride_omega) {
      const double v = values[i * n_omega + j];
      out.max = std::max(out.max, v);
      if (v < out.min) {
        out.min = v;
        out.min_x = xs[i];
        out.min_omega = static_cast<double>(j) / n_omega;
      }
    }
  }
  return out;
}

}  // namespace

FrameBoundsReport frame_bounds(const WeightMultiset& weights, int N, int n_x, int n_omega) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "N must be >= 1");
  if (n_x < 1 || n_omega < 1) throw Error(ErrorKind::InvalidArgument, "grid resolution must be positive");

  const FactorizedZak zak(weights);
  const PiecewiseExpPoly& spline = zak.spline();
  const int m = spline.size();

  std::vector<double> xs(n_x);
  for (int i = 0; i < n_x; ++i) xs[i] = static_cast<double>(i) / n_x;
  std::size_t extra_rows = 0;
  std::optional<double> zero_x;
  if (N == 1 && weights.size() >= 2) {
    zero_x = locate_zero_half(spline);
    const double scaled = *zero_x * n_x;
    if (scaled != std::floor(scaled)) {
      xs.push_back(*zero_x);
      extra_rows = 1;
    }
  }

  // Prefactors depend on w only.
  std::vector<std::complex<double>> prefactor(static_cast<std::size_t>(n_omega) * N);
  std::vector<std::complex<double>> phase(prefactor.size());
  for (int j = 0; j < n_omega; ++j)
    for (int l = 0; l < N; ++l) {
      const double omega = static_cast<double>(j) / n_omega + static_cast<double>(l) / N;
      prefactor[j * N + l] = zak.prefactor({omega, 0.0});
      phase[j * N + l] = std::exp(std::complex<double>(0.0, -kTwoPi * omega));
    }

  std::vector<double> values(xs.size() * n_omega);
  parallel_for(xs.size(), [&](std::size_t i) {
    std::vector<double> b(m);
    for (int k = 0; k < m; ++k) b[k] = spline.local(k, xs[i]);
    for (int j = 0; j < n_omega; ++j) {
      double sum = 0.0;
      for (int l = 0; l < N; ++l) {
        const std::complex<double> e = phase[j * N + l];
        std::complex<double> z(0.0, 0.0);
        std::complex<double> ek(1.0, 0.0);
        for (int k = 0; k < m; ++k) {
          z += b[k] * ek;
          ek *= e;
        }
        sum += std::norm(prefactor[j * N + l] * z);
      }
      values[i * n_omega + j] = sum;
    }
  });
  // Z g(x~, 1/2) = 0; the grid holds w = 1/2 when n_omega is even.
  if (zero_x && n_omega % 2 == 0) {
    const auto it = std::find(xs.begin(), xs.end(), *zero_x);
    values[static_cast<std::size_t>(it - xs.begin()) * n_omega + n_omega / 2] = 0.0;
  }

  FrameBoundsReport report;
  report.N = N;
  report.n_x = n_x;
  report.n_omega = n_omega;
  for (int level = 3; level >= 0; --level) {
    const int f = 1 << level;
    if (level > 0 && (n_x % f != 0 || n_omega % f != 0)) continue;
    const Scan s = scan(xs, n_omega, values, f, f, extra_rows);
    report.trace.push_back({n_x / f, n_omega / f, s.min, s.max});
    if (level == 0) {
      report.A_est = s.min;
      report.B_est = s.max;
      report.min_x = s.min_x;
      report.min_omega = s.min_omega;
    }
  }
  return report;
}

DiscreteWindow periodize_sample(const WeightMultiset& weights, int K, double tol) {
  if (K < 1) throw Error(ErrorKind::InvalidArgument, "K must be >= 1");
  const TpZakEvaluator zak(weights);
  DiscreteWindow w;
  w.K = K;
  w.weights = weights.raw();
  for (int j = 0; j < K; ++j) w.values.push_back(zak.lattice(j, K, {0.0, 0.0}, tol).value.real());
  return w;
}

DiscreteWindow periodize_sample(const PiecewiseExpPoly& spline, int K) {
  if (K < 1) throw Error(ErrorKind::InvalidArgument, "K must be >= 1");
  DiscreteWindow w;
  w.K = K;
  w.values.assign(K, 0.0);
  for (int t = 0; t < spline.size(); ++t) w.values[t % K] += spline(t);
  return w;
}

DiscreteFrameReport discrete_frame_test(const DiscreteWindow& window, int M) {
  const int K = window.K;
  if (K < 1 || static_cast<int>(window.values.size()) != K)
    throw Error(ErrorKind::InvalidArgument, "window must hold K values");
  if (M < 1 || K % M != 0)
    throw Error(ErrorKind::Indivisible, "M = " + std::to_string(M) + " does not divide K = " + std::to_string(K));

  Eigen::MatrixXcd G(K, K);  // columns are the atoms
  int col = 0;
  for (int k = 0; k < K / M; ++k)
    for (int l = 0; l < M; ++l, ++col)
      for (int j = 0; j < K; ++j) {
        const int idx = ((j - k * M) % K + K) % K;
        G(j, col) = window.values[idx] * std::exp(std::complex<double>(0.0, kTwoPi * l * j / M));
      }
  const Eigen::MatrixXcd S = G * G.adjoint();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(S, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();

  DiscreteFrameReport r;
  r.K = K;
  r.M = M;
  r.lambda_min = ev.minCoeff();
  r.lambda_max = ev.maxCoeff();
  r.is_frame = r.lambda_min > 1e-10 * r.lambda_max;
  return r;
}

}  // namespace zaktp
