#pragma once

// Gabor frame bounds for (g, 1, 1/N) from the Zak transform,
//
//     A = ess inf sum_{j<N} |Z g(x, w + j/N)|^2,   B = ess sup of the same,
//
// and finite Gabor systems on C^K built from periodized samples of g.

#include <string>
#include <vector>

#include "zaktp/ebspline.hpp"
#include "zaktp/weights.hpp"

namespace zaktp {

struct FrameTraceEntry {
  int n_x = 0;
  int n_omega = 0;
  double A_est = 0.0;
  double B_est = 0.0;

  bool operator==(const FrameTraceEntry&) const = default;
};

struct FrameBoundsReport {
  int N = 1;
  int n_x = 0;
  int n_omega = 0;
  double A_est = 0.0;
  double B_est = 0.0;
  double min_x = 0.0;
  double min_omega = 0.0;
  std::vector<FrameTraceEntry> trace;  // coarse to fine, last entry is the full grid

  bool operator==(const FrameBoundsReport&) const = default;
};

/// Grid estimates on x_i = i/n_x, w_j = j/n_omega, through the factorized
/// Zak transform. For N = 1 and n >= 2 the located zero x~ is added to the x
/// samples and its value at w = 1/2 is taken as 0. The trace repeats the scan
/// on nested subgrids (n_x / 2^l, n_omega / 2^l), l <= 3.
FrameBoundsReport frame_bounds(const WeightMultiset& weights, int N, int n_x, int n_omega);

struct DiscreteWindow {
  int K = 0;
  std::vector<double> values;
  std::vector<double> weights;  // provenance; empty for spline windows

  bool operator==(const DiscreteWindow&) const = default;
};

/// v_j = sum_k g(j + kK), j = 0..K-1, truncated once the certified tail is
/// below tol.
DiscreteWindow periodize_sample(const WeightMultiset& weights, int K, double tol = 1e-15);
/// v_j = sum_k B(j + kK), exact.
DiscreteWindow periodize_sample(const PiecewiseExpPoly& spline, int K);

struct DiscreteFrameReport {
  int K = 0;
  int M = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  bool is_frame = false;

  bool operator==(const DiscreteFrameReport&) const = default;
};

/// Extreme eigenvalues of the frame operator of
/// { v((j - kM) mod K) e^{2 pi i l j / M} : 0 <= k < K/M, 0 <= l < M }.
/// is_frame <=> lambda_min > 1e-10 lambda_max. Throws Indivisible if M does
/// not divide K.
DiscreteFrameReport discrete_frame_test(const DiscreteWindow& window, int M);

}  // namespace zaktp
