#pragma once

// Infinite-type TP functions through their truncations g_n, and the
// observables that track g_n -> g: weighted sup distances on the line, Zak
// distances on horizontal strips and the decay of 1/Psi_n on vertical lines.
//
// Comparisons are made between centered truncations
//
//     g_n^c(x) = g_n(x + sum_v 1/a_v),   g_n^c^(w) = prod (1 + 2 pi i w/a_v)^{-1} e^{2 pi i w / a_v},
//
// because sum 1/a_v may diverge (harmonic weights) while sum a_v^{-2} < oo
// is what makes the centered products converge.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "zaktp/weights.hpp"

namespace zaktp {

enum class GeneratorRule { harmonic, alternating, geometric, explicit_list };

const char* generator_rule_name(GeneratorRule rule) noexcept;

struct WeightGenerator {
  GeneratorRule rule = GeneratorRule::harmonic;
  double c = 1.0;
  double r = 2.0;
  std::vector<double> values;  // explicit_list only

  /// a_nu, nu >= 1.
  double weight(int nu) const;
  /// sum_{nu > n} a_nu^{-2}; for an explicit list, the sum over the rest of it.
  double square_sum_tail(int n) const;

  /// "harmonic:c=1", "alternating:c=0.5", "geometric:c=1,r=2",
  /// "list:1,-2,3.5". Throws InvalidArgument.
  static WeightGenerator parse(const std::string& text);
};

/// Throws InvalidArgument for n < 1 or past the end of an explicit list.
WeightMultiset truncate(const WeightGenerator& gen, int n);

enum class Centering { none, mean };

/// Uniform grid of `points` nodes on [-R, R].
std::vector<double> line_grid(double R, int points);

/// max over grid of |g_n(x) - g_m(x)| e^{sigma |x|}. Both functions are
/// evaluated in quad precision. Throws SigmaTooLarge when sigma >= a0 of
/// either set, InvalidArgument when the grid misses [-40/a0, 40/a0].
double weighted_sup_distance(const WeightMultiset& w_n, const WeightMultiset& w_m, double sigma,
                             std::span<const double> grid, Centering centering = Centering::mean);

struct StripGrid {
  int x_points = 64;                        // x_i = i / x_points
  int tau_points = 9;                       // odd, uniform on [-xi, xi]
  std::vector<double> omegas{0.0, 0.25, 0.5, 0.75};
};

/// max over the grid of |Z g_n(x, w + i tau) - Z g_m(x, w + i tau)|.
/// Throws StripViolation when xi reaches a0/(2 pi) of either set.
double zak_strip_distance(const WeightMultiset& w_n, const WeightMultiset& w_m, double xi,
                          const StripGrid& grid, Centering centering = Centering::mean);

/// Psi_n(s) = prod (1 + s/a_v) e^{-s/a_v}.
std::complex<double> eval_reciprocal_laplace(const WeightMultiset& weights, std::complex<double> s);

struct PsiDecay {
  double exponent = 0.0;  // least-squares slope of log|1/Psi_n| against log|tau|
  bool monotone = false;  // |1/Psi_n| nonincreasing in |tau| over the samples
};

/// Throws InvalidArgument unless 1 <= p <= n, at least two samples, all tau != 0.
PsiDecay psi_decay_diagnostic(const WeightMultiset& weights, double omega, std::span<const double> taus,
                              int p);

enum class SweepMode { weighted_sup, zak_strip };

struct SweepRow {
  int n = 0;
  double sigma_or_xi = 0.0;
  double distance = 0.0;
  double tail_proxy = 0.0;  // sum_{nu > n} a_nu^{-2}

  bool operator==(const SweepRow&) const = default;
};

struct SweepConfig {
  std::vector<int> ns{4, 8, 16, 32};
  int n_ref = 64;
  SweepMode mode = SweepMode::weighted_sup;
  /// sigma (weighted_sup) or xi (zak_strip); negative selects the default
  /// a0/2 or 0.5 a0/(2 pi), a0 taken over the reference prefix.
  double parameter = -1.0;
  int line_points = 4001;
  StripGrid strip;
  Centering centering = Centering::mean;
};

std::vector<SweepRow> convergence_sweep(const WeightGenerator& gen, const SweepConfig& config);

}  // namespace zaktp
