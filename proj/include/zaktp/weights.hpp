#pragma once

// Totally positive functions of finite type.
//
// A finite weight list (a_1, ..., a_n) of nonzero reals defines the TP
// function g_n through its Fourier transform
//
//     g_n^(w) = prod_v (1 + 2 pi i w / a_v)^{-1},
//
// i.e. the n-fold convolution of the one-sided exponentials
// |a| e^{-a x} chi_[0,inf)(sign(a) x). Shift factors are not applied here;
// `WeightMultiset::mean_shift()` gives the translation that recentres g_n.

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace zaktp {

/// One distinct weight value with its multiplicity.
struct Cluster {
  double value = 0.0;
  int multiplicity = 0;

  bool operator==(const Cluster&) const = default;
};

class WeightMultiset {
 public:
  const std::vector<double>& raw() const noexcept { return raw_; }
  /// Distinct values sorted ascending.
  const std::vector<Cluster>& clusters() const noexcept { return clusters_; }
  /// min_v |a_v|, the decay rate shared by both tails.
  double a0() const noexcept { return a0_; }
  int size() const noexcept { return static_cast<int>(raw_.size()); }

  /// prod_v a_v over the coalesced values.
  double product() const noexcept;
  /// sum_v 1/a_v; g_n(x + mean_shift()) has mean zero.
  double mean_shift() const noexcept;
  /// True when the cluster set is symmetric, {a > 0} = {-a : a < 0}.
  bool is_even(double tol = 1e-12) const noexcept;

  /// Decay rate on x > 0 (smallest positive weight), or +inf if none.
  double right_rate() const noexcept;
  /// Decay rate on x < 0 (smallest |negative weight|), or +inf if none.
  double left_rate() const noexcept;

 private:
  friend WeightMultiset make_weights(std::span<const double> values, double coalesce_tol);

  std::vector<double> raw_;
  std::vector<Cluster> clusters_;
  double a0_ = 0.0;
};

/// Builds a weight multiset. Values within `coalesce_tol` of each other are
/// merged (single linkage over the sorted list) into their mean.
///
/// Throws EmptyInput, NonFiniteWeight, or ZeroWeight (|v| <= coalesce_tol).
WeightMultiset make_weights(std::span<const double> values, double coalesce_tol = 1e-9);

inline WeightMultiset make_weights(std::initializer_list<double> values,
                                   double coalesce_tol = 1e-9) {
  return make_weights(std::span<const double>(values.begin(), values.size()), coalesce_tol);
}

/// A function known through its derivatives: derivative(t, k) = f^(k)(t)
/// for 0 <= k <= max_order.
struct SmoothFunction {
  std::function<double(double, int)> derivative;
  int max_order = 0;
};

/// Confluent divided difference [a_1, ..., a_n | f] over the clusters of
/// `weights`. Throws DerivativeUnavailable when a cluster's multiplicity
/// needs a derivative order above f.max_order.
double divided_difference(const WeightMultiset& weights, const SmoothFunction& f);

/// g_n(x) via the divided-difference closed form (x = 0 uses the
/// divided difference of chi_[0,inf), so g_n is right-continuous at 0).
double eval_tp(const WeightMultiset& weights, double x);

/// g_n^(w) = prod (1 + 2 pi i w / a)^{-1}.
std::complex<double> fourier_tp(const WeightMultiset& weights, double omega);

/// p(x) e^{-rate x}; polynomial coefficients in ascending powers.
struct ExpTerm {
  double rate = 0.0;
  std::vector<double> poly;

  bool operator==(const ExpTerm&) const = default;
};

/// g_n split into sum_{b>0} p_b(x) e^{-b x} on x >= 0 and
/// sum_{b<0} p_b(x) e^{-b x} on x < 0.
struct ExpSumRep {
  std::vector<ExpTerm> positive_side;
  std::vector<ExpTerm> negative_side;

  double operator()(double x) const;
};

/// Partial-fraction decomposition of g_n^ mapped back to the time domain.
/// Throws IllConditioned when the coefficients amplify rounding by more than
/// 1e6 (sum of |c_ij| / |b_i|^j, the terms at s = 0) or fail to reproduce
/// g_n^ on a set of probe frequencies.
ExpSumRep exp_sum_rep(const WeightMultiset& weights);

/// g_n evaluated in quad precision. Needed when the partial-fraction
/// coefficients are large and alternate (e.g. 64 harmonic weights), where
/// double evaluation loses every significant digit to cancellation.
class HighPrecisionTp {
 public:
  explicit HighPrecisionTp(const WeightMultiset& weights);
  ~HighPrecisionTp();
  HighPrecisionTp(HighPrecisionTp&&) noexcept;
  HighPrecisionTp& operator=(HighPrecisionTp&&) noexcept;

  double operator()(double x) const;
  /// Coefficients rounded to double; only fit for magnitude bounds.
  const ExpSumRep& majorant() const noexcept { return majorant_; }
  const WeightMultiset& weights() const noexcept { return weights_; }

 private:
  struct Impl;
  WeightMultiset weights_;
  std::unique_ptr<Impl> impl_;
  ExpSumRep majorant_;
};

}  // namespace zaktp
