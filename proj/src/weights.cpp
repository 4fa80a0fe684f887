#include "zaktp/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/multiprecision/float128.hpp>

#include "zaktp/errors.hpp"

namespace zaktp {

namespace {

using Quad = boost::multiprecision::float128;

// Taylor coefficients (orders 0..order-1, in t) of
//   prod_{k != i} (t + d_k)^{-mu_k},   d_k = orientation * (b_i - b_k).
// orientation = +1 gives the residue expansion behind divided differences,
// orientation = -1 the one behind partial fractions in s = -b_i + t.
template <class Real>
std::vector<Real> cofactor_series(const std::vector<Real>& values, const std::vector<int>& mult,
                                  std::size_t i, int order, int orientation) {
  std::vector<Real> acc(order, Real(0));
  acc[0] = Real(1);
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k == i) continue;
    const Real d = Real(orientation) * (values[i] - values[k]);
    const int mu = mult[k];
    // (t + d)^{-mu} = d^{-mu} sum_l binom(mu+l-1, l) (-t/d)^l
    std::vector<Real> factor(order);
    Real term = Real(1);
    for (int p = 0; p < mu; ++p) term /= d;
    for (int l = 0; l < order; ++l) {
      factor[l] = term;
      term *= -Real(mu + l) / (Real(l + 1) * d);
    }
    std::vector<Real> next(order, Real(0));
    for (int a = 0; a < order; ++a) {
      if (acc[a] == Real(0)) continue;
      for (int b = 0; a + b < order; ++b) next[a + b] += acc[a] * factor[b];
    }
    acc = std::move(next);
  }
  return acc;
}

// [b_1..b_n | f] = sum_i sum_l coef[i][l] f^(l)(b_i).
template <class Real>
struct DividedDifferenceRule {
  std::vector<Real> values;
  std::vector<int> mult;
  std::vector<std::vector<Real>> coef;
  // (-1)^{n-1} prod a_v, the factor in front of the divided difference.
  Real sign_factor = Real(1);

  explicit DividedDifferenceRule(const WeightMultiset& w) {
    for (const auto& c : w.clusters()) {
      values.push_back(Real(c.value));
      mult.push_back(c.multiplicity);
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      const int mu = mult[i];
      const auto series = cofactor_series(values, mult, i, mu, +1);
      std::vector<Real> row(mu);
      Real factorial = Real(1);
      for (int l = 0; l < mu; ++l) {
        if (l > 0) factorial *= Real(l);
        row[l] = series[mu - 1 - l] / factorial;
      }
      coef.push_back(std::move(row));
    }
    Real prod = Real(1);
    for (std::size_t i = 0; i < values.size(); ++i)
      for (int p = 0; p < mult[i]; ++p) prod *= values[i];
    sign_factor = (w.size() % 2 == 1) ? prod : -prod;
  }

  Real value(Real x) const {
    using std::exp;
    using boost::multiprecision::exp;
    if (x == Real(0)) {
      Real sum = Real(0);
      for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] > Real(0)) sum += coef[i][0];
      return sign_factor * sum;
    }
    const bool right = x > Real(0);
    Real sum = Real(0);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if ((values[i] > Real(0)) != right) continue;
      Real poly = Real(0);
      Real power = Real(1);
      for (std::size_t l = 0; l < coef[i].size(); ++l) {
        poly += coef[i][l] * power;
        power *= -x;
      }
      sum += poly * exp(-x * values[i]);
    }
    return right ? sign_factor * sum : -sign_factor * sum;
  }

  // Same closed form regrouped as p_b(x) e^{-b x}.
  ExpSumRep exp_sum() const {
    ExpSumRep rep;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const bool right = values[i] > Real(0);
      ExpTerm term;
      term.rate = static_cast<double>(values[i]);
      Real sign = right ? sign_factor : -sign_factor;
      for (std::size_t l = 0; l < coef[i].size(); ++l) {
        term.poly.push_back(static_cast<double>(sign * coef[i][l]));
        sign = -sign;
      }
      (right ? rep.positive_side : rep.negative_side).push_back(std::move(term));
    }
    return rep;
  }
};

double eval_poly(const std::vector<double>& poly, double x) {
  double acc = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

double WeightMultiset::product() const noexcept {
  double p = 1.0;
  for (const auto& c : clusters_)
    for (int k = 0; k < c.multiplicity; ++k) p *= c.value;
  return p;
}

double WeightMultiset::mean_shift() const noexcept {
  double s = 0.0;
  for (const auto& c : clusters_) s += c.multiplicity / c.value;
  return s;
}

bool WeightMultiset::is_even(double tol) const noexcept {
  std::vector<Cluster> mirrored;
  for (auto it = clusters_.rbegin(); it != clusters_.rend(); ++it)
    mirrored.push_back({-it->value, it->multiplicity});
  for (std::size_t i = 0; i < clusters_.size(); ++i) {
    if (clusters_[i].multiplicity != mirrored[i].multiplicity) return false;
    if (std::abs(clusters_[i].value - mirrored[i].value) > tol * std::abs(clusters_[i].value))
      return false;
  }
  return true;
}

double WeightMultiset::right_rate() const noexcept {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& c : clusters_)
    if (c.value > 0) r = std::min(r, c.value);
  return r;
}

double WeightMultiset::left_rate() const noexcept {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& c : clusters_)
    if (c.value < 0) r = std::min(r, -c.value);
  return r;
}

WeightMultiset make_weights(std::span<const double> values, double coalesce_tol) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "weight list is empty");
  if (!(coalesce_tol >= 0.0) || !std::isfinite(coalesce_tol))
    throw Error(ErrorKind::InvalidArgument, "coalesce tolerance must be finite and >= 0");
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteWeight, "weight is not finite");
    if (std::abs(v) <= coalesce_tol)
      throw Error(ErrorKind::ZeroWeight, "weight " + std::to_string(v) + " is zero within tolerance");
  }

  WeightMultiset w;
  w.raw_.assign(values.begin(), values.end());
  std::vector<double> sorted = w.raw_;
  std::sort(sorted.begin(), sorted.end());

  std::size_t start = 0;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i == sorted.size() || sorted[i] - sorted[i - 1] > coalesce_tol) {
      double sum = 0.0;
      for (std::size_t k = start; k < i; ++k) sum += sorted[k];
      const int count = static_cast<int>(i - start);
      w.clusters_.push_back({sum / count, count});
      start = i;
    }
  }
  // A cluster straddling zero cannot occur: every |v| > tol.
  w.a0_ = std::numeric_limits<double>::infinity();
  for (double v : w.raw_) w.a0_ = std::min(w.a0_, std::abs(v));
  return w;
}

double divided_difference(const WeightMultiset& weights, const SmoothFunction& f) {
  const DividedDifferenceRule<double> rule(weights);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.values.size(); ++i) {
    const int needed = rule.mult[i] - 1;
    if (needed > f.max_order)
      throw Error(ErrorKind::DerivativeUnavailable,
                  "derivative of order " + std::to_string(needed) + " required at node " +
                      std::to_string(rule.values[i]));
    for (int l = 0; l <= needed; ++l) sum += rule.coef[i][l] * f.derivative(rule.values[i], l);
  }
  return sum;
}

double eval_tp(const WeightMultiset& weights, double x) {
  return DividedDifferenceRule<double>(weights).value(x);
}

std::complex<double> fourier_tp(const WeightMultiset& weights, double omega) {
  const std::complex<double> phase(0.0, 2.0 * std::numbers::pi * omega);
  std::complex<double> prod(1.0, 0.0);
  for (const auto& c : weights.clusters())
    for (int k = 0; k < c.multiplicity; ++k) prod /= 1.0 + phase / c.value;
  return prod;
}

double ExpSumRep::operator()(double x) const {
  double sum = 0.0;
  for (const auto& t : (x >= 0.0 ? positive_side : negative_side))
    sum += eval_poly(t.poly, x) * std::exp(-t.rate * x);
  return sum;
}

ExpSumRep exp_sum_rep(const WeightMultiset& weights) {
  std::vector<double> values;
  std::vector<int> mult;
  for (const auto& c : weights.clusters()) {
    values.push_back(c.value);
    mult.push_back(c.multiplicity);
  }
  const double gain = weights.product();

  // coeff[i][j-1] multiplies (s + b_i)^{-j} in  gain * prod (s + b_i)^{-mu_i}.
  std::vector<std::vector<double>> coeff;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto series = cofactor_series(values, mult, i, mult[i], -1);
    std::vector<double> row(mult[i]);
    for (int j = 1; j <= mult[i]; ++j) row[j - 1] = gain * series[mult[i] - j];
    coeff.push_back(std::move(row));
  }

  // At s = 0 the terms sum to g^(0) = 1; their absolute sum is the factor by
  // which rounding in the coefficients is amplified in g_n.
  double amplification = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (int j = 1; j <= mult[i]; ++j) amplification += std::abs(coeff[i][j - 1]) / std::pow(std::abs(values[i]), j);
  if (amplification > 1e6)
    throw Error(ErrorKind::IllConditioned, "partial-fraction coefficients amplify rounding by " +
                                               std::to_string(amplification) + "; coalesce nearby weights");

  for (double probe : {0.0, 0.5, 2.0, 7.0}) {
    const std::complex<double> s(0.0, probe * weights.a0());
    std::complex<double> exact(gain, 0.0);
    std::complex<double> recon(0.0, 0.0);
    double magnitude = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::complex<double> inv = 1.0 / (s + values[i]);
      std::complex<double> power = inv;
      for (int j = 1; j <= mult[i]; ++j) {
        recon += coeff[i][j - 1] * power;
        magnitude += std::abs(coeff[i][j - 1] * power);
        exact *= inv;
        power *= inv;
      }
    }
    if (std::abs(recon - exact) > 1e-10 * std::abs(exact) + 1e-13 * magnitude)
      throw Error(ErrorKind::IllConditioned,
                  "partial fractions fail to reproduce the transform; coalesce nearby weights");
  }

  // 1/(s+b)^j  <->  x^{j-1}/(j-1)! e^{-b x} on x >= 0 when b > 0,
  //                -x^{j-1}/(j-1)! e^{-b x} on x <= 0 when b < 0.
  ExpSumRep rep;
  for (std::size_t i = 0; i < values.size(); ++i) {
    ExpTerm term;
    term.rate = values[i];
    const double sign = values[i] > 0 ? 1.0 : -1.0;
    double factorial = 1.0;
    for (int j = 1; j <= mult[i]; ++j) {
      if (j > 1) factorial *= (j - 1);
      term.poly.push_back(sign * coeff[i][j - 1] / factorial);
    }
    (values[i] > 0 ? rep.positive_side : rep.negative_side).push_back(std::move(term));
  }
  return rep;
}

struct HighPrecisionTp::Impl {
  DividedDifferenceRule<Quad> rule;
};

HighPrecisionTp::HighPrecisionTp(const WeightMultiset& weights)
    : weights_(weights), impl_(std::make_unique<Impl>(Impl{DividedDifferenceRule<Quad>(weights)})) {
  majorant_ = impl_->rule.exp_sum();
}

HighPrecisionTp::~HighPrecisionTp() = default;
HighPrecisionTp::HighPrecisionTp(HighPrecisionTp&&) noexcept = default;
HighPrecisionTp& HighPrecisionTp::operator=(HighPrecisionTp&&) noexcept = default;

double HighPrecisionTp::operator()(double x) const {
  return static_cast<double>(impl_->rule.value(Quad(x)));
}

}  // namespace zaktp
