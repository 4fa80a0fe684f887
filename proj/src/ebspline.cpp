#include "zaktp/ebspline.hpp"

#include <numbers>
#include <numeric>

#include "zaktp/errors.hpp"

namespace zaktp {

namespace {

// One convolution with e^{lam t} chi_[0,1)(t):
//   h_k(u) = e^{lam u} [ e^{lam} int_u^1 e^{-lam v} f_{k-1}(v) dv
//                        + int_0^u e^{-lam v} f_k(v) dv ].
std::vector<ExpPolyPiece<double>> convolve_box(const std::vector<ExpPolyPiece<double>>& f, double lam) {
  const std::size_t m = f.size();
  std::vector<ExpPolyPiece<double>> out(m + 1);
  const double e_lam = std::exp(lam);
  for (std::size_t k = 0; k < m; ++k) {
    for (const auto& term : f[k]) {
      const auto& p = term.poly;
      if (p.empty()) continue;
      const double c = term.eta - lam;
      if (c == 0.0) {
        // Antiderivative of p with zero constant term.
        std::vector<double> a(p.size() + 1, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) a[i + 1] = p[i] / static_cast<double>(i + 1);
        const double a_one = std::accumulate(a.begin(), a.end(), 0.0);
        detail::accumulate(out[k], lam, a, 1.0);
        detail::accumulate(out[k + 1], lam, {a_one}, e_lam);
        detail::accumulate(out[k + 1], lam, a, -e_lam);
      } else {
        // q' + c q = p, so (q e^{cv})' = p e^{cv}.
        std::vector<double> q(p.size(), 0.0);
        for (std::size_t i = p.size(); i-- > 0;) {
          const double next = (i + 1 < q.size()) ? static_cast<double>(i + 1) * q[i + 1] : 0.0;
          q[i] = (p[i] - next) / c;
        }
        const double q_one = std::accumulate(q.begin(), q.end(), 0.0);
        detail::accumulate(out[k], term.eta, q, 1.0);
        detail::accumulate(out[k], lam, {q[0]}, -1.0);
        detail::accumulate(out[k + 1], lam, {q_one * std::exp(term.eta)}, 1.0);
        detail::accumulate(out[k + 1], term.eta, q, -e_lam);
      }
    }
  }
  return out;
}

}  // namespace

WeightVector make_weight_vector(std::span<const double> values, double coalesce_tol) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "EB-spline weight list is empty");
  for (double v : values)
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteWeight, "EB-spline weight is not finite");

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });

  WeightVector w;
  w.values.assign(values.begin(), values.end());
  std::size_t start = 0;
  for (std::size_t i = 1; i <= order.size(); ++i) {
    if (i == order.size() || values[order[i]] - values[order[i - 1]] > coalesce_tol) {
      double sum = 0.0;
      for (std::size_t k = start; k < i; ++k) sum += values[order[k]];
      const int count = static_cast<int>(i - start);
      const double mean = sum / count;
      for (std::size_t k = start; k < i; ++k) w.values[order[k]] = mean;
      w.clusters.push_back({mean, count});
      start = i;
    }
  }
  return w;
}

WeightVector tp_spline_weights(const WeightMultiset& weights) {
  std::vector<double> lambda;
  for (const auto& c : weights.clusters())
    for (int k = 0; k < c.multiplicity; ++k) lambda.push_back(-c.value);
  return make_weight_vector(lambda, 0.0);
}

PiecewiseExpPoly build_ebspline(const WeightVector& lambda) {
  if (lambda.values.empty()) throw Error(ErrorKind::EmptyInput, "EB-spline needs at least one weight");
  std::vector<ExpPolyPiece<double>> pieces{{{lambda.values.front(), {1.0}}}};
  for (std::size_t j = 1; j < lambda.values.size(); ++j) pieces = convolve_box(pieces, lambda.values[j]);
  return PiecewiseExpPoly(std::move(pieces));
}

std::complex<double> fourier_ebspline(const WeightVector& lambda, double omega) {
  std::complex<double> prod(1.0, 0.0);
  for (double l : lambda.values) {
    const std::complex<double> z(l, -2.0 * std::numbers::pi * omega);
    if (std::abs(z) < 1e-2) {
      // (e^z - 1)/z = sum_k z^k/(k+1)!
      std::complex<double> sum(0.0, 0.0);
      std::complex<double> term(1.0, 0.0);
      for (int k = 0; k < 10; ++k) {
        sum += term;
        term *= z / static_cast<double>(k + 2);
      }
      prod *= sum;
    } else {
      prod *= (std::exp(z) - 1.0) / z;
    }
  }
  return prod;
}

}  // namespace zaktp
