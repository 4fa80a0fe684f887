#pragma once

// Exponential B-splines on the integer knots 0, 1, ..., m.
//
// B_Lambda = e^{l_1 .} chi_[0,1) * ... * e^{l_m .} chi_[0,1), built by exact
// convolution of exponential polynomials. Each piece is stored in the local
// coordinate u = x - k, u in [0,1), as a sum p_j(u) e^{eta_j u}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "zaktp/weights.hpp"

namespace zaktp {

/// p(u) e^{eta u}; coefficients in ascending powers of u.
template <class T>
struct ExpPolyTerm {
  double eta = 0.0;
  std::vector<T> poly;
};

template <class T>
using ExpPolyPiece = std::vector<ExpPolyTerm<T>>;

namespace detail {

template <class T>
T horner(const std::vector<T>& poly, double u) {
  T acc{};
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * u + *it;
  return acc;
}

template <class T>
std::vector<T> poly_derivative(const std::vector<T>& poly) {
  std::vector<T> d;
  for (std::size_t i = 1; i < poly.size(); ++i) d.push_back(poly[i] * static_cast<double>(i));
  return d;
}

/// Adds scale * poly to the term with exponent eta, creating it if needed.
template <class T>
void accumulate(ExpPolyPiece<T>& piece, double eta, const std::vector<T>& poly, T scale) {
  auto it = std::find_if(piece.begin(), piece.end(), [&](const auto& t) { return t.eta == eta; });
  if (it == piece.end()) {
    piece.push_back({eta, {}});
    it = std::prev(piece.end());
  }
  if (it->poly.size() < poly.size()) it->poly.resize(poly.size(), T{});
  for (std::size_t i = 0; i < poly.size(); ++i) it->poly[i] += scale * poly[i];
}

}  // namespace detail

/// Piecewise exponential polynomial supported on [0, m).
template <class T>
class BasicPiecewiseExpPoly {
 public:
  using value_type = T;

  BasicPiecewiseExpPoly() = default;
  explicit BasicPiecewiseExpPoly(std::vector<ExpPolyPiece<T>> pieces) : pieces_(std::move(pieces)) {}

  int size() const noexcept { return static_cast<int>(pieces_.size()); }
  const ExpPolyPiece<T>& piece(int k) const { return pieces_.at(k); }
  const std::vector<ExpPolyPiece<T>>& pieces() const noexcept { return pieces_; }

  /// Value of piece k at local coordinate u. u = 1 yields the left limit at
  /// knot k + 1.
  T local(int k, double u) const {
    T sum{};
    for (const auto& t : pieces_[k]) sum += detail::horner(t.poly, u) * std::exp(t.eta * u);
    return sum;
  }

  /// 0 outside [0, m).
  T operator()(double x) const {
    if (!(x >= 0.0) || x >= size()) return T{};
    const int k = std::min(static_cast<int>(std::floor(x)), size() - 1);
    return local(k, x - k);
  }

  /// Piecewise derivative (knot jumps ignored).
  BasicPiecewiseExpPoly derivative() const {
    std::vector<ExpPolyPiece<T>> out;
    for (const auto& piece : pieces_) {
      ExpPolyPiece<T> next;
      for (const auto& t : piece) {
        std::vector<T> poly = detail::poly_derivative(t.poly);
        poly.resize(std::max(poly.size(), t.poly.size()), T{});
        for (std::size_t i = 0; i < t.poly.size(); ++i) poly[i] += t.eta * t.poly[i];
        next.push_back({t.eta, std::move(poly)});
      }
      out.push_back(std::move(next));
    }
    return BasicPiecewiseExpPoly(std::move(out));
  }

  /// Crude sup bound of |piece k| over u in [0,1].
  double magnitude_bound(int k) const {
    double bound = 0.0;
    for (const auto& t : pieces_[k]) {
      double coef = 0.0;
      for (const auto& c : t.poly) coef += std::abs(c);
      bound += coef * std::exp(std::max(t.eta, 0.0));
    }
    return bound;
  }

  /// Rigorous sup of |piece k| from `samples` uniform samples plus half a
  /// sample spacing times a bound on the derivative.
  double sup_bound(int k, int samples = 512) const {
    double best = 0.0;
    for (int i = 0; i <= samples; ++i)
      best = std::max(best, std::abs(local(k, static_cast<double>(i) / samples)));
    const BasicPiecewiseExpPoly d = derivative();
    return best + 0.5 / samples * d.magnitude_bound(k);
  }

  BasicPiecewiseExpPoly scaled(T factor) const {
    auto out = pieces_;
    for (auto& piece : out)
      for (auto& t : piece)
        for (auto& c : t.poly) c *= factor;
    return BasicPiecewiseExpPoly(std::move(out));
  }

 private:
  std::vector<ExpPolyPiece<T>> pieces_;
};

using PiecewiseExpPoly = BasicPiecewiseExpPoly<double>;
using ComplexPiecewiseExpPoly = BasicPiecewiseExpPoly<std::complex<double>>;

/// EB-spline weights; zeros are legal.
struct WeightVector {
  std::vector<double> values;
  std::vector<Cluster> clusters;

  int size() const noexcept { return static_cast<int>(values.size()); }
};

/// Groups values within `coalesce_tol` into clusters (mean value); the
/// returned `values` are the cluster representatives, in input order.
/// Throws EmptyInput or NonFiniteWeight.
WeightVector make_weight_vector(std::span<const double> values, double coalesce_tol = 1e-9);

inline WeightVector make_weight_vector(std::initializer_list<double> values,
                                       double coalesce_tol = 1e-9) {
  return make_weight_vector(std::span<const double>(values.begin(), values.size()), coalesce_tol);
}

/// Lambda = -a for the TP weights a; the EB-spline that factors Zg_n.
WeightVector tp_spline_weights(const WeightMultiset& weights);

PiecewiseExpPoly build_ebspline(const WeightVector& lambda);

inline double eval_ebspline(const PiecewiseExpPoly& spline, double x) { return spline(x); }

/// prod_j (e^{l_j - 2 pi i w} - 1) / (l_j - 2 pi i w).
std::complex<double> fourier_ebspline(const WeightVector& lambda, double omega);

/// e^{eta x} d/dx (e^{-eta x} f), applied piece by piece.
template <class T>
BasicPiecewiseExpPoly<T> reduce(const BasicPiecewiseExpPoly<T>& f, double eta) {
  std::vector<ExpPolyPiece<T>> out;
  for (const auto& piece : f.pieces()) {
    ExpPolyPiece<T> next;
    for (const auto& t : piece) {
      std::vector<T> poly = detail::poly_derivative(t.poly);
      if (t.eta != eta) {
        poly.resize(t.poly.size(), T{});
        for (std::size_t i = 0; i < t.poly.size(); ++i) poly[i] += (t.eta - eta) * t.poly[i];
      }
      next.push_back({t.eta, std::move(poly)});
    }
    out.push_back(std::move(next));
  }
  return BasicPiecewiseExpPoly<T>(std::move(out));
}

}  // namespace zaktp
