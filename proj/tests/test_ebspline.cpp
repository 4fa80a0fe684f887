#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "zaktp/ebspline.hpp"
#include "zaktp/errors.hpp"

using namespace zaktp;

TEST_CASE("box, hat and exponential pieces") {
  const auto box = build_ebspline(make_weight_vector({0.0}));
  CHECK(box.size() == 1);
  CHECK(box(0.0) == 1.0);
  CHECK(box(0.999) == 1.0);
  CHECK(box(1.0) == 0.0);
  CHECK(box(-1e-15) == 0.0);

  const auto hat = build_ebspline(make_weight_vector({0.0, 0.0}));
  REQUIRE(hat.size() == 2);
  for (double x : {0.0, 0.2, 0.5, 1.0, 1.3, 1.9}) CHECK(hat(x) == doctest::Approx(1.0 - std::abs(x - 1.0)));

  const auto e = build_ebspline(make_weight_vector({-1.5}));
  CHECK(e(0.4) == doctest::Approx(std::exp(-0.6)));
}

TEST_CASE("matches recursive quadrature") {
  test::WeightSampler sampler(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + trial % 4;
    std::vector<double> lambda;
    for (int j = 0; j < m; ++j) lambda.push_back(sampler.uniform(-4.0, 3.0));
    if (trial % 5 == 0 && m >= 2) lambda[1] = lambda[0];  // repeated weight
    const auto w = make_weight_vector(lambda, 0.0);
    const auto B = build_ebspline(w);
    REQUIRE(B.size() == m);
    for (double x = -0.5; x < m + 0.5; x += 0.137) {
      INFO("trial " << trial << " x " << x);
      const double expect = test::spline_by_quadrature(lambda, x);
      CHECK(B(x) == doctest::Approx(expect).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("partition of unity for the cardinal B-spline") {
  for (int m = 1; m <= 6; ++m) {
    const auto B = build_ebspline(make_weight_vector(std::vector<double>(m, 0.0)));
    for (double x = 0.0; x < 1.0; x += 0.0625) {
      double sum = 0.0;
      for (int k = 0; k < m; ++k) sum += B(x + k);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("continuity of order m-2 at knots") {
  const auto B = build_ebspline(make_weight_vector({-1.0, 0.5, 2.0, -0.3}));
  auto d = B;
  for (int order = 0; order <= 2; ++order) {
    for (int k = 1; k < B.size(); ++k) CHECK(d.local(k - 1, 1.0) == doctest::Approx(d.local(k, 0.0)).scale(1.0));
    CHECK(d.local(0, 0.0) == doctest::Approx(0.0).scale(1.0));
    CHECK(d.local(B.size() - 1, 1.0) == doctest::Approx(0.0).scale(1.0));
    d = d.derivative();
  }
}

TEST_CASE("Fourier transform against quadrature") {
  const std::vector<double> lambda{-1.0, 0.7, -2.5};
  const auto B = build_ebspline(make_weight_vector(lambda));
  for (double omega : {0.0, 0.1, 0.5, 1.7, -0.9}) {
    double re = 0.0, im = 0.0;
    for (int k = 0; k < B.size(); ++k) {
      re += test::gauss_integral([&](double x) { return B(x) * std::cos(test::kTwoPi * omega * x); }, k, k + 1, 4);
      im -= test::gauss_integral([&](double x) { return B(x) * std::sin(test::kTwoPi * omega * x); }, k, k + 1, 4);
    }
    CHECK(test::relative_error({re, im}, fourier_ebspline(make_weight_vector(lambda), omega)) < 1e-12);
  }
  // Small |lambda - 2 pi i w| takes the series branch.
  const auto f = fourier_ebspline(make_weight_vector({1e-4}), 0.0);
  CHECK(f.real() == doctest::Approx(std::expm1(1e-4) / 1e-4).epsilon(1e-15));
}

TEST_CASE("exponential reduction drops one weight") {
  // e^{eta x} d/dx (e^{-eta x} B_L)(x) = B_{L'}(x) - e^{eta} B_{L'}(x - 1), L' = L without eta.
  const std::vector<double> lambda{0.4, -1.2, 2.0};
  const auto B = build_ebspline(make_weight_vector(lambda));
  const auto D = reduce(B, 0.4);
  const auto rest = build_ebspline(make_weight_vector({-1.2, 2.0}));
  for (double x = 0.05; x < 3.0; x += 0.1) CHECK(D(x) == doctest::Approx(rest(x) - std::exp(0.4) * rest(x - 1.0)).scale(1.0));
}

TEST_CASE("TP spline weights and errors") {
  const auto w = tp_spline_weights(make_weights({2.0, -1.0, 2.0}));
  CHECK(w.size() == 3);
  REQUIRE(w.clusters.size() == 2);
  CHECK(w.clusters[0] == Cluster{-2.0, 2});
  CHECK(w.clusters[1] == Cluster{1.0, 1});
  CHECK_THROWS_AS(make_weight_vector(std::vector<double>{}), Error);
  CHECK_THROWS_AS(make_weight_vector({1.0, NAN}), Error);
}

TEST_CASE("sup bound dominates samples") {
  const auto B = build_ebspline(make_weight_vector({-3.0, 1.0, 0.0}));
  for (int k = 0; k < B.size(); ++k) {
    const double bound = B.sup_bound(k, 64);
    for (int i = 0; i <= 4096; ++i) CHECK(std::abs(B.local(k, i / 4096.0)) <= bound);
  }
}
