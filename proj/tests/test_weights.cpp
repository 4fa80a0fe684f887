#include <doctest.h>

#include <cmath>

#include "reference_values.hpp"
#include "support.hpp"
#include "zaktp/errors.hpp"
#include "zaktp/weights.hpp"

using namespace zaktp;
using zaktp::test::WeightSampler;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("make_weights validates and clusters") {
  CHECK(kind_of([] { make_weights(std::vector<double>{}); }) == ErrorKind::EmptyInput);
  CHECK(kind_of([] { make_weights({1.0, 0.0}); }) == ErrorKind::ZeroWeight);
  CHECK(kind_of([] { make_weights({1.0, NAN}); }) == ErrorKind::NonFiniteWeight);
  CHECK(kind_of([] { make_weights({1.0, INFINITY}); }) == ErrorKind::NonFiniteWeight);

  const auto w = make_weights({3.0, -1.0, 3.0 + 1e-12, 2.0});
  REQUIRE(w.clusters().size() == 3);
  CHECK(w.clusters()[0] == Cluster{-1.0, 1});
  CHECK(w.clusters()[1] == Cluster{2.0, 1});
  CHECK(w.clusters()[2].multiplicity == 2);
  CHECK(w.clusters()[2].value == doctest::Approx(3.0));
  CHECK(w.size() == 4);
  CHECK(w.a0() == 1.0);
  CHECK(w.right_rate() == 2.0);
  CHECK(w.left_rate() == 1.0);
  CHECK(w.mean_shift() == doctest::Approx(-1.0 + 0.5 + 2.0 / 3.0));

  CHECK(make_weights({1.0, -1.0}).is_even());
  CHECK(make_weights({2.0, -1.0, 1.0, -2.0}).is_even());
  CHECK_FALSE(make_weights({1.0, -2.0}).is_even());
  CHECK_FALSE(make_weights({1.0, 1.0, -1.0}).is_even());
}

TEST_CASE("eval_tp matches symbolic convolution values") {
  for (const auto& ref : test::reference_values()) {
    const auto w = make_weights(ref.weights);
    INFO("weights size " << ref.weights.size() << " x = " << ref.x);
    CHECK(eval_tp(w, ref.x) == doctest::Approx(ref.value).epsilon(1e-12).scale(1.0));
    CHECK(exp_sum_rep(w)(ref.x) == doctest::Approx(ref.value).epsilon(1e-12).scale(1.0));
    CHECK(HighPrecisionTp(w)(ref.x) == doctest::Approx(ref.value).epsilon(1e-14).scale(1.0));
  }
}

TEST_CASE("closed forms for small n") {
  const auto g1 = make_weights({1.0});
  const auto g2 = make_weights({1.0, -1.0});
  for (double x : {0.0, 0.25, 1.0, 3.0}) {
    CHECK(eval_tp(g1, x) == doctest::Approx(std::exp(-x)));
    CHECK(eval_tp(g2, x) == doctest::Approx(0.5 * std::exp(-x)));
    CHECK(eval_tp(g2, -x) == doctest::Approx(0.5 * std::exp(-x)));
  }
  CHECK(eval_tp(g1, -1e-12) == 0.0);
  CHECK(eval_tp(make_weights({-2.0}), -0.5) == doctest::Approx(2.0 * std::exp(-1.0)));
  // Repeated weight: a^2 x e^{-a x}.
  CHECK(eval_tp(make_weights({2.0, 2.0}), 0.7) == doctest::Approx(4.0 * 0.7 * std::exp(-1.4)));
}

TEST_CASE("divided differences") {
  // [a|f] for polynomials of degree n-1 is the leading coefficient.
  const auto w = make_weights({0.5, 1.5, 2.0, 2.0, -1.0});
  const SmoothFunction quartic{[](double t, int k) {
                                 switch (k) {
                                   case 0: return 3.0 * t * t * t * t - t + 2.0;
                                   case 1: return 12.0 * t * t * t - 1.0;
                                   case 2: return 36.0 * t * t;
                                   case 3: return 72.0 * t;
                                   default: return 72.0;
                                 }
                               },
                               4};
  CHECK(divided_difference(w, quartic) == doctest::Approx(3.0));

  // Fully confluent: f^(n-1)(a) / (n-1)!.
  const auto triple = make_weights({0.3, 0.3, 0.3});
  const SmoothFunction ex{[](double t, int) { return std::exp(t); }, 10};
  CHECK(divided_difference(triple, ex) == doctest::Approx(std::exp(0.3) / 2.0));

  const SmoothFunction flat{[](double t, int) { return t; }, 0};
  CHECK(kind_of([&] { divided_difference(make_weights({1.0, 1.0}), flat); }) == ErrorKind::DerivativeUnavailable);
}

TEST_CASE("random weight sets: routes agree and integrate to one") {
  WeightSampler sampler(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto w = sampler.weights(1 + trial % 6);
    const auto rep = exp_sum_rep(w);
    const HighPrecisionTp hp(w);
    for (double x : {-3.0, -0.7, -0.1, 0.0, 0.1, 0.9, 2.2, 5.0}) {
      INFO("trial " << trial << " x " << x);
      CHECK(eval_tp(w, x) == doctest::Approx(hp(x)).epsilon(1e-9).scale(1.0));
      CHECK(rep(x) == doctest::Approx(hp(x)).epsilon(1e-9).scale(1.0));
    }
    const auto g = [&](double x) { return hp(x); };
    CHECK(test::fourier_by_quadrature(g, 0.0).real() == doctest::Approx(1.0).epsilon(1e-8));
    for (double omega : {0.3, -1.1}) {
      const auto numeric = test::fourier_by_quadrature(g, omega);
      CHECK(test::relative_error(numeric, fourier_tp(w, omega)) < 1e-7);
    }
  }
}

TEST_CASE("g_n is nonnegative and decays at rate a0") {
  WeightSampler sampler(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = sampler.weights(2 + trial % 5);
    for (double x = -6.0; x <= 6.0; x += 0.05) CHECK(eval_tp(w, x) >= -1e-14);
    // g(x) e^{a0 |x|} grows at most polynomially.
    const double far = eval_tp(w, 30.0 / w.a0()) * std::exp(30.0);
    const double far_left = eval_tp(w, -30.0 / w.a0()) * std::exp(30.0);
    CHECK(std::max(far, far_left) < 1e8);
  }
}

TEST_CASE("high precision survives 64 harmonic weights") {
  std::vector<double> a;
  for (int v = 1; v <= 64; ++v) a.push_back(v);
  const auto w = make_weights(a);
  const HighPrecisionTp hp(w);
  double mass = 0.0;
  const double h = 1e-3;
  for (double x = h / 2; x < 40.0; x += h) {
    const double v = hp(x);
    CHECK(v >= -1e-12);
    mass += v * h;
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("ill-conditioned partial fractions are detected") {
  std::vector<double> a;
  for (int v = 1; v <= 40; ++v) a.push_back(v);
  CHECK(kind_of([&] { exp_sum_rep(make_weights(a)); }) == ErrorKind::IllConditioned);
}

TEST_CASE("error names are verbatim") {
  CHECK(std::string(error_name(ErrorKind::NoZero)) == "NoZero");
  CHECK(std::string(error_name(ErrorKind::StripViolation)) == "StripViolation");
  const Error e(ErrorKind::PoleHit, "detail");
  CHECK(std::string(e.what()) == "PoleHit: detail");
}
