#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "zaktp/analysis.hpp"
#include "zaktp/errors.hpp"

using namespace zaktp;

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

std::vector<double> sample(const std::function<double(double)>& f, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = f(2.0 * i / n);
  return out;
}

}  // namespace

TEST_CASE("slices agree with the Zak transform") {
  const auto B = build_ebspline(make_weight_vector({-1.0, 0.4, -2.0}));
  const ComplexFrequency s{0.3, 0.05};
  const auto slice = zak_slice(B, s, 3);
  for (double x = 0.0; x < 3.0; x += 0.093) {
    CHECK(std::abs(slice(x) - zak_ebspline(B, x, s)) < 1e-13);
  }
  const auto half = zak_half_slice(B, 2);
  for (double x = 0.0; x < 2.0; x += 0.071) CHECK(half(x) == doctest::Approx(zak_ebspline(B, x, {0.5, 0.0}).real()).scale(1.0));
}

TEST_CASE("zero of Z(., 1/2)") {
  CHECK(locate_zero_half(make_weights({1.0, -1.0}), 1e-12) == doctest::Approx(0.5).epsilon(1e-11));
  const auto hat = build_ebspline(make_weight_vector({0.0, 0.0}));
  CHECK(locate_zero_half(hat) == doctest::Approx(0.5).epsilon(1e-11));
  CHECK(kind_of([] { locate_zero_half(make_weights({1.0})); }) == ErrorKind::NoZero);
  CHECK(kind_of([] { locate_zero_half(make_weights({-2.5})); }) == ErrorKind::NoZero);

  test::WeightSampler sampler(41);
  for (int trial = 0; trial < 25; ++trial) {
    const auto w = sampler.weights(2 + trial % 5);
    const double x = locate_zero_half(w, 1e-12);
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    const auto z = zak_factorized(w, x, {0.5, 0.0});
    const auto scale = std::abs(zak_factorized(w, std::fmod(x + 0.5, 1.0), {0.5, 0.0}));
    CHECK(std::abs(z) < 1e-9 * scale);
  }
  // A flat slice is rejected.
  const auto box = build_ebspline(make_weight_vector({0.0}));
  CHECK(kind_of([&] { locate_zero_half(box); }) == ErrorKind::NoZero);
}

TEST_CASE("zero-free certification") {
  const auto w = make_weights({1.0, -1.0});
  const auto c = certify_zero_free(w, {0.0, 1.0, 0.0, 0.4, 0.0, 0.0}, 1.0 / 512);
  CHECK(c.verdict == Verdict::zero_free_certified);
  CHECK(c.certified_margin > 0.0);
  CHECK(c.certified_margin <= c.min_modulus);
  CHECK(c.grid_points == std::array<int, 3>{513, 206, 1});

  const auto z = certify_zero_free(w, {0.25, 0.75, 0.25, 0.75, 0.0, 0.0}, 1.0 / 64);
  CHECK(z.verdict == Verdict::zero_found);
  REQUIRE(z.zero_location);
  CHECK(z.zero_location->x == doctest::Approx(0.5));
  CHECK(z.zero_location->omega == doctest::Approx(0.5));

  const auto line = certify_zero_free(make_weights({0.7, 2.0, -3.0}), {0.0, 1.0, 0.0, 0.0, 0.0, 0.0}, 1.0 / 256);
  CHECK(line.verdict == Verdict::zero_free_certified);

  // Off the real axis inside the strip.
  const double tau = 0.5 * w.a0() / test::kTwoPi;
  const auto strip = certify_zero_free(w, {0.0, 1.0, 0.0, 0.48, tau, tau}, 1.0 / 1024);
  CHECK(strip.verdict == Verdict::zero_free_certified);

  // A coarse grid may fail to certify, but never claims a zero-free region with a zero.
  const auto coarse = certify_zero_free(w, {0.0, 1.0, 0.3, 0.7, 0.0, 0.0}, 0.3);
  CHECK(coarse.verdict != Verdict::zero_free_certified);

  CHECK(kind_of([&] { certify_zero_free(w, {0.0, 1.0, 0.0, 0.4, 0.0, 0.2}, 0.01); }) == ErrorKind::StripViolation);
  CHECK(kind_of([&] { certify_zero_free(w, {0.0, 1.5, 0.0, 0.4, 0.0, 0.0}, 0.01); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("refined certification") {
  // Steep spline: |B'| ~ 1e5 where |Z| ~ 65, so the base grid alone cannot certify.
  const auto steep = make_weights({-4.35, -7.468});
  const auto c = certify_zero_free(steep, {0.0, 1.0, 0.0, 0.48, 0.0, 0.0}, 1.0 / 1024);
  CHECK(c.verdict == Verdict::zero_free_certified);
  CHECK(c.refined_boxes > 0);
  CHECK(c.certified_margin > 0.0);

  // Off-grid zero at (1/2, 1/2): refinement never certifies the box.
  const auto w = make_weights({1.0, -1.0});
  for (double step : {0.3, 0.07, 0.013}) {
    const auto z = certify_zero_free(w, {0.31, 0.71, 0.33, 0.69, 0.0, 0.0}, step);
    CHECK(z.verdict != Verdict::zero_free_certified);
  }
  const auto complex_box = certify_zero_free(w, {0.31, 0.71, 0.33, 0.69, -0.05, 0.05}, 0.07);
  CHECK(complex_box.verdict != Verdict::zero_free_certified);
}

TEST_CASE("Lipschitz bound dominates observed slopes") {
  const auto w = make_weights({0.9, -2.2, 3.1});
  const FactorizedZak zak(w);
  const Region r{0.0, 1.0, 0.0, 1.0, -0.05, 0.05};
  const auto c = certify_zero_free(w, r, 1.0 / 16);
  const auto& B = zak.spline();
  test::WeightSampler sampler(42);
  for (int i = 0; i < 500; ++i) {
    const double x1 = sampler.uniform(0, 1), w1 = sampler.uniform(0, 1), t1 = sampler.uniform(-0.05, 0.05);
    const double x2 = std::clamp(x1 + sampler.uniform(-0.01, 0.01), 0.0, 0.999999);
    const double w2 = w1 + sampler.uniform(-0.01, 0.01), t2 = std::clamp(t1 + sampler.uniform(-0.01, 0.01), -0.05, 0.05);
    const double d = std::hypot(x1 - x2, w1 - w2, t1 - t2);
    const double diff = std::abs(zak_ebspline(B, x1, {w1, t1}) - zak_ebspline(B, x2, {w2, t2}));
    CHECK(diff <= c.lipschitz_bound * d * (1.0 + 1e-9) + 1e-14);
  }
}

TEST_CASE("strong sign changes") {
  const std::vector<double> a{1, -1, 1}, b{0, 1, 1}, c{1, 0, -1}, d{}, e{0, 0};
  CHECK(strong_sign_changes(a) == 2);
  CHECK(strong_sign_changes(b) == 0);
  CHECK(strong_sign_changes(c) == 1);
  CHECK(strong_sign_changes(d) == 0);
  CHECK(strong_sign_changes(e) == 0);
}

TEST_CASE("unit monotone offsets") {
  const auto hat_slice = sample([](double x) { return x < 1.0 ? 2.0 * x - 1.0 : -(2.0 * (x - 1.0) - 1.0); }, 1024);
  CHECK(unit_monotone_offset(hat_slice) == 0.0);
  const auto sine = sample([](double x) { return std::sin(M_PI * x); }, 1024);
  CHECK(unit_monotone_offset(sine) == doctest::Approx(0.5));
  const auto bumps = sample([](double x) { return std::sin(2.0 * M_PI * x) + 0.3 * std::sin(M_PI * x); }, 1024);
  CHECK(kind_of([&] { unit_monotone_offset(bumps); }) == ErrorKind::NotUnitMonotone);
  CHECK(kind_of([&] { unit_monotone_offset(std::vector<double>(63, 1.0)); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("Zak slices of TP windows are unit monotone") {
  test::WeightSampler sampler(43);
  for (int trial = 0; trial < 30; ++trial) {
    const auto w = sampler.weights(1 + trial % 6);
    const auto slice = zak_half_slice(build_ebspline(tp_spline_weights(w)), 2);
    const auto samples = sample([&](double x) { return slice(x); }, 2048);
    CHECK_NOTHROW(unit_monotone_offset(samples));
  }
}

TEST_CASE("reduced slices") {
  const auto r = reduced_slice_monotonicity(make_weights({1.0, -1.0}), 0);
  CHECK(r.eta == -1.0);
  CHECK(r.slice_offset >= 0.0);
  CHECK(r.reduced_offset < 2.0);
  CHECK_NOTHROW(reduced_slice_monotonicity(make_weight_vector({0.0, 0.0}), 0));
  const auto w = make_weights({2.0, 3.0, -1.0});
  for (int k = 0; k < 3; ++k) CHECK_NOTHROW(reduced_slice_monotonicity(w, k));
  CHECK_THROWS_AS(reduced_slice_monotonicity(w, 3), Error);
}

TEST_CASE("full exponential reduction leaves one exponential per piece") {
  const auto lambda = make_weight_vector({-1.0, -1.0, 0.5, 2.0});
  const auto slice = zak_slice(build_ebspline(lambda), {0.3, 0.0}, 2);
  const auto reduced = exponential_reduction(slice, lambda.clusters);
  for (const auto& piece : reduced.pieces()) {
    for (const auto& term : piece) {
      if (term.eta == lambda.clusters[0].value) {
        CHECK(term.poly.size() <= 1);
      } else {
        for (const auto& c : term.poly) CHECK(std::abs(c) < 1e-12);
      }
    }
  }
  // Each unit piece is then c e^{eta_1 u}, which has no interior sign change.
  CHECK(reduced_slice_sign_changes(lambda, 0.3, 2) <= 2);
}

TEST_CASE("verdict names round-trip") {
  for (auto v : {Verdict::zero_free_certified, Verdict::zero_found, Verdict::inconclusive})
    CHECK(verdict_from_name(verdict_name(v)) == v);
  CHECK_THROWS_AS(verdict_from_name("maybe"), Error);
}
