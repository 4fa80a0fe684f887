#include "zaktp/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <boost/math/special_functions/trigamma.hpp>

#include "zaktp/errors.hpp"
#include "zaktp/parallel.hpp"
#include "zaktp/zak.hpp"

namespace zaktp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double parse_number(const std::string& text, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v))
    throw Error(ErrorKind::InvalidArgument, "bad number '" + text + "' in " + context);
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

double shift_of(const WeightMultiset& w, Centering centering) {
  return centering == Centering::mean ? w.mean_shift() : 0.0;
}

// Samples of one centered truncation along x + k, k = -K..K, for each x.
struct LatticeSamples {
  std::vector<long> fold;  // n0 with x + shift = n0 + y0
  std::vector<std::vector<double>> values;
  long K = 0;
};

LatticeSamples lattice_samples(const WeightMultiset& w, Centering centering, const std::vector<double>& xs,
                               double xi) {
  const HighPrecisionTp g(w);
  const double shift = shift_of(w, centering);
  LatticeSamples out;
  out.fold.resize(xs.size());
  out.values.resize(xs.size());
  std::vector<double> y0(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double y = xs[i] + shift;
    out.fold[i] = static_cast<long>(std::floor(y));
    y0[i] = y - static_cast<double>(out.fold[i]);
    for (double tau : {xi, -xi})
      out.K = std::max(out.K, lattice_terms_for(g.majorant(), y0[i], 1.0, tau, 1e-20));
  }
  parallel_for(xs.size(), [&](std::size_t i) {
    auto& v = out.values[i];
    v.resize(2 * out.K + 1);
    for (long k = -out.K; k <= out.K; ++k) v[k + out.K] = g(y0[i] + static_cast<double>(k));
  });
  return out;
}

}  // namespace

const char* generator_rule_name(GeneratorRule rule) noexcept {
  switch (rule) {
    case GeneratorRule::harmonic: return "harmonic";
    case GeneratorRule::alternating: return "alternating";
    case GeneratorRule::geometric: return "geometric";
    case GeneratorRule::explicit_list: return "list";
  }
  return "list";
}

double WeightGenerator::weight(int nu) const {
  if (nu < 1) throw Error(ErrorKind::InvalidArgument, "weight index starts at 1");
  switch (rule) {
    case GeneratorRule::harmonic: return nu * c;
    case GeneratorRule::alternating: return (nu % 2 == 0 ? 1.0 : -1.0) * nu * c;
    case GeneratorRule::geometric: return c * std::pow(r, nu);
    case GeneratorRule::explicit_list:
      if (nu > static_cast<int>(values.size()))
        throw Error(ErrorKind::InvalidArgument,
                    "explicit list has only " + std::to_string(values.size()) + " weights");
      return values[nu - 1];
  }
  return 0.0;
}

double WeightGenerator::square_sum_tail(int n) const {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "tail index must be nonnegative");
  switch (rule) {
    case GeneratorRule::harmonic:
    case GeneratorRule::alternating:
      // sum_{nu > n} nu^{-2} = psi'(n + 1)
      return boost::math::trigamma(static_cast<double>(n) + 1.0) / (c * c);
    case GeneratorRule::geometric: {
      const double q = 1.0 / (r * r);
      return std::pow(q, n + 1) / (c * c * (1.0 - q));
    }
    case GeneratorRule::explicit_list: {
      double sum = 0.0;
      for (std::size_t i = static_cast<std::size_t>(n); i < values.size(); ++i) sum += 1.0 / (values[i] * values[i]);
      return sum;
    }
  }
  return 0.0;
}

WeightGenerator WeightGenerator::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  WeightGenerator gen;
  if (name == "list") {
    gen.rule = GeneratorRule::explicit_list;
    for (const auto& item : split(rest, ',')) gen.values.push_back(parse_number(item, "weight list"));
    if (gen.values.empty()) throw Error(ErrorKind::EmptyInput, "generator list is empty");
    for (double v : gen.values)
      if (v == 0.0) throw Error(ErrorKind::ZeroWeight, "generator list contains 0");
    return gen;
  }
  if (name == "harmonic") {
    gen.rule = GeneratorRule::harmonic;
  } else if (name == "alternating") {
    gen.rule = GeneratorRule::alternating;
  } else if (name == "geometric") {
    gen.rule = GeneratorRule::geometric;
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown generator '" + name + "'");
  }
  for (const auto& item : split(rest, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidArgument, "expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const double value = parse_number(item.substr(eq + 1), "generator " + name);
    if (key == "c") {
      gen.c = value;
    } else if (key == "r" && gen.rule == GeneratorRule::geometric) {
      gen.r = value;
    } else {
      throw Error(ErrorKind::InvalidArgument, "unknown parameter '" + key + "' for " + name);
    }
  }
  if (gen.c == 0.0) throw Error(ErrorKind::ZeroWeight, "generator scale c must be nonzero");
  if (gen.rule == GeneratorRule::geometric && !(gen.r > 1.0))
    throw Error(ErrorKind::InvalidArgument, "geometric ratio r must exceed 1");
  return gen;
}

WeightMultiset truncate(const WeightGenerator& gen, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "truncation needs n >= 1");
  std::vector<double> w;
  for (int nu = 1; nu <= n; ++nu) w.push_back(gen.weight(nu));
  return make_weights(w);
}

std::vector<double> line_grid(double R, int points) {
  if (!(R > 0.0) || points < 2) throw Error(ErrorKind::InvalidArgument, "line grid needs R > 0 and >= 2 points");
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) out[i] = -R + 2.0 * R * i / (points - 1);
  return out;
}

double weighted_sup_distance(const WeightMultiset& w_n, const WeightMultiset& w_m, double sigma,
                             std::span<const double> grid, Centering centering) {
  const double a0 = std::min(w_n.a0(), w_m.a0());
  if (!(sigma >= 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma must be nonnegative");
  if (sigma >= a0) throw Error(ErrorKind::SigmaTooLarge, "sigma must stay below a0 = " + std::to_string(a0));
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty evaluation grid");
  const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
  const double R = 40.0 / a0;
  if (*lo > -R * (1.0 - 1e-12) || *hi < R * (1.0 - 1e-12))
    throw Error(ErrorKind::InvalidArgument, "grid must cover [-40/a0, 40/a0]");

  const HighPrecisionTp g_n(w_n);
  const HighPrecisionTp g_m(w_m);
  const double s_n = shift_of(w_n, centering);
  const double s_m = shift_of(w_m, centering);
  std::vector<double> dist(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const double x = grid[i];
    dist[i] = std::abs(g_n(x + s_n) - g_m(x + s_m)) * std::exp(sigma * std::abs(x));
  });
  return *std::max_element(dist.begin(), dist.end());
}

double zak_strip_distance(const WeightMultiset& w_n, const WeightMultiset& w_m, double xi,
                          const StripGrid& grid, Centering centering) {
  if (!(xi >= 0.0)) throw Error(ErrorKind::InvalidArgument, "xi must be nonnegative");
  const double a0 = std::min(w_n.a0(), w_m.a0());
  if (xi >= strip_limit(a0))
    throw Error(ErrorKind::StripViolation, "xi must stay below a0/(2 pi) = " + std::to_string(a0 / kTwoPi));
  if (grid.x_points < 1 || grid.tau_points < 1 || grid.omegas.empty())
    throw Error(ErrorKind::InvalidArgument, "empty strip grid");

  std::vector<double> xs(grid.x_points);
  for (int i = 0; i < grid.x_points; ++i) xs[i] = static_cast<double>(i) / grid.x_points;
  std::vector<double> taus;
  if (grid.tau_points == 1 || xi == 0.0) {
    taus.push_back(0.0);
  } else {
    for (int j = 0; j < grid.tau_points; ++j) taus.push_back(-xi + 2.0 * xi * j / (grid.tau_points - 1));
  }

  const LatticeSamples a = lattice_samples(w_n, centering, xs, xi);
  const LatticeSamples b = lattice_samples(w_m, centering, xs, xi);

  const auto zak = [](const LatticeSamples& f, std::size_t i, std::complex<double> s) {
    const std::complex<double> phase = std::complex<double>(0.0, -kTwoPi) * s;
    std::complex<double> sum(0.0, 0.0);
    for (long k = -f.K; k <= f.K; ++k) {
      const double v = f.values[i][k + f.K];
      if (v != 0.0) sum += v * std::exp(phase * static_cast<double>(k));
    }
    return std::exp(-phase * static_cast<double>(f.fold[i])) * sum;
  };

  std::vector<double> row_max(xs.size(), 0.0);
  parallel_for(xs.size(), [&](std::size_t i) {
    for (double tau : taus)
      for (double omega : grid.omegas) {
        const std::complex<double> s(omega, tau);
        row_max[i] = std::max(row_max[i], std::abs(zak(a, i, s) - zak(b, i, s)));
      }
  });
  return *std::max_element(row_max.begin(), row_max.end());
}

std::complex<double> eval_reciprocal_laplace(const WeightMultiset& weights, std::complex<double> s) {
  std::complex<double> prod(1.0, 0.0);
  for (const auto& c : weights.clusters()) {
    const std::complex<double> z = s / c.value;
    const std::complex<double> factor = (1.0 + z) * std::exp(-z);
    for (int k = 0; k < c.multiplicity; ++k) prod *= factor;
  }
  return prod;
}

PsiDecay psi_decay_diagnostic(const WeightMultiset& weights, double omega, std::span<const double> taus, int p) {
  if (p < 1 || p > weights.size()) throw Error(ErrorKind::InvalidArgument, "need 1 <= p <= n");
  if (taus.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two tau samples");
  std::vector<std::pair<double, double>> pts;  // (log|tau|, log|1/Psi|)
  for (double tau : taus) {
    if (tau == 0.0 || !std::isfinite(tau)) throw Error(ErrorKind::InvalidArgument, "tau samples must be finite and nonzero");
    const double mod = std::abs(eval_reciprocal_laplace(weights, {omega, tau}));
    pts.emplace_back(std::log(std::abs(tau)), -std::log(mod));
  }
  std::sort(pts.begin(), pts.end());

  PsiDecay out;
  out.monotone = true;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].second > pts[i - 1].second + 1e-12 * std::abs(pts[i - 1].second)) out.monotone = false;

  const double n = static_cast<double>(pts.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0.0) throw Error(ErrorKind::InvalidArgument, "tau samples need distinct |tau|");
  out.exponent = sxy / sxx;
  return out;
}

std::vector<SweepRow> convergence_sweep(const WeightGenerator& gen, const SweepConfig& config) {
  const WeightMultiset ref = truncate(gen, config.n_ref);
  const double a0 = ref.a0();
  double parameter = config.parameter;
  if (parameter < 0.0) parameter = config.mode == SweepMode::weighted_sup ? a0 / 2.0 : 0.5 * a0 / kTwoPi;

  std::vector<double> grid;
  if (config.mode == SweepMode::weighted_sup) grid = line_grid(40.0 / a0, config.line_points);

  std::vector<SweepRow> rows;
  for (int n : config.ns) {
    const WeightMultiset w = truncate(gen, n);
    SweepRow row;
    row.n = n;
    row.sigma_or_xi = parameter;
    row.distance = config.mode == SweepMode::weighted_sup
                       ? weighted_sup_distance(w, ref, parameter, grid, config.centering)
                       : zak_strip_distance(w, ref, parameter, config.strip, config.centering);
    row.tail_proxy = gen.square_sum_tail(n);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace zaktp
