#include "zaktp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zaktp/analysis.hpp"
#include "zaktp/convergence.hpp"
#include "zaktp/errors.hpp"
#include "zaktp/frames.hpp"
#include "zaktp/report.hpp"
#include "zaktp/weights.hpp"
#include "zaktp/zak.hpp"

namespace zaktp {

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double to_number(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Usage("not a number: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::vector<double> number_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(to_number(item));
  return out;
}

std::pair<double, double> interval(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) {
    const double v = to_number(parts[0]);
    return {v, v};
  }
  if (parts.size() != 2) throw Usage("expected lo:hi, got '" + text + "'");
  return {to_number(parts[0]), to_number(parts[1])};
}

std::pair<int, int> resolution(const std::string& text) {
  const auto parts = split(text, 'x');
  if (parts.size() != 2) throw Usage("expected NXxNW, got '" + text + "'");
  const double a = to_number(parts[0]);
  const double b = to_number(parts[1]);
  if (a < 1 || b < 1 || a != std::floor(a) || b != std::floor(b)) throw Usage("bad resolution '" + text + "'");
  return {static_cast<int>(a), static_cast<int>(b)};
}

struct Common {
  std::string weights;
  std::string gen;
  int n = 0;
  std::string format;
  std::string out_path;

  WeightMultiset resolve() const {
    if (!weights.empty() && !gen.empty()) throw Usage("give either --weights or --gen, not both");
    if (!weights.empty()) return make_weights(number_list(weights));
    if (!gen.empty()) {
      if (n < 1) throw Usage("--gen needs --n");
      return truncate(WeightGenerator::parse(gen), n);
    }
    throw Usage("missing --weights or --gen");
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--weights", c.weights, "comma-separated nonzero reals, e.g. 1,-1");
  cmd->add_option("--gen", c.gen, "generator, e.g. harmonic:c=1 or geometric:c=1,r=2");
  cmd->add_option("--n", c.n, "number of generator weights");
  cmd->add_option("--format", c.format, "csv or json");
  cmd->add_option("--out", c.out_path, "output file (default stdout)");
}

Format format_of(const Common& c, const char* fallback) {
  const std::string name = c.format.empty() ? fallback : c.format;
  if (name != "csv" && name != "json") throw Usage("--format must be csv or json");
  return format_from_name(name);
}

void emit(const std::string& text, const Common& c, std::ostream& out) {
  if (c.out_path.empty())
    out << text;
  else
    write_report(text, c.out_path);
}

std::string json_text(const nlohmann::ordered_json& j) {
  // Flat objects only.
  std::string out = "{\n";
  bool first = true;
  for (const auto& [k, v] : j.items()) {
    if (!first) out += ",\n";
    first = false;
    out += "  " + nlohmann::ordered_json(k).dump() + ": ";
    if (v.is_number_float())
      out += std::isfinite(v.get<double>()) ? format_double(v.get<double>()) : "null";
    else if (v.is_array()) {
      out += "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].is_number_float() ? format_double(v[i].get<double>()) : v[i].dump();
      }
      out += "]";
    } else {
      out += v.dump();
    }
  }
  return out + "\n}\n";
}

}  // namespace

int parse_and_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Zak transforms, zeros and Gabor frame bounds of totally positive functions", "zaktp");
  app.require_subcommand(1);

  Common c;

  // eval
  std::string eval_x;
  std::string eval_range = "-5:5:101";
  std::string shift = "none";
  auto* eval = app.add_subcommand("eval", "evaluate g_n on points");
  add_common(eval, c);
  eval->add_option("--x", eval_x, "comma-separated points");
  eval->add_option("--range", eval_range, "lo:hi:count")->capture_default_str();
  eval->add_option("--shift", shift, "none or mean (evaluate g_n(x + sum 1/a))")->capture_default_str();

  // zak
  std::string res = "16x16";
  double tau = 0.0;
  std::string source = "factorized";
  double tol = 1e-13;
  auto* zak = app.add_subcommand("zak", "Zak transform on a grid over [0,1)^2");
  add_common(zak, c);
  zak->add_option("--res", res, "NXxNW")->capture_default_str();
  zak->add_option("--tau", tau, "imaginary part of s")->capture_default_str();
  zak->add_option("--source", source, "direct or factorized")->capture_default_str();
  zak->add_option("--tol", tol, "tail tolerance of the direct series")->capture_default_str();

  // zero
  double zero_tol = 1e-12;
  auto* zero = app.add_subcommand("zero", "locate the zero of Z g(., 1/2)");
  add_common(zero, c);
  zero->add_option("--tol", zero_tol, "bracket width")->capture_default_str();

  // certify
  std::string cx = "0:1", cw = "0:1", ct = "0:0";
  double step = 1.0 / 1024.0;
  auto* certify = app.add_subcommand("certify", "certify a box free of Zak zeros");
  add_common(certify, c);
  certify->add_option("--x", cx, "lo:hi")->capture_default_str();
  certify->add_option("--omega", cw, "lo:hi")->capture_default_str();
  certify->add_option("--tau", ct, "lo:hi")->capture_default_str();
  certify->add_option("--step", step, "grid step")->capture_default_str();

  // framebounds
  int N = 1;
  std::string fres = "256x256";
  auto* frames = app.add_subcommand("framebounds", "grid estimates of the optimal frame bounds");
  add_common(frames, c);
  frames->add_option("--N", N, "modulation parameter, beta = 1/N")->capture_default_str();
  frames->add_option("--res", fres, "NXxNW")->capture_default_str();

  // discrete-frame
  int K = 0, M = 0;
  double ptol = 1e-15;
  std::string window_path;
  auto* discrete = app.add_subcommand("discrete-frame", "frame test for the periodized, sampled window");
  add_common(discrete, c);
  discrete->add_option("--K", K, "period")->required();
  discrete->add_option("--M", M, "translation step")->required();
  discrete->add_option("--tol", ptol, "periodization tail tolerance")->capture_default_str();
  discrete->add_option("--window", window_path, "also write the window as CSV");

  // converge
  std::string ns = "4,8,16,32";
  int ref = 64;
  std::string mode = "sup";
  double param = -1.0;
  int points = 4001;
  std::string cshift = "mean";
  auto* converge = app.add_subcommand("converge", "distances of truncations to a reference truncation");
  add_common(converge, c);
  converge->add_option("--ns", ns, "truncation sizes")->capture_default_str();
  converge->add_option("--ref", ref, "reference truncation")->capture_default_str();
  converge->add_option("--mode", mode, "sup or strip")->capture_default_str();
  converge->add_option("--param", param, "sigma or xi (default a0/2 or 0.5 a0/(2 pi))");
  converge->add_option("--points", points, "line grid points")->capture_default_str();
  converge->add_option("--shift", cshift, "mean or none")->capture_default_str();

  // psi
  double omega = 0.0;
  std::string taus = "10:10000:50";
  int p = 0;
  auto* psi = app.add_subcommand("psi", "decay of 1/Psi_n along a vertical line");
  add_common(psi, c);
  psi->add_option("--omega", omega, "real part of s")->capture_default_str();
  psi->add_option("--tau", taus, "lo:hi:count, log spaced")->capture_default_str();
  psi->add_option("--p", p, "expected exponent (default n)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (eval->parsed()) {
      const WeightMultiset w = c.resolve();
      if (shift != "none" && shift != "mean") throw Usage("--shift must be none or mean");
      std::vector<double> xs;
      if (!eval_x.empty()) {
        xs = number_list(eval_x);
      } else {
        const auto parts = split(eval_range, ':');
        if (parts.size() != 3) throw Usage("--range needs lo:hi:count");
        const double lo = to_number(parts[0]), hi = to_number(parts[1]), cnt = to_number(parts[2]);
        if (cnt < 2 || cnt != std::floor(cnt)) throw Usage("--range count must be an integer >= 2");
        for (int i = 0; i < cnt; ++i) xs.push_back(lo + (hi - lo) * i / (cnt - 1));
      }
      const double offset = shift == "mean" ? w.mean_shift() : 0.0;
      std::vector<double> values;
      for (double x : xs) values.push_back(eval_tp(w, x + offset));
      if (format_of(c, "csv") == Format::csv) {
        std::string text = "x,value\n";
        for (std::size_t i = 0; i < xs.size(); ++i) text += format_double(xs[i]) + "," + format_double(values[i]) + "\n";
        emit(text, c, out);
      } else {
        nlohmann::ordered_json j{{"x", xs}, {"value", values}};
        emit(json_text(j), c, out);
      }
    } else if (zak->parsed()) {
      const WeightMultiset w = c.resolve();
      const auto [nx, nw] = resolution(res);
      ZakSource src;
      if (source == "direct")
        src = ZakSource::direct_series;
      else if (source == "factorized")
        src = ZakSource::ebspline_factorized;
      else
        throw Usage("--source must be direct or factorized");
      std::vector<double> xs, ws;
      for (int i = 0; i < nx; ++i) xs.push_back(static_cast<double>(i) / nx);
      for (int j = 0; j < nw; ++j) ws.push_back(static_cast<double>(j) / nw);
      emit(render(zak_grid(w, xs, ws, tau, src, tol), format_of(c, "csv")), c, out);
    } else if (zero->parsed()) {
      const WeightMultiset w = c.resolve();
      const double x = locate_zero_half(w, zero_tol);
      if (c.format == "json") {
        emit(json_text({{"x_tilde", x}, {"tol", zero_tol}}), c, out);
      } else if (c.format.empty() || c.format == "text") {
        // Digits resolved by the bracket width only.
        const int digits = std::clamp(static_cast<int>(std::ceil(-std::log10(zero_tol))), 1, 17);
        char buf[64];
        std::snprintf(buf, sizeof buf, "x_tilde = %.*g\n", digits, x);
        emit(buf, c, out);
      } else {
        throw Usage("--format must be text or json for zero");
      }
    } else if (certify->parsed()) {
      const WeightMultiset w = c.resolve();
      Region r;
      std::tie(r.x_lo, r.x_hi) = interval(cx);
      std::tie(r.omega_lo, r.omega_hi) = interval(cw);
      std::tie(r.tau_lo, r.tau_hi) = interval(ct);
      emit(render(certify_zero_free(w, r, step), format_of(c, "json")), c, out);
    } else if (frames->parsed()) {
      const WeightMultiset w = c.resolve();
      const auto [nx, nw] = resolution(fres);
      emit(render(frame_bounds(w, N, nx, nw), format_of(c, "json")), c, out);
    } else if (discrete->parsed()) {
      const WeightMultiset w = c.resolve();
      const DiscreteWindow window = periodize_sample(w, K, ptol);
      if (!window_path.empty()) write_report(render(window, Format::csv), window_path);
      emit(render(discrete_frame_test(window, M), format_of(c, "json")), c, out);
    } else if (converge->parsed()) {
      if (c.gen.empty()) throw Usage("converge needs --gen");
      SweepConfig cfg;
      cfg.ns.clear();
      for (double v : number_list(ns)) {
        if (v < 1 || v != std::floor(v)) throw Usage("--ns entries must be positive integers");
        cfg.ns.push_back(static_cast<int>(v));
      }
      cfg.n_ref = ref;
      if (mode == "sup")
        cfg.mode = SweepMode::weighted_sup;
      else if (mode == "strip")
        cfg.mode = SweepMode::zak_strip;
      else
        throw Usage("--mode must be sup or strip");
      if (cshift == "mean")
        cfg.centering = Centering::mean;
      else if (cshift == "none")
        cfg.centering = Centering::none;
      else
        throw Usage("--shift must be mean or none");
      cfg.parameter = param;
      cfg.line_points = points;
      emit(render(convergence_sweep(WeightGenerator::parse(c.gen), cfg), format_of(c, "csv")), c, out);
    } else if (psi->parsed()) {
      const WeightMultiset w = c.resolve();
      const auto parts = split(taus, ':');
      if (parts.size() != 3) throw Usage("--tau needs lo:hi:count");
      const double lo = to_number(parts[0]), hi = to_number(parts[1]), cnt = to_number(parts[2]);
      if (!(lo > 0.0 && hi > lo) || cnt < 2 || cnt != std::floor(cnt))
        throw Usage("--tau needs 0 < lo < hi and an integer count >= 2");
      std::vector<double> samples;
      for (int i = 0; i < cnt; ++i) samples.push_back(lo * std::pow(hi / lo, i / (cnt - 1)));
      const int order = p > 0 ? p : w.size();
      const PsiDecay d = psi_decay_diagnostic(w, omega, samples, order);
      nlohmann::ordered_json j{{"p", order}, {"omega", omega}, {"exponent", d.exponent}, {"monotone", d.monotone}};
      if (format_of(c, "json") == Format::json) {
        emit(json_text(j), c, out);
      } else {
        emit("p,omega,exponent,monotone\n" + std::to_string(order) + "," + format_double(omega) + "," +
                 format_double(d.exponent) + "," + (d.monotone ? "true" : "false") + "\n",
             c, out);
      }
    }
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace zaktp
