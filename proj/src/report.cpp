#include "zaktp/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

#include <json.hpp>

#include "zaktp/errors.hpp"

namespace zaktp {

namespace {

using Json = nlohmann::ordered_json;

void dump(const Json& j, std::string& out, int indent) {
  const std::string pad(indent + 2, ' ');
  const std::string close(indent, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        dump(value, out, indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        dump(v, out, indent + 2);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

std::string to_text(const Json& j) {
  std::string out;
  dump(j, out, 0);
  out += "\n";
  return out;
}

Json parse(const std::string& text, const char* schema) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("schema") || j["schema"] != schema)
    throw Error(ErrorKind::InvalidArgument, std::string("expected schema ") + schema);
  return j;
}

double num(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) throw Error(ErrorKind::InvalidArgument, "expected a number, got " + j.dump());
  return j.get<double>();
}

// Field access that reports schema problems as InvalidArgument.
const Json& at(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorKind::InvalidArgument, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<double> num_array(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidArgument, "expected an array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(num(v));
  return out;
}

Json point_json(const GridPoint& p) { return Json{{"x", p.x}, {"omega", p.omega}, {"tau", p.tau}}; }

GridPoint point_from(const Json& j) { return {num(at(j, "x")), num(at(j, "omega")), num(at(j, "tau"))}; }

std::string csv_line(std::initializer_list<std::string> cells) {
  std::string out;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out += ',';
    first = false;
    out += c;
  }
  return out + "\n";
}

}  // namespace

Format format_from_name(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw Error(ErrorKind::InvalidArgument, "unknown format '" + name + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render(const ZakGrid& grid, Format format) {
  if (format == Format::csv) {
    std::string out = "x,omega,tau,re,im,abs\n";
    for (std::size_t i = 0; i < grid.x_samples.size(); ++i)
      for (std::size_t j = 0; j < grid.omega_samples.size(); ++j) {
        const auto z = grid.at(i, j);
        out += csv_line({format_double(grid.x_samples[i]), format_double(grid.omega_samples[j]),
                         format_double(grid.tau), format_double(z.real()), format_double(z.imag()),
                         format_double(std::abs(z))});
      }
    return out;
  }
  Json values = Json::array();
  for (const auto& z : grid.values) values.push_back(Json::array({z.real(), z.imag()}));
  const Json j{{"schema", "zakgrid/1"},
               {"source", zak_source_name(grid.source)},
               {"tau", grid.tau},
               {"tail_bound", grid.tail_bound},
               {"x_samples", grid.x_samples},
               {"omega_samples", grid.omega_samples},
               {"values", values}};
  return to_text(j);
}

ZakGrid zak_grid_from_json(const std::string& text) {
  const Json j = parse(text, "zakgrid/1");
  ZakGrid g;
  const std::string source = at(j, "source").get<std::string>();
  if (source == zak_source_name(ZakSource::direct_series)) {
    g.source = ZakSource::direct_series;
  } else if (source == zak_source_name(ZakSource::ebspline_factorized)) {
    g.source = ZakSource::ebspline_factorized;
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown Zak source '" + source + "'");
  }
  g.tau = num(at(j, "tau"));
  g.tail_bound = num(at(j, "tail_bound"));
  g.x_samples = num_array(at(j, "x_samples"));
  g.omega_samples = num_array(at(j, "omega_samples"));
  for (const auto& v : at(j, "values")) {
    const auto pair = num_array(v);
    if (pair.size() != 2) throw Error(ErrorKind::InvalidArgument, "Zak value must be [re, im]");
    g.values.emplace_back(pair[0], pair[1]);
  }
  if (g.values.size() != g.x_samples.size() * g.omega_samples.size())
    throw Error(ErrorKind::InvalidArgument, "Zak grid value count does not match its samples");
  return g;
}

std::string render(const ZeroCertificate& c, Format format) {
  if (format == Format::csv) {
    std::string out = "field,value\n";
    const auto row = [&](const char* k, const std::string& v) { out += csv_line({k, v}); };
    row("x_lo", format_double(c.region.x_lo));
    row("x_hi", format_double(c.region.x_hi));
    row("omega_lo", format_double(c.region.omega_lo));
    row("omega_hi", format_double(c.region.omega_hi));
    row("tau_lo", format_double(c.region.tau_lo));
    row("tau_hi", format_double(c.region.tau_hi));
    row("grid_step", format_double(c.grid_step));
    row("cover_radius", format_double(c.cover_radius));
    row("min_modulus", format_double(c.min_modulus));
    row("lipschitz_bound", format_double(c.lipschitz_bound));
    row("certified_margin", format_double(c.certified_margin));
    row("refined_boxes", std::to_string(c.refined_boxes));
    row("min_x", format_double(c.min_location.x));
    row("min_omega", format_double(c.min_location.omega));
    row("min_tau", format_double(c.min_location.tau));
    row("verdict", verdict_name(c.verdict));
    return out;
  }
  const Json j{{"schema", "zerocert/1"},
               {"region",
                {{"x_lo", c.region.x_lo},
                 {"x_hi", c.region.x_hi},
                 {"omega_lo", c.region.omega_lo},
                 {"omega_hi", c.region.omega_hi},
                 {"tau_lo", c.region.tau_lo},
                 {"tau_hi", c.region.tau_hi}}},
               {"grid_step", c.grid_step},
               {"grid_points", c.grid_points},
               {"cover_radius", c.cover_radius},
               {"min_modulus", c.min_modulus},
               {"lipschitz_bound", c.lipschitz_bound},
               {"certified_margin", c.certified_margin},
               {"refined_boxes", c.refined_boxes},
               {"min_location", point_json(c.min_location)},
               {"verdict", verdict_name(c.verdict)},
               {"zero_location", c.zero_location ? point_json(*c.zero_location) : Json(nullptr)}};
  return to_text(j);
}

ZeroCertificate zero_certificate_from_json(const std::string& text) {
  const Json j = parse(text, "zerocert/1");
  ZeroCertificate c;
  const Json& r = at(j, "region");
  c.region = {num(at(r, "x_lo")),     num(at(r, "x_hi")),   num(at(r, "omega_lo")),
              num(at(r, "omega_hi")), num(at(r, "tau_lo")), num(at(r, "tau_hi"))};
  c.grid_step = num(at(j, "grid_step"));
  const Json& pts = at(j, "grid_points");
  if (!pts.is_array() || pts.size() != 3) throw Error(ErrorKind::InvalidArgument, "grid_points needs 3 entries");
  for (int i = 0; i < 3; ++i) c.grid_points[i] = pts[i].get<int>();
  c.cover_radius = num(at(j, "cover_radius"));
  c.min_modulus = num(at(j, "min_modulus"));
  c.lipschitz_bound = num(at(j, "lipschitz_bound"));
  c.certified_margin = num(at(j, "certified_margin"));
  c.refined_boxes = at(j, "refined_boxes").get<long>();
  c.min_location = point_from(at(j, "min_location"));
  c.verdict = verdict_from_name(at(j, "verdict").get<std::string>());
  if (!at(j, "zero_location").is_null()) c.zero_location = point_from(j["zero_location"]);
  return c;
}

std::string render(const FrameBoundsReport& r, Format format) {
  if (format == Format::csv) {
    std::string out = "n_x,n_omega,A_est,B_est\n";
    for (const auto& t : r.trace)
      out += csv_line({std::to_string(t.n_x), std::to_string(t.n_omega), format_double(t.A_est),
                       format_double(t.B_est)});
    return out;
  }
  Json trace = Json::array();
  for (const auto& t : r.trace)
    trace.push_back({{"n_x", t.n_x}, {"n_omega", t.n_omega}, {"A_est", t.A_est}, {"B_est", t.B_est}});
  const Json j{{"schema", "framebounds/1"},
               {"N", r.N},
               {"grid_resolution", {r.n_x, r.n_omega}},
               {"A_est", r.A_est},
               {"B_est", r.B_est},
               {"min_location", {{"x", r.min_x}, {"omega", r.min_omega}}},
               {"refinement_trace", trace}};
  return to_text(j);
}

FrameBoundsReport frame_bounds_from_json(const std::string& text) {
  const Json j = parse(text, "framebounds/1");
  FrameBoundsReport r;
  r.N = at(j, "N").get<int>();
  const Json& res = at(j, "grid_resolution");
  if (!res.is_array() || res.size() != 2) throw Error(ErrorKind::InvalidArgument, "grid_resolution needs 2 entries");
  r.n_x = res[0].get<int>();
  r.n_omega = res[1].get<int>();
  r.A_est = num(at(j, "A_est"));
  r.B_est = num(at(j, "B_est"));
  r.min_x = num(at(at(j, "min_location"), "x"));
  r.min_omega = num(at(at(j, "min_location"), "omega"));
  for (const auto& t : at(j, "refinement_trace"))
    r.trace.push_back({at(t, "n_x").get<int>(), at(t, "n_omega").get<int>(), num(at(t, "A_est")), num(at(t, "B_est"))});
  return r;
}

std::string render(const DiscreteWindow& w, Format format) {
  if (format == Format::csv) {
    std::string out = "index,value\n";
    for (std::size_t i = 0; i < w.values.size(); ++i) out += csv_line({std::to_string(i), format_double(w.values[i])});
    return out;
  }
  return to_text(Json{{"K", w.K}, {"weights", w.weights}, {"values", w.values}});
}

std::string render(const DiscreteFrameReport& r, Format format) {
  if (format == Format::csv)
    return "K,M,lambda_min,lambda_max,is_frame\n" +
           csv_line({std::to_string(r.K), std::to_string(r.M), format_double(r.lambda_min),
                     format_double(r.lambda_max), r.is_frame ? "true" : "false"});
  return to_text(Json{{"K", r.K},
                      {"M", r.M},
                      {"lambda_min", r.lambda_min},
                      {"lambda_max", r.lambda_max},
                      {"is_frame", r.is_frame}});
}

std::string render(const std::vector<SweepRow>& rows, Format format) {
  if (format == Format::csv) {
    std::string out = "n,sigma_or_xi,distance,tail_proxy\n";
    for (const auto& r : rows)
      out += csv_line({std::to_string(r.n), format_double(r.sigma_or_xi), format_double(r.distance),
                       format_double(r.tail_proxy)});
    return out;
  }
  Json arr = Json::array();
  for (const auto& r : rows)
    arr.push_back({{"n", r.n}, {"sigma_or_xi", r.sigma_or_xi}, {"distance", r.distance}, {"tail_proxy", r.tail_proxy}});
  return to_text(arr);
}

void write_report(const std::string& text, const std::string& path) {
  if (path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw Error(ErrorKind::IoError, "failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path + "'");
}

}  // namespace zaktp
