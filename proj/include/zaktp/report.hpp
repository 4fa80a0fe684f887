#pragma once

// Text forms of the module reports. Output is byte-stable: fixed field
// order, floats printed with 17 significant digits, LF line endings.
// Non-finite floats are written as null in JSON and read back as NaN.

#include <string>
#include <vector>

#include "zaktp/analysis.hpp"
#include "zaktp/convergence.hpp"
#include "zaktp/frames.hpp"
#include "zaktp/zak.hpp"

namespace zaktp {

enum class Format { csv, json };

/// "csv" or "json"; throws InvalidArgument.
Format format_from_name(const std::string& name);

/// %.17g
std::string format_double(double v);

std::string render(const ZakGrid& grid, Format format);                 // "zakgrid/1"
std::string render(const ZeroCertificate& cert, Format format);         // "zerocert/1"
std::string render(const FrameBoundsReport& report, Format format);     // "framebounds/1"
std::string render(const DiscreteWindow& window, Format format);        // CSV: index,value
std::string render(const DiscreteFrameReport& report, Format format);
std::string render(const std::vector<SweepRow>& rows, Format format);   // CSV: n,sigma_or_xi,distance,tail_proxy

/// Inverse of the JSON renderers; throws InvalidArgument on schema mismatch.
ZakGrid zak_grid_from_json(const std::string& text);
ZeroCertificate zero_certificate_from_json(const std::string& text);
FrameBoundsReport frame_bounds_from_json(const std::string& text);

/// Writes `text` to `path`, or to stdout for "-". Throws IoError naming the path.
void write_report(const std::string& text, const std::string& path);

template <class Report>
void write_report(const Report& report, Format format, const std::string& path) {
  write_report(render(report, format), path);
}

}  // namespace zaktp
