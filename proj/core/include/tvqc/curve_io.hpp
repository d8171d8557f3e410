#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "tvqc/outage.hpp"

namespace tvqc {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

// Strict parse of a full string as a double; throws std::invalid_argument.
double parse_double(const std::string& text);

// Parsed curve file; x_axis_explicit records whether the file carried an
// "# x_axis=" metadata line or the default was assumed.
struct CurveFile {
  CurveTable table;
  bool x_axis_explicit = false;
};

// CSV layout: "# key=value" metadata lines (kind, rate, cv, x_axis), one
// header row, then "x,y" rows with shortest round-trip formatting. Reading
// back a written table restores it exactly.
void write_curve_csv(const CurveTable& table, std::ostream& out,
                     std::string_view y_column = "p_out");
CurveFile read_curve_csv(std::istream& in, XAxis default_axis = XAxis::gamma);

}  // namespace tvqc
