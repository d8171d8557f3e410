#include "tvqc/curve_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tvqc {

std::string format_double(double value) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc{} || result.ptr != end) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return value;
}

void write_curve_csv(const CurveTable& table, std::ostream& out,
                     std::string_view y_column) {
  out << "# kind=" << to_string(table.kind) << "\n";
  out << "# rate=" << format_double(table.rate) << "\n";
  out << "# cv=" << format_double(table.cv) << "\n";
  out << "# x_axis=" << to_string(table.x_axis) << "\n";
  out << "x," << y_column << "\n";
  for (const CurvePoint& p : table.points) {
    out << format_double(p.x) << "," << format_double(p.y) << "\n";
  }
}

CurveFile read_curve_csv(std::istream& in, XAxis default_axis) {
  CurveFile file;
  file.table.kind = ChannelKind::AD;
  file.table.rate = 0.0;
  file.table.cv = 0.0;
  file.table.x_axis = default_axis;

  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (line.front() == '#') {
      std::size_t start = line.find_first_not_of("# \t");
      if (start == std::string::npos) continue;
      const std::size_t eq = line.find('=', start);
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(start, eq - start);
      const std::string value = line.substr(eq + 1);
      if (key == "kind") {
        if (auto kind = channel_kind_from_string(value)) {
          file.table.kind = *kind;
        }
      } else if (key == "rate") {
        file.table.rate = parse_double(value);
      } else if (key == "cv") {
        file.table.cv = parse_double(value);
      } else if (key == "x_axis") {
        if (value == "gamma") {
          file.table.x_axis = XAxis::gamma;
        } else if (value == "depolarizing_p") {
          file.table.x_axis = XAxis::depolarizing_p;
        } else {
          throw std::invalid_argument("line " + std::to_string(line_no) +
                                      ": unknown x_axis '" + value + "'");
        }
        file.x_axis_explicit = true;
      }
      continue;
    }
    if (!header_seen) {
      // First non-comment line is the column header row.
      header_seen = true;
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected 'x,y'");
    }
    CurvePoint point{parse_double(line.substr(0, comma)),
                     parse_double(line.substr(comma + 1))};
    if (!file.table.points.empty() && !(point.x > file.table.points.back().x)) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": x values must be strictly increasing");
    }
    if (!(point.y >= 0.0 && point.y <= 1.0)) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": y must be a probability in [0, 1]");
    }
    file.table.points.push_back(point);
  }
  if (!header_seen) {
    throw std::invalid_argument("curve file has no header row");
  }
  return file;
}

}  // namespace tvqc
