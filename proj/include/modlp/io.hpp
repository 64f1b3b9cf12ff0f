#pragma once

// Report plumbing shared by the command-line driver and the file-format
// tests: deterministic CSV tables with a trailing config-hash comment,
// matrix serialization to and from JSON, a minimal SVG polyline plotter
// with optional log scale, and text-file helpers with path-carrying
// errors. All numeric text is printed with printf-style %g formats so a
// fixed seed reproduces byte-identical artifacts.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "modlp/core.hpp"

namespace modlp {

// File-system failure; the message carries the offending path.
struct io_error : input_error {
  explicit io_error(const std::string& msg) : input_error(msg) {}
};

// 64-bit FNV-1a over the canonical (sorted-key) JSON dump of a run
// configuration. Stable across platforms for the same byte sequence.
inline std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, value);
  return std::string(buf);
}

// Shortest round-trip-safe decimal form; 17 significant digits recover
// the exact double on read-back.
inline std::string format_double(double value, int precision = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return std::string(buf);
}

namespace detail {

inline std::string csv_escape(const std::string& cell) {
  const bool needs_quotes = cell.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quotes) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

// In-memory CSV with a fixed header; render() appends the mandatory
// trailing metadata comment carrying the run's config hash.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  explicit CsvTable(std::vector<std::string> columns) : header(std::move(columns)) {
    if (header.empty()) throw internal_error("CsvTable: header must be nonempty");
  }

  void add_row(std::vector<std::string> cells) {
    if (cells.size() != header.size())
      throw internal_error("CsvTable: row width does not match the header");
    rows.push_back(std::move(cells));
  }

  std::string render(std::uint64_t config_hash) const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out += ',';
      out += detail::csv_escape(header[i]);
    }
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += detail::csv_escape(row[i]);
      }
      out += '\n';
    }
    out += "# config_hash=" + hex64(config_hash) + "\n";
    return out;
  }
};

inline void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw io_error("cannot create directory " + dir.string() + ": " + ec.message());
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw io_error("write failed for " + path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw io_error("read failed for " + path.string());
  return buf.str();
}

// Row-major matrix layout: {"rows", "cols", "re", "im"}; "im" may be
// omitted when writing real data by hand.
inline nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> re, im;
  re.reserve(static_cast<std::size_t>(m.size()));
  im.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  j["re"] = re;
  j["im"] = im;
  return j;
}

inline Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re"))
    throw input_error("matrix JSON needs fields rows, cols and re");
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  if (rows < 0 || cols < 0) throw input_error("matrix JSON has negative dimensions");
  const auto re = j.at("re").get<std::vector<double>>();
  std::vector<double> im(re.size(), 0.0);
  if (j.contains("im")) im = j.at("im").get<std::vector<double>>();
  const auto want = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  if (re.size() != want || im.size() != want)
    throw input_error("matrix JSON entry count does not match rows*cols");
  Matrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c, ++k) m(r, c) = cdouble(re[k], im[k]);
  check_finite(m, "matrix JSON");
  return m;
}

inline nlohmann::json real_matrix_to_json(const RealMatrix& m) {
  return matrix_to_json(m.cast<cdouble>());
}

inline RealMatrix real_matrix_from_json(const nlohmann::json& j) {
  const Matrix m = matrix_from_json(j);
  if (m.imag().cwiseAbs().maxCoeff() != 0.0)
    throw input_error("matrix JSON carries imaginary parts where real data is required");
  return m.real();
}

inline std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct SvgSeries {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
};

// Fixed-size 800x500 line plot. With log_y the ordinates are mapped
// through log10 and nonpositive points are dropped; tick labels then
// show the restored power of ten.
inline std::string svg_line_plot(const std::string& title, const std::string& x_label,
                                 const std::string& y_label, const std::vector<SvgSeries>& series,
                                 bool log_y) {
  static const char* kPalette[6] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
  const double width = 800, height = 500;
  const double left = 70, right = 780, top = 45, bottom = 440;

  struct Point {
    double x, y;
  };
  std::vector<std::vector<Point>> drawable(series.size());
  bool have_points = false;
  double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
  for (std::size_t s = 0; s < series.size(); ++s) {
    if (series[s].xs.size() != series[s].ys.size())
      throw input_error("svg_line_plot: series " + series[s].label + " has ragged data");
    for (std::size_t i = 0; i < series[s].xs.size(); ++i) {
      double x = series[s].xs[i], y = series[s].ys[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (log_y) {
        if (y <= 0.0) continue;
        y = std::log10(y);
      }
      if (!have_points) {
        x_min = x_max = x;
        y_min = y_max = y;
        have_points = true;
      } else {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
      drawable[s].push_back({x, y});
    }
  }
  if (x_max - x_min < 1e-12) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  if (y_max - y_min < 1e-12) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  const auto px = [&](double x) {
    return left + (x - x_min) / (x_max - x_min) * (right - left);
  };
  const auto py = [&](double y) {
    return bottom - (y - y_min) / (y_max - y_min) * (bottom - top);
  };
  const auto num = [](double v) { return format_double(v, 6); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
  svg += "<rect width=\"" + num(width) + "\" height=\"" + num(height) + "\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num((left + right) / 2) +
         "\" y=\"26\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         xml_escape(title) + "</text>\n";

  for (int i = 0; i <= 4; ++i) {
    const double fx = x_min + (x_max - x_min) * i / 4.0;
    const double fy = y_min + (y_max - y_min) * i / 4.0;
    const double gx = px(fx), gy = py(fy);
    svg += "<line x1=\"" + num(gx) + "\" y1=\"" + num(top) + "\" x2=\"" + num(gx) + "\" y2=\"" +
           num(bottom) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(gy) + "\" x2=\"" + num(right) +
           "\" y2=\"" + num(gy) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + num(gx) + "\" y=\"" + num(bottom + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           xml_escape(format_double(fx, 4)) + "</text>\n";
    const std::string y_text =
        log_y ? format_double(std::pow(10.0, fy), 3) : format_double(fy, 4);
    svg += "<text x=\"" + num(left - 6) + "\" y=\"" + num(gy + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           xml_escape(y_text) + "</text>\n";
  }
  svg += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(right - left) +
         "\" height=\"" + num(bottom - top) + "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + num((left + right) / 2) + "\" y=\"" + num(height - 14) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         xml_escape(x_label) + "</text>\n";
  svg += "<text x=\"20\" y=\"" + num((top + bottom) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 20 " +
         num((top + bottom) / 2) + ")\">" + xml_escape(y_label + (log_y ? " (log)" : "")) +
         "</text>\n";

  if (!have_points) {
    svg += "<text x=\"" + num((left + right) / 2) + "\" y=\"" + num((top + bottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">no drawable "
           "points</text>\n";
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % 6];
    if (drawable[s].size() >= 2) {
      svg += "<polyline fill=\"none\" stroke=\"";
      svg += color;
      svg += "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < drawable[s].size(); ++i) {
        if (i) svg += ' ';
        svg += num(px(drawable[s][i].x)) + "," + num(py(drawable[s][i].y));
      }
      svg += "\"/>\n";
    }
    for (const Point& pt : drawable[s]) {
      svg += "<circle cx=\"" + num(px(pt.x)) + "\" cy=\"" + num(py(pt.y)) +
             "\" r=\"2.5\" fill=\"";
      svg += color;
      svg += "\"/>\n";
    }
    const double ly = top + 16 + 18.0 * static_cast<double>(s);
    svg += "<line x1=\"" + num(right - 150) + "\" y1=\"" + num(ly) + "\" x2=\"" +
           num(right - 126) + "\" y2=\"" + num(ly) + "\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(right - 120) + "\" y=\"" + num(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape(series[s].label) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace modlp
