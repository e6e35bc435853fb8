#include "svg_plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "latency.hpp"

namespace dmec {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream s(line);
  while (std::getline(s, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_cell(const std::string& text, std::size_t line_no, const std::string& column) {
  if (text == "inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  if (text == "nan") return NAN;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw CsvFormatError("line " + std::to_string(line_no) + ": column " + column + " holds '" + text +
                         "', not a number");
  }
  return v;
}

std::string scheme_label(const std::string& token) {
  for (auto s : kSchemes) {
    if (token == to_string(s)) return display_name(s);
  }
  return token;
}

std::string backhaul_label(double bps) {
  std::ostringstream s;
  if (bps >= 1e6) {
    s << bps / 1e6 << " Mbit/s";
  } else if (bps >= 1e3) {
    s << bps / 1e3 << " kbit/s";
  } else {
    s << bps << " bit/s";
  }
  return s.str();
}

std::string escape(const std::string& text) {
  std::string out;
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

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

}  // namespace

PlotData read_sweep_csv(std::istream& in) {
  PlotData data;
  std::string axis;
  std::vector<std::string> columns;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string tag = "# axis = ";
      if (line.rfind(tag, 0) == 0) axis = line.substr(tag.size(), line.find(' ', tag.size()) - tag.size());
      continue;
    }
    columns = split(line);
    break;
  }
  if (columns.empty()) throw CsvFormatError("no header row found");

  auto find = [&](const std::string& name, bool required) -> std::ptrdiff_t {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
      if (required) throw CsvFormatError("missing column: " + name);
      return -1;
    }
    return it - columns.begin();
  };
  const auto c_axis = find("axis_value", true);
  const auto c_backhaul = find("backhaul_bps", true);
  const auto c_scheme = find("scheme", true);
  const auto c_total = find("total_s", true);
  const auto c_gamma = find("gamma_db", false);
  const bool split_gamma = c_gamma >= 0 && axis != "gamma_db";

  data.x_label = axis.empty() ? "axis_value" : axis;
  std::map<std::string, std::size_t> index;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line);
    if (cells.size() != columns.size()) {
      throw CsvFormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(columns.size()) +
                           " cells, found " + std::to_string(cells.size()));
    }
    const double x = parse_cell(cells[c_axis], line_no, "axis_value");
    const double bh = parse_cell(cells[c_backhaul], line_no, "backhaul_bps");
    const double y = parse_cell(cells[c_total], line_no, "total_s");
    std::string label = scheme_label(cells[c_scheme]) + ", C_bh = " + backhaul_label(bh);
    if (split_gamma) label += ", gamma = " + cells[c_gamma] + " dB";
    auto [it, inserted] = index.emplace(label, data.series.size());
    if (inserted) data.series.push_back({label, {}, {}});
    auto& s = data.series[it->second];
    s.x.push_back(x);
    s.y.push_back(y);
  }
  return data;
}

SvgStats write_svg(std::ostream& out, const PlotData& data) {
  constexpr double width = 900, height = 560;
  constexpr double left = 80, right = 20, top = 20, bottom = 60, legend_h = 18;
  const double legend_top = height;
  const double total_h = height + legend_h * static_cast<double>(data.series.size()) + 10;

  double x_min = INFINITY, x_max = -INFINITY, y_min = INFINITY, y_max = -INFINITY;
  for (const auto& s : data.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (std::isfinite(s.x[i])) {
        x_min = std::min(x_min, s.x[i]);
        x_max = std::max(x_max, s.x[i]);
      }
      if (std::isfinite(s.y[i]) && s.y[i] > 0) {
        y_min = std::min(y_min, s.y[i]);
        y_max = std::max(y_max, s.y[i]);
      }
    }
  }
  if (!std::isfinite(x_min)) x_min = 0, x_max = 1;
  if (x_max == x_min) x_min -= 0.5, x_max += 0.5;
  const bool log_x = x_min > 0 && x_max / x_min >= 50;
  if (!std::isfinite(y_min)) y_min = 1e-3, y_max = 1;
  const double dec_lo = std::floor(std::log10(y_min));
  double dec_hi = std::ceil(std::log10(y_max));
  if (dec_hi == dec_lo) dec_hi += 1;

  auto px = [&](double x) {
    const double t = log_x ? (std::log10(x) - std::log10(x_min)) / (std::log10(x_max) - std::log10(x_min))
                           : (x - x_min) / (x_max - x_min);
    return left + t * (width - left - right);
  };
  auto py = [&](double y) {
    const double t = (std::log10(y) - dec_lo) / (dec_hi - dec_lo);
    return height - bottom - t * (height - top - bottom);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << total_h
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width - left - right << "\" height=\""
      << height - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double d = dec_lo; d <= dec_hi; ++d) {
    const double y = py(std::pow(10.0, d));
    out << "<line x1=\"" << left << "\" x2=\"" << width - right << "\" y1=\"" << y << "\" y2=\"" << y
        << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  for (int k = 0; k <= 5; ++k) {
    const double x = log_x ? std::pow(10.0, std::log10(x_min) + k * (std::log10(x_max) - std::log10(x_min)) / 5)
                           : x_min + k * (x_max - x_min) / 5;
    std::ostringstream tick;
    tick << x;
    out << "<text x=\"" << px(x) << "\" y=\"" << height - bottom + 16 << "\" text-anchor=\"middle\">"
        << tick.str() << "</text>\n";
  }
  out << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 18 << "\" text-anchor=\"middle\">"
      << escape(data.x_label) << "</text>\n";
  out << "<text transform=\"translate(18," << (top + height - bottom) / 2
      << ") rotate(-90)\" text-anchor=\"middle\">average offloading latency (s)</text>\n";

  SvgStats stats;
  for (std::size_t si = 0; si < data.series.size(); ++si) {
    const auto& s = data.series[si];
    const char* color = kPalette[si % std::size(kPalette)];
    std::vector<std::pair<double, double>> run;
    auto flush = [&] {
      if (run.size() == 1) {
        out << "<circle cx=\"" << run[0].first << "\" cy=\"" << run[0].second << "\" r=\"3\" fill=\"" << color
            << "\"/>\n";
        ++stats.markers;
      } else if (run.size() > 1) {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : run) out << x << ',' << y << ' ';
        out << "\"/>\n";
        ++stats.polylines;
      }
      run.clear();
    };
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]) && s.y[i] > 0) {
        run.emplace_back(px(s.x[i]), py(s.y[i]));
      } else {
        flush();
      }
    }
    flush();
    const double ly = legend_top + legend_h * static_cast<double>(si) + 4;
    out << "<line x1=\"" << left << "\" x2=\"" << left + 24 << "\" y1=\"" << ly << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << left + 30 << "\" y=\"" << ly + 4 << "\">" << escape(s.label) << "</text>\n";
  }
  out << "</svg>\n";
  return stats;
}

}  // namespace dmec
