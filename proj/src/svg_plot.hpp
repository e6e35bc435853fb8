#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace dmec {

class CsvFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  // total_s; non-finite or non-positive values break the line
};

struct PlotData {
  std::string x_label;
  std::vector<PlotSeries> series;  // first-appearance order
};

// Reads a sweep CSV. Series are keyed by (scheme, backhaul_bps) plus gamma_db
// when the threshold is not itself the axis. Throws CsvFormatError naming a
// missing column or the offending line.
PlotData read_sweep_csv(std::istream& in);

struct SvgStats {
  std::size_t polylines = 0;
  std::size_t markers = 0;
};

// Line chart with a log-scaled latency axis; runs of one finite point are
// drawn as markers.
SvgStats write_svg(std::ostream& out, const PlotData& data);

}  // namespace dmec
