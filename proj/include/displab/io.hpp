#pragma once

#include <string>
#include <vector>

#include "displab/grid.hpp"
#include "displab/quadrature.hpp"

namespace displab {

/// CSV rows for oscillatory samples: t, x, k, s, re, im, abs_error.
void write_samples_csv(const std::string& path,
                       const std::vector<OscIntegralSample>& samples);

/// Generic CSV writer: header row then %.17g-formatted columns.
void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Flat binary grid format. Header: n, resolution, extent as little-endian
/// 64-bit values (two unsigned integers, one double); payload: interleaved
/// re/im doubles, row-major.
void write_grid(const std::string& path, const GridFunction& g);
GridFunction read_grid(const std::string& path);

/// Minimal log-log SVG polyline plot (one series per column pair).
void write_svg_loglog(const std::string& path,
                      const std::vector<std::pair<double, double>>& series,
                      const std::string& title);

}  // namespace displab
