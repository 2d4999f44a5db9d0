// Copyright 2026 The gftransport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text output formats.
//
//   Matrix CSV   header "<axis>,n0,n1,...", one row per output point, every
//                number printed with 17 significant digits ("%.17g").
//   Scan CSV     header "gamma,mean_n,engine,k,m".
//   Snapshot     one line per matrix row of "re,im" pairs, comma separated.
//   PGM          plain P2, 8 bit; image row = site, column = output point,
//                grey level round(255 v / max) with max over the whole file.
//   SVG          the same grid as <rect> cells, for viewing only.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gft/errors.hpp"
#include "gft/format.hpp"
#include "gft/lattice.hpp"
#include "gft/observables.hpp"

namespace gft {

inline std::string matrix_csv(std::string_view axis, const std::vector<double>& positions, const RealMatrix& values) {
  if (static_cast<Eigen::Index>(positions.size()) != values.rows()) {
    throw ValidationError("matrix_csv: one position per row required");
  }
  std::string out(axis);
  for (Eigen::Index c = 0; c < values.cols(); ++c) out += ",n" + std::to_string(c);
  out += '\n';
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    out += format_number(positions[static_cast<std::size_t>(r)]);
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      out += ',';
      out += format_number(values(r, c));
    }
    out += '\n';
  }
  return out;
}

inline std::string curve_csv(const TransportCurve& curve) {
  std::string out = "gamma,mean_n,engine,k,m\n";
  for (std::size_t i = 0; i < curve.parameter_grid.size(); ++i) {
    out += format_number(curve.parameter_grid[i]) + ',' + format_number(curve.mean_n_values[i]) + ',' +
           std::string(to_string(curve.engine)) + ',' + std::to_string(curve.k) + ',' + std::to_string(curve.m) + '\n';
  }
  return out;
}

inline std::string snapshot_text(const ComplexMatrix& rho) {
  std::string out;
  for (Eigen::Index r = 0; r < rho.rows(); ++r) {
    for (Eigen::Index c = 0; c < rho.cols(); ++c) {
      if (c > 0) out += ',';
      out += format_number(rho(r, c).real()) + ',' + format_number(rho(r, c).imag());
    }
    out += '\n';
  }
  return out;
}

/// `values` has one row per output point and one column per site; the image
/// is its transpose.
inline std::string heatmap_pgm(const RealMatrix& values) {
  const double peak = values.size() > 0 ? values.maxCoeff() : 0.0;
  std::string out = "P2\n" + std::to_string(values.rows()) + ' ' + std::to_string(values.cols()) + "\n255\n";
  for (Eigen::Index site = 0; site < values.cols(); ++site) {
    for (Eigen::Index step = 0; step < values.rows(); ++step) {
      const double v = peak > 0.0 ? std::clamp(values(step, site) / peak, 0.0, 1.0) : 0.0;
      if (step > 0) out += ' ';
      out += std::to_string(static_cast<int>(std::lround(255.0 * v)));
    }
    out += '\n';
  }
  return out;
}

inline std::string heatmap_svg(const RealMatrix& values) {
  const double peak = values.size() > 0 ? values.maxCoeff() : 0.0;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << values.rows() << ' ' << values.cols()
     << "\" preserveAspectRatio=\"none\" width=\"800\" height=\"" << std::max<Eigen::Index>(200, 8 * values.cols())
     << "\" shape-rendering=\"crispEdges\">\n";
  for (Eigen::Index site = 0; site < values.cols(); ++site) {
    for (Eigen::Index step = 0; step < values.rows(); ++step) {
      const double v = peak > 0.0 ? std::clamp(values(step, site) / peak, 0.0, 1.0) : 0.0;
      const int level = static_cast<int>(std::lround(255.0 * v));
      if (level == 0) continue;
      os << "<rect x=\"" << step << "\" y=\"" << site << "\" width=\"1\" height=\"1\" fill=\"rgb(" << level << ','
         << level << ',' << level << ")\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// CSV comparison

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

inline CsvTable parse_csv(std::istream& in, const std::string& name) {
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(name + ": empty CSV");
  t.header = split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    t.rows.push_back(split_csv_line(line));
    if (t.rows.back().size() != t.header.size()) {
      throw ValidationError(name + ": row " + std::to_string(t.rows.size()) + " has " +
                            std::to_string(t.rows.back().size()) + " cells, header has " +
                            std::to_string(t.header.size()));
    }
  }
  return t;
}

inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  return parse_csv(in, path);
}

struct ColumnDifference {
  std::string name;
  double max_abs = 0.0;
  double rms = 0.0;
  double max_excess = 0.0;  // largest |a - b| - allowed, <= 0 when within bounds
};

struct CompareReport {
  std::vector<ColumnDifference> columns;
  bool pass = true;
};

namespace detail {
inline bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}
}  // namespace detail

/// Column-wise max-abs and RMS differences. An element passes when
/// |a - b| <= max(tolerance, sigmas * err), with err taken from the optional
/// error table (same shape, e.g. ensemble standard errors). Non-numeric
/// cells must match exactly.
inline CompareReport compare_tables(const CsvTable& a, const CsvTable& b, double tolerance,
                                    const CsvTable* errors = nullptr, double sigmas = 3.0) {
  if (a.header.size() != b.header.size() || a.rows.size() != b.rows.size()) {
    throw ValidationError("shape mismatch: " + std::to_string(a.rows.size()) + "x" + std::to_string(a.header.size()) +
                          " vs " + std::to_string(b.rows.size()) + "x" + std::to_string(b.header.size()));
  }
  if (a.header != b.header) throw ValidationError("column names differ between the compared tables");
  if (errors && (errors->header.size() != a.header.size() || errors->rows.size() != a.rows.size())) {
    throw ValidationError("error table shape does not match the compared tables");
  }
  CompareReport report;
  for (std::size_t c = 0; c < a.header.size(); ++c) {
    ColumnDifference col{a.header[c]};
    col.max_excess = -std::numeric_limits<double>::infinity();
    double sum_sq = 0.0;
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
      double x = 0.0, y = 0.0;
      const bool numeric = detail::parse_double(a.rows[r][c], x) && detail::parse_double(b.rows[r][c], y);
      double diff = 0.0;
      if (numeric) {
        diff = std::abs(x - y);
      } else if (a.rows[r][c] != b.rows[r][c]) {
        diff = std::numeric_limits<double>::infinity();
      }
      double allowed = tolerance;
      double e = 0.0;
      if (errors && detail::parse_double(errors->rows[r][c], e)) allowed = std::max(allowed, sigmas * e);
      col.max_abs = std::max(col.max_abs, diff);
      col.max_excess = std::max(col.max_excess, diff - allowed);
      sum_sq += diff * diff;
    }
    col.rms = a.rows.empty() ? 0.0 : std::sqrt(sum_sq / static_cast<double>(a.rows.size()));
    if (col.max_excess > 0.0) report.pass = false;
    report.columns.push_back(col);
  }
  return report;
}

inline CompareReport compare(const std::string& file_a, const std::string& file_b, double tolerance,
                             const std::string& error_file = {}, double sigmas = 3.0) {
  const CsvTable a = read_csv(file_a);
  const CsvTable b = read_csv(file_b);
  if (error_file.empty()) return compare_tables(a, b, tolerance);
  const CsvTable e = read_csv(error_file);
  return compare_tables(a, b, tolerance, &e, sigmas);
}

}  // namespace gft
