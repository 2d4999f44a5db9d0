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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "gft/io.hpp"
#include "oracles.hpp"

namespace gft {
namespace {

TEST(Io, NumberFormatRoundTrips) {
  for (const double v : {0.1, 1.0 / 3.0, 2.0e-300, -7.25, 12345678.9}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
}

TEST(Io, MatrixCsvLayout) {
  RealMatrix v(2, 3);
  v << 1, 0, 0.25, 0.5, 0.5, 0;
  EXPECT_EQ(matrix_csv("z", {0.0, 0.5}, v), "z,n0,n1,n2\n0,1,0,0.25\n0.5,0.5,0.5,0\n");
  EXPECT_THROW(matrix_csv("z", {0.0}, v), ValidationError);
}

TEST(Io, PgmLayoutIsSitesByStep) {
  RealMatrix v(3, 2);  // 3 output points, 2 sites
  v << 1.0, 0.0, 0.5, 0.5, 0.0, 2.0;
  EXPECT_EQ(heatmap_pgm(v), "P2\n3 2\n255\n128 64 0\n0 64 255\n");
}

TEST(Io, SvgIsWellFormed) {
  RealMatrix v = RealMatrix::Identity(2, 2);
  const std::string svg = heatmap_svg(v);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("rgb(255,255,255)"), std::string::npos);
}

TEST(Io, CurveCsvHeader) {
  TransportCurve c;
  c.parameter_grid = {0.5};
  c.mean_n_values = {2.25};
  c.engine = ScanEngine::MasterEq;
  c.k = 2;
  c.m = 3;
  EXPECT_EQ(curve_csv(c), "gamma,mean_n,engine,k,m\n0.5,2.25,master,2,3\n");
}

TEST(Io, SnapshotPairs) {
  ComplexMatrix r(1, 2);
  r << std::complex<double>(0.5, -0.25), std::complex<double>(0.0, 1.0);
  EXPECT_EQ(snapshot_text(r), "0.5,-0.25,0,1\n");
}

CsvTable table(const std::string& text) {
  std::istringstream is(text);
  return parse_csv(is, "inline");
}

TEST(Io, CompareWithinAndOutsideTolerance) {
  const auto a = table("t,n0\n0,1\n1,0.5\n");
  const auto b = table("t,n0\n0,1\n1,0.5001\n");
  EXPECT_TRUE(compare_tables(a, b, 1e-3).pass);
  const auto r = compare_tables(a, b, 1e-5);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.columns[1].max_abs, 1e-4, 1e-12);
  EXPECT_NEAR(r.columns[1].rms, 1e-4 / std::sqrt(2.0), 1e-12);
}

TEST(Io, CompareWidensByErrorTable) {
  const auto a = table("t,n0\n0,1.0\n");
  const auto b = table("t,n0\n0,1.1\n");
  const auto e = table("t,n0\n0,0.05\n");
  EXPECT_TRUE(compare_tables(a, b, 0.0, &e, 3.0).pass);
  EXPECT_FALSE(compare_tables(a, b, 0.0, &e, 1.0).pass);
}

TEST(Io, CompareRejectsShapeMismatch) {
  EXPECT_THROW(compare_tables(table("a,b\n1,2\n"), table("a,b\n1,2\n3,4\n"), 0.0), ValidationError);
  EXPECT_THROW(compare_tables(table("a,b\n1,2\n"), table("a,c\n1,2\n"), 0.0), ValidationError);
  EXPECT_THROW(table("a,b\n1\n"), ValidationError);
}

TEST(Io, CompareTextCellsExactly) {
  EXPECT_TRUE(compare_tables(table("e\nmaster\n"), table("e\nmaster\n"), 0.0).pass);
  EXPECT_FALSE(compare_tables(table("e\nmaster\n"), table("e\nclosed-form\n"), 0.0).pass);
}

TEST(Io, CompareFiles) {
  const auto dir = oracle::scratch_dir("io_compare");
  std::ofstream(dir / "a.csv") << "t,n0\n0,1\n";
  std::ofstream(dir / "b.csv") << "t,n0\n0,1\n";
  EXPECT_TRUE(compare((dir / "a.csv").string(), (dir / "b.csv").string(), 0.0).pass);
  EXPECT_THROW(compare((dir / "missing.csv").string(), (dir / "b.csv").string(), 0.0), ValidationError);
}

}  // namespace
}  // namespace gft
