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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "gft/lattice.hpp"
#include "oracles.hpp"

namespace gft {
namespace {

TEST(Lattice, HamiltonianMatchesDenseReference) {
  const LatticeSpec spec{12, 0.7, 0.3};
  const ComplexMatrix h = build_hamiltonian(spec);
  EXPECT_LT((h - oracle::gf_hamiltonian(12, 0.7, 0.3)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Lattice, ParameterCorrespondence) {
  const LatticeSpec spec{10, 1.3, 0.4};
  EXPECT_DOUBLE_EQ(spec.drive_g(), 1.3);
  EXPECT_DOUBLE_EQ(spec.base_frequency(), 0.4);
}

TEST(Lattice, RejectsInvalidSpecs) {
  EXPECT_THROW(validate(LatticeSpec{1, 1.0, 0.5}), ValidationError);
  EXPECT_THROW(validate(LatticeSpec{10, -1.0, 0.5}), ValidationError);
  EXPECT_THROW(validate(LatticeSpec{10, 1.0, -0.5}), ValidationError);
  LatticeSpec custom{3, 1.0, 0.0, LatticeMode::CustomHopping};
  EXPECT_THROW(validate(custom), ValidationError);
  RealMatrix k = RealMatrix::Zero(3, 3);
  k(0, 1) = 1.0;
  custom.custom_hopping = k;
  EXPECT_THROW(validate(custom), ValidationError);
  k(1, 0) = 1.0;
  custom.custom_hopping = k;
  EXPECT_NO_THROW(validate(custom));
  k(2, 2) = 0.1;
  custom.custom_hopping = k;
  EXPECT_THROW(validate(custom), ValidationError);
}

TEST(Lattice, CustomHoppingAddsRamp) {
  RealMatrix k = RealMatrix::Zero(3, 3);
  k(0, 2) = k(2, 0) = 0.5;
  const LatticeSpec spec{3, 1.0, 0.25, LatticeMode::CustomHopping, k};
  const ComplexMatrix h = build_hamiltonian(spec);
  EXPECT_DOUBLE_EQ(h(0, 2).real(), 0.5);
  EXPECT_DOUBLE_EQ(h(0, 1).real(), 0.0);
  EXPECT_DOUBLE_EQ(h(2, 2).real(), 0.5);
}

TEST(Geometry, RoundTripGivesSquareRootCouplings) {
  const GeometrySpec geom{12.0, 1.7};
  for (std::size_t m = 1; m <= 64; ++m) {
    const double c = coupling_from_spacing(geom, 0.88, spacing_profile(geom, m));
    EXPECT_NEAR(c / (0.88 * std::sqrt(static_cast<double>(m))), 1.0, 1e-12) << "m = " << m;
  }
}

TEST(Geometry, SiteZeroHasNoSpacing) {
  EXPECT_THROW(spacing_profile(GeometrySpec{10.0, 2.0}, 0), ValidationError);
}

TEST(Revival, DistanceAndTime) {
  EXPECT_NEAR(revival_distance(1.0, 0.5, 1), 4.0 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(revival_distance(2.0, 0.5, 3), 24.0 * std::numbers::pi, 1e-13);
  EXPECT_NEAR(revival_time(0.5, 2), 8.0 * std::numbers::pi, 1e-14);
  EXPECT_THROW(revival_distance(1.0, 0.0, 1), ValidationError);
  EXPECT_THROW(revival_distance(1.0, 0.5, 0), ValidationError);
}

}  // namespace
}  // namespace gft
