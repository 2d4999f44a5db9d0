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

#include "gft/observables.hpp"
#include "gft/unitary.hpp"
#include "oracles.hpp"

namespace gft {
namespace {

TEST(Unitary, MatchesSpectralPropagator) {
  const LatticeSpec spec{30, 1.0, 0.5};
  const ComplexMatrix h = build_hamiltonian(spec);
  const PureState psi0 = site_state(30, 2);
  for (const auto stepper : {Stepper::Classical, Stepper::InteractionPicture}) {
    const UnitaryResult r = propagate_unitary(h, psi0, {3.0, default_unitary_step(h), 50}, {stepper});
    const ComplexVector ref = oracle::evolve_exact(h, psi0.amplitudes, 3.0);
    EXPECT_NEAR(r.states.back().z, 3.0, 1e-12);
    EXPECT_LT((r.states.back().amplitudes - ref).cwiseAbs().maxCoeff(), 1e-9) << to_string(stepper);
  }
}

TEST(Unitary, OutputStrideAndFinalPoint) {
  const ComplexMatrix h = build_hamiltonian({8, 1.0, 0.5});
  const UnitaryResult r = propagate_unitary(h, site_state(8, 0), {1.0, 0.01, 30}, {});
  ASSERT_EQ(r.states.size(), 5u);  // z = 0, 0.3, 0.6, 0.9, 1.0
  EXPECT_NEAR(r.states[3].z, 0.9, 1e-12);
  EXPECT_NEAR(r.states[4].z, 1.0, 1e-12);
}

TEST(Unitary, MeanIndexFollowsDrivenOscillator) {
  const ComplexMatrix h = build_hamiltonian({50, 1.0, 1.0});
  const UnitaryResult r = propagate_unitary(h, site_state(50, 0), {2.0 * std::numbers::pi, default_unitary_step(h), 100}, {});
  for (const auto& s : r.states) {
    EXPECT_NEAR(mean_site_index(RealVector(s.amplitudes.cwiseAbs2())), oracle::driven_mean_n(0.0, 1.0, 1.0, s.z), 1e-8);
  }
}

TEST(Unitary, NormDriftIsReported) {
  const ComplexMatrix h = build_hamiltonian({20, 1.0, 0.5});
  EXPECT_THROW(propagate_unitary(h, site_state(20, 0), {5.0, 0.5, 1}, {}), IntegrationError);
}

TEST(Unitary, LeakageFlagged) {
  const ComplexMatrix h = build_hamiltonian({10, 1.0, 0.0});
  const UnitaryResult r = propagate_unitary(h, site_state(10, 0), {4.0, 0.001, 100}, {});
  EXPECT_TRUE(r.leakage_warning());
}

TEST(Unitary, RejectsBadInput) {
  const ComplexMatrix h = build_hamiltonian({6, 1.0, 0.5});
  EXPECT_THROW(site_state(6, 6), ValidationError);
  EXPECT_THROW(propagate_unitary(h, site_state(5, 0), {1.0, 0.01, 1}, {}), ValidationError);
  EXPECT_THROW(propagate_unitary(h, site_state(6, 0), {1.0, 0.0, 1}, {}), ValidationError);
  EXPECT_THROW(propagate_unitary(h, site_state(6, 0), {1.0, 0.01, 0}, {}), ValidationError);
  ComplexMatrix bad = h;
  bad(0, 1) += 0.1;
  EXPECT_THROW(propagate_unitary(bad, site_state(6, 0), {1.0, 0.01, 1}, {}), ValidationError);
}

}  // namespace
}  // namespace gft
