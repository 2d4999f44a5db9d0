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

#include <gtest/gtest.h>

#include "gft/stochastic.hpp"
#include "oracles.hpp"

namespace gft {
namespace {

double max_excess(const ComplexMatrix& a, const ComplexMatrix& b, const RealMatrix& se, double sigmas) {
  return ((a - b).cwiseAbs().array() - (sigmas * se.array()).max(1e-12)).maxCoeff();
}

TEST(Trajectory, NoiselessMatchesExactEvolution) {
  const ComplexMatrix h = build_hamiltonian({12, 1.0, 0.5});
  const PureState psi0 = site_state(12, 1);
  NoiseStreams s(CorrelationMode::CorrelatedAcrossSites, 12, 1, 0);
  const UnitaryResult r = propagate_trajectory(h, psi0, {NoiseKind::White, 0.0}, {2.0, 1e-3, 2000}, s);
  EXPECT_LT((r.states.back().amplitudes - oracle::evolve_exact(h, psi0.amplitudes, 2.0)).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Trajectory, NormConservedUnderRoughNoise) {
  const ComplexMatrix h = build_hamiltonian({20, 1.0, 0.5});
  NoiseStreams s(CorrelationMode::UncorrelatedAcrossSites, 20, 4, 0);
  const UnitaryResult r = propagate_trajectory(h, site_state(20, 0), {NoiseKind::White, 5.0}, {10.0, 1e-3, 100}, s);
  for (const auto& st : r.states) EXPECT_NEAR(st.amplitudes.squaredNorm(), 1.0, 1e-10);
}

TEST(Ensemble, BitIdenticalAcrossThreadCounts) {
  const ComplexMatrix h = build_hamiltonian({8, 1.0, 0.5});
  const NoiseModel model{NoiseKind::OrnsteinUhlenbeck, 0.3, 1.0, CorrelationMode::UncorrelatedAcrossSites};
  const PropagationGrid grid{1.0, 0.01, 20};
  const auto a = run_ensemble(h, site_state(8, 0), model, grid, 50, 99, 1);
  const auto b = run_ensemble(h, site_state(8, 0), model, grid, 50, 99, 4);
  ASSERT_EQ(a.mean_sigma.size(), b.mean_sigma.size());
  for (std::size_t k = 0; k < a.mean_sigma.size(); ++k) {
    EXPECT_TRUE(a.mean_sigma[k].elements == b.mean_sigma[k].elements);
    EXPECT_TRUE(a.std_error[k] == b.std_error[k]);
  }
}

TEST(Ensemble, StandardErrorShrinksWithRealizations) {
  const ComplexMatrix h = build_hamiltonian({6, 1.0, 0.5});
  const NoiseModel model{NoiseKind::White, 0.5, 1.0, CorrelationMode::UncorrelatedAcrossSites};
  const PropagationGrid grid{2.0, 0.01, 200};
  const auto small = run_ensemble(h, site_state(6, 0), model, grid, 100, 5);
  const auto large = run_ensemble(h, site_state(6, 0), model, grid, 400, 5);
  const double ratio = large.std_error.back().sum() / small.std_error.back().sum();
  EXPECT_NEAR(ratio, 0.5, 0.1);
}

TEST(Ensemble, WhiteNoiseMatchesMasterEquation) {
  const ComplexMatrix h = build_hamiltonian({6, 1.0, 0.5});
  const double gamma = 0.2;
  for (const auto mode : {CorrelationMode::CorrelatedAcrossSites, CorrelationMode::UncorrelatedAcrossSites}) {
    const auto ens = run_ensemble(h, site_state(6, 0), {NoiseKind::White, gamma, 1.0, mode}, {3.0, 0.005, 600}, 600, 21);
    const auto ref = integrate_master(h, pure_density(site_state(6, 0)), {ScheduleKind::Constant, gamma, 1.0}, mode,
                                      {3.0, 1e-3, 3000}, {});
    EXPECT_LE(max_excess(ens.mean_sigma.back().elements, ref.states.back().elements, ens.std_error.back(), 3.0), 0.0)
        << to_string(mode);
  }
}

// An OU trajectory of strength G has covariance (G lambda / 2) e^{-lambda tau}.
// Its ensemble follows the master equation with rate G (1 - e^{-lambda t}),
// which is the OUN schedule evaluated at 2G. Without hopping the noise
// commutes with the Hamiltonian and this holds for any memory time; with
// hopping it holds in the short-memory limit.
void expect_ou_rate_factor_two(const LatticeSpec& spec, const PureState& psi0, double gamma, double lambda,
                               CorrelationMode mode, double t) {
  const ComplexMatrix h = build_hamiltonian(spec);
  const auto ens = run_ensemble(h, psi0, {NoiseKind::OrnsteinUhlenbeck, gamma, lambda, mode}, {t, 0.005, 100000}, 1000, 8);
  const auto master = [&](double factor) {
    return integrate_master(h, pure_density(psi0), {ScheduleKind::OUN, factor * gamma, lambda}, mode, {t, 1e-3, 100000}, {})
        .states.back()
        .elements;
  };
  const auto& se = ens.std_error.back();
  EXPECT_LE(max_excess(ens.mean_sigma.back().elements, master(2.0), se, 3.0), 0.0) << to_string(mode);
  EXPECT_GT(max_excess(ens.mean_sigma.back().elements, master(1.0), se, 3.0), 0.0) << to_string(mode);
}

TEST(Ensemble, OrnsteinUhlenbeckRateWithoutHopping) {
  PureState spread;
  spread.amplitudes = ComplexVector::Constant(6, 1.0 / std::sqrt(6.0));
  for (const auto mode : {CorrelationMode::CorrelatedAcrossSites, CorrelationMode::UncorrelatedAcrossSites}) {
    expect_ou_rate_factor_two({6, 0.0, 0.5}, spread, 0.3, 1.0, mode, 3.0);
  }
}

TEST(Ensemble, OrnsteinUhlenbeckRateShortMemory) {
  for (const auto mode : {CorrelationMode::CorrelatedAcrossSites, CorrelationMode::UncorrelatedAcrossSites}) {
    expect_ou_rate_factor_two({6, 1.0, 0.5}, site_state(6, 0), 0.1, 50.0, mode, 4.0);
  }
}

TEST(Ensemble, ErrorsNameTheRealization) {
  const ComplexMatrix h = build_hamiltonian({6, 1.0, 0.5});
  EXPECT_THROW(run_ensemble(h, site_state(6, 0), {NoiseKind::White, 0.1}, {1.0, 0.01, 1}, 0, 1), ValidationError);
}

}  // namespace
}  // namespace gft
