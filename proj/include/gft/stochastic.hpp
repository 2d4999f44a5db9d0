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

// Stochastic Schroedinger trajectories with fluctuating site energies
// w_n(t) = H_nn + n phi_n(t), and their ensemble average
// sigma_nm = <psi_n psi_m^*>.
//
// The noise is held constant over each step (Wong-Zakai smoothing), so the
// white-noise limit dt -> 0 is the Stratonovich one. Each step is a
// symmetric splitting: half a step of the frozen diagonal phase, the exact
// hopping propagator, then the other half. Every factor is unitary, so the
// norm is conserved to round-off however rough the noise is.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "gft/errors.hpp"
#include "gft/lattice.hpp"
#include "gft/master.hpp"
#include "gft/noise.hpp"
#include "gft/operator.hpp"
#include "gft/parallel.hpp"
#include "gft/rk4.hpp"
#include "gft/unitary.hpp"

namespace gft {

struct TrajectoryOptions {
  double norm_tolerance = 1e-8;  // allowed |norm^2 - 1| per unit time
};

inline UnitaryResult propagate_trajectory(const ComplexMatrix& h, const PureState& psi0, const NoiseModel& model,
                                          const PropagationGrid& grid, NoiseStreams& streams,
                                          const TrajectoryOptions& options = {}) {
  validate(grid);
  validate(model);
  if (psi0.amplitudes.size() != h.rows() || streams.num_sites() != static_cast<std::size_t>(h.rows())) {
    throw ValidationError("state, noise streams and Hamiltonian dimensions differ");
  }
  if (std::abs(psi0.amplitudes.squaredNorm() - 1.0) > 1e-12) {
    throw ValidationError("initial state must be normalized");
  }
  const SplitHamiltonian op = split_hamiltonian(h);
  const std::size_t steps = step_count(grid.z_max, grid.dz);
  const double dt = grid.z_max / static_cast<double>(steps);
  const Eigen::Index n = h.rows();
  const RealVector site_index = RealVector::LinSpaced(n, 0.0, static_cast<double>(n - 1));

  UnitaryResult out;
  ComplexVector psi = psi0.amplitudes;
  out.states.push_back({psi, psi0.z});
  out.max_leakage = boundary_population(psi.cwiseAbs2());

  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(ComplexMatrix(op.hopping));
  const ComplexVector hop_phase =
      (std::complex<double>(0.0, -dt) * eig.eigenvalues().cast<std::complex<double>>()).array().exp().matrix();
  const ComplexMatrix hop_step = eig.eigenvectors() * hop_phase.asDiagonal() * eig.eigenvectors().adjoint();
  RealVector ou = model.kind == NoiseKind::OrnsteinUhlenbeck ? sample_ou_stationary(model, streams)
                                                             : RealVector::Zero(n);
  for (std::size_t step = 1; step <= steps; ++step) {
    const RealVector noise = model.kind == NoiseKind::White ? sample_white_step(dt, model, streams) : ou;
    const RealVector energy = op.site_energy + site_index.cwiseProduct(noise);
    const ComplexVector half_phase =
        (std::complex<double>(0.0, -0.5 * dt) * energy.cast<std::complex<double>>()).array().exp().matrix();
    psi = half_phase.cwiseProduct(hop_step * half_phase.cwiseProduct(psi));
    if (model.kind == NoiseKind::OrnsteinUhlenbeck) ou = sample_ou_step(ou, dt, model, streams);

    const double t = psi0.z + static_cast<double>(step) * dt;
    out.max_leakage = std::max(out.max_leakage, boundary_population(psi.cwiseAbs2()));
    if (step % grid.output_stride == 0 || step == steps) {
      detail::check_norm(psi, t - psi0.z, options.norm_tolerance, dt);
      out.states.push_back({psi, t});
    }
  }
  return out;
}

struct TrajectoryEnsemble {
  std::size_t num_realizations = 0;
  std::uint64_t master_seed = 0;
  std::vector<DensityMatrix> mean_sigma;  // one per output point
  std::vector<RealMatrix> std_error;      // standard error of each element
  double max_leakage = 0.0;

  RealMatrix populations() const {
    if (mean_sigma.empty()) return {};
    RealMatrix out(static_cast<Eigen::Index>(mean_sigma.size()), mean_sigma.front().elements.rows());
    for (std::size_t r = 0; r < mean_sigma.size(); ++r) {
      out.row(static_cast<Eigen::Index>(r)) = mean_sigma[r].populations().transpose();
    }
    return out;
  }
  RealMatrix population_errors() const {
    if (std_error.empty()) return {};
    RealMatrix out(static_cast<Eigen::Index>(std_error.size()), std_error.front().rows());
    for (std::size_t r = 0; r < std_error.size(); ++r) {
      out.row(static_cast<Eigen::Index>(r)) = std_error[r].diagonal().transpose();
    }
    return out;
  }
};

namespace detail {

/// Running sums of psi psi^dagger and |psi_n psi_m^*|^2 at every output point.
struct EnsembleSums {
  std::vector<ComplexMatrix> first;
  std::vector<RealMatrix> second;
  double max_leakage = 0.0;

  void add(const UnitaryResult& run) {
    if (first.empty()) {
      const Eigen::Index n = run.states.front().amplitudes.size();
      first.assign(run.states.size(), ComplexMatrix::Zero(n, n));
      second.assign(run.states.size(), RealMatrix::Zero(n, n));
    }
    for (std::size_t k = 0; k < run.states.size(); ++k) {
      const ComplexVector& psi = run.states[k].amplitudes;
      first[k] += psi * psi.adjoint();
      const RealVector p = psi.cwiseAbs2();
      second[k] += p * p.transpose();
    }
    max_leakage = std::max(max_leakage, run.max_leakage);
  }

  void merge(const EnsembleSums& other) {
    if (first.empty()) {
      *this = other;
      return;
    }
    for (std::size_t k = 0; k < first.size(); ++k) {
      first[k] += other.first[k];
      second[k] += other.second[k];
    }
    max_leakage = std::max(max_leakage, other.max_leakage);
  }
};

inline constexpr std::size_t kEnsembleBlock = 16;

}  // namespace detail

/// Averages M independent trajectories. Realizations are grouped in fixed
/// blocks whose partial sums are merged in block order, so the result is
/// bit-identical for any thread count.
inline TrajectoryEnsemble run_ensemble(const ComplexMatrix& h, const PureState& psi0, const NoiseModel& model,
                                       const PropagationGrid& grid, std::size_t num_realizations,
                                       std::uint64_t master_seed, std::size_t threads = 1,
                                       const TrajectoryOptions& options = {}) {
  if (num_realizations == 0) throw ValidationError("run.realizations must be >= 1");
  validate(model);
  validate(grid);
  const std::size_t num_sites = static_cast<std::size_t>(h.rows());
  const std::size_t blocks = (num_realizations + detail::kEnsembleBlock - 1) / detail::kEnsembleBlock;

  detail::EnsembleSums total;
  std::map<std::size_t, detail::EnsembleSums> pending;
  std::size_t next_merge = 0;
  std::mutex merge_mutex;

  parallel_for(blocks, threads, [&](std::size_t block) {
    detail::EnsembleSums sums;
    const std::size_t begin = block * detail::kEnsembleBlock;
    const std::size_t end = std::min(num_realizations, begin + detail::kEnsembleBlock);
    for (std::size_t r = begin; r < end; ++r) {
      NoiseStreams streams(model.correlation, num_sites, master_seed, r);
      try {
        sums.add(propagate_trajectory(h, psi0, model, grid, streams, options));
      } catch (const IntegrationError& e) {
        throw IntegrationError("realization " + std::to_string(r) + ": " + e.what());
      }
    }
    std::lock_guard lock(merge_mutex);
    pending.emplace(block, std::move(sums));
    for (auto it = pending.find(next_merge); it != pending.end(); it = pending.find(next_merge)) {
      total.merge(it->second);
      pending.erase(it);
      ++next_merge;
    }
  });

  TrajectoryEnsemble out;
  out.num_realizations = num_realizations;
  out.master_seed = master_seed;
  out.max_leakage = total.max_leakage;
  const double m = static_cast<double>(num_realizations);
  // Recompute output times from the grid to avoid storing them per block.
  const std::size_t steps = step_count(grid.z_max, grid.dz);
  const double dt = grid.z_max / static_cast<double>(steps);
  std::vector<double> times{psi0.z};
  for (std::size_t step = 1; step <= steps; ++step) {
    if (step % grid.output_stride == 0 || step == steps) times.push_back(psi0.z + static_cast<double>(step) * dt);
  }
  for (std::size_t k = 0; k < total.first.size(); ++k) {
    ComplexMatrix mean = total.first[k] / m;
    RealMatrix se = RealMatrix::Zero(mean.rows(), mean.cols());
    if (num_realizations > 1) {
      const RealMatrix var = ((total.second[k] / m).array() - mean.cwiseAbs2().array()).max(0.0).matrix() * (m / (m - 1.0));
      se = (var / m).cwiseSqrt();
    }
    out.mean_sigma.push_back({std::move(mean), times[k]});
    out.std_error.push_back(std::move(se));
  }
  return out;
}

}  // namespace gft
