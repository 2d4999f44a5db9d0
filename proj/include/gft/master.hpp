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

// Density-matrix engine for single-excitation transport under pure dephasing.
//
// One right-hand side covers the oscillator master equation and the network
// equation, Markovian or with a time-dependent rate:
//
//   d rho_nm / dt = -i (w_n - w_m) rho_nm - i [K, rho]_nm
//                   - Gamma(t) * (n^2 + m^2 - 2 c_nm n m) / 2 * rho_nm
//
// with w_n = H_nn, K the hopping part of H, Gamma_n(t) = Gamma(t) n^2 and
// c_nm = 1 for site-correlated noise or delta_nm for uncorrelated noise.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "gft/dephasing.hpp"
#include "gft/errors.hpp"
#include "gft/format.hpp"
#include "gft/lattice.hpp"
#include "gft/operator.hpp"
#include "gft/rk4.hpp"
#include "gft/unitary.hpp"

namespace gft {

struct DensityMatrix {
  ComplexMatrix elements;
  double t = 0.0;

  RealVector populations() const { return elements.diagonal().real(); }
  double trace() const { return elements.trace().real(); }
  double purity() const { return (elements * elements).trace().real(); }
};

inline DensityMatrix pure_density(const PureState& psi) {
  return {psi.amplitudes * psi.amplitudes.adjoint(), psi.z};
}

/// Weights f_nm such that the dephasing term is -Gamma(t) f_nm rho_nm.
inline RealMatrix dephasing_weights(Eigen::Index num_sites, CorrelationMode mode) {
  RealMatrix f(num_sites, num_sites);
  for (Eigen::Index n = 0; n < num_sites; ++n) {
    for (Eigen::Index m = 0; m < num_sites; ++m) {
      const double dn = static_cast<double>(n);
      const double dm = static_cast<double>(m);
      const double cross = (mode == CorrelationMode::CorrelatedAcrossSites || n == m) ? dn * dm : 0.0;
      f(n, m) = 0.5 * (dn * dn + dm * dm) - cross;
    }
  }
  return f;
}

/// Precomputed pieces of the master right-hand side for one (H, mode) pair.
class MasterOperator {
 public:
  MasterOperator(const ComplexMatrix& h, CorrelationMode mode)
      : split_(split_hamiltonian(h)), weights_(dephasing_weights(h.rows(), mode)), mode_(mode) {
    const Eigen::Index n = h.rows();
    energy_gap_.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        energy_gap_(i, j) = split_.site_energy[i] - split_.site_energy[j];
      }
    }
  }

  Eigen::Index size() const { return split_.size(); }
  const SplitHamiltonian& hamiltonian() const { return split_; }
  const RealMatrix& weights() const { return weights_; }

  /// -i [K, rho], column by column over the row-compressed hopping.
  ComplexMatrix hopping_term(const ComplexMatrix& rho) const {
    using cd = std::complex<double>;
    const Eigen::Index n = rho.rows();
    const SparseHopping& k = split_.hopping;
    const auto* outer = k.outerIndexPtr();
    const auto* inner = k.innerIndexPtr();
    const cd* val = k.valuePtr();
    ComplexMatrix out(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const cd* rc = rho.data() + j * n;
      cd* oc = out.data() + j * n;
      for (Eigen::Index i = 0; i < n; ++i) {
        cd sum = 0.0;
        for (auto p = outer[i]; p < outer[i + 1]; ++p) sum += val[p] * rc[inner[p]];
        oc[i] = sum;
      }
      // (rho K)(:, j) = sum_k rho(:, k) K(k, j), and K(k, j) = conj(K(j, k))
      for (auto p = outer[j]; p < outer[j + 1]; ++p) {
        const cd w = std::conj(val[p]);
        const cd* rk = rho.data() + static_cast<Eigen::Index>(inner[p]) * n;
        for (Eigen::Index i = 0; i < n; ++i) oc[i] -= w * rk[i];
      }
      for (Eigen::Index i = 0; i < n; ++i) oc[i] = cd(oc[i].imag(), -oc[i].real());
    }
    return out;
  }

  /// Full right-hand side at rate `gamma_t`.
  ComplexMatrix rhs(const ComplexMatrix& rho, double gamma_t) const {
    ComplexMatrix out = hopping_term(rho);
    const auto i = std::complex<double>(0.0, 1.0);
    out.array() -= (i * energy_gap_.array() + gamma_t * weights_.array()) * rho.array();
    return out;
  }

  /// exp(-i dt (w_n - w_m)), the free phase over `dt`.
  ComplexMatrix phase_factor(double dt) const {
    const Eigen::ArrayXXd phase = -dt * energy_gap_.array();
    ComplexMatrix out(size(), size());
    out.real() = phase.cos().matrix();
    out.imag() = phase.sin().matrix();
    return out;
  }

  /// exp(-dgamma f_nm), built from O(N) exponentials.
  RealMatrix decay_factor(double dgamma) const {
    const Eigen::Index n = size();
    RealMatrix out(n, n);
    if (mode_ == CorrelationMode::CorrelatedAcrossSites) {
      Eigen::ArrayXd by_distance(n);
      for (Eigen::Index d = 0; d < n; ++d) by_distance[d] = std::exp(-dgamma * 0.5 * static_cast<double>(d * d));
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) out(i, j) = by_distance[std::abs(i - j)];
    } else {
      Eigen::ArrayXd half(n);
      for (Eigen::Index d = 0; d < n; ++d) half[d] = std::exp(-dgamma * 0.5 * static_cast<double>(d * d));
      out = (half.matrix() * half.matrix().transpose());
      out.diagonal().setOnes();
    }
    return out;
  }

  /// Elementwise propagator of the diagonal linear part over a time span
  /// `dt` during which the schedule accumulates `dgamma`.
  ComplexMatrix linear_factor(double dt, double dgamma) const {
    return phase_factor(dt).cwiseProduct(decay_factor(dgamma).cast<std::complex<double>>());
  }

 private:
  SplitHamiltonian split_;
  RealMatrix weights_;
  RealMatrix energy_gap_;
  CorrelationMode mode_;
};

inline ComplexMatrix master_rhs(const DensityMatrix& rho, const ComplexMatrix& h, const DephasingSchedule& schedule,
                                CorrelationMode mode, double t) {
  if (rho.elements.rows() != h.rows() || rho.elements.cols() != h.cols()) {
    throw ValidationError("density matrix dimension does not match the Hamiltonian");
  }
  return MasterOperator(h, mode).rhs(rho.elements, dephasing_rate(schedule, t));
}

/// Default step. Classical RK4 must resolve every rate in the generator;
/// the interaction-picture stepper only the hopping.
inline double default_master_step(const MasterOperator& op, const DephasingSchedule& schedule, Stepper stepper) {
  const double hop = hopping_row_sum(op.hamiltonian());
  double peak_rate = schedule.gamma;
  if (schedule.kind != ScheduleKind::Constant) peak_rate *= 0.5;
  if (stepper == Stepper::InteractionPicture) {
    // the slowest-decaying coherences (weight 1/2) must stay resolved
    double dt = hop > 0.0 ? 0.2 / hop : 0.2;
    if (peak_rate > 0.0) dt = std::min(dt, 1.0 / peak_rate);
    return dt;
  }
  const RealVector& e = op.hamiltonian().site_energy;
  const double spread = e.size() > 0 ? e.maxCoeff() - e.minCoeff() : 0.0;
  const double bound = 2.0 * hop + spread + peak_rate * op.weights().maxCoeff();
  return bound > 0.0 ? 0.01 / bound : 0.01;
}

struct MasterOptions {
  Stepper stepper = Stepper::Classical;
  double trace_tolerance = 1e-6;
  double positivity_tolerance = 1e-6;
  double leakage_abort = 0.0;  // > 0: stop as soon as the boundary population exceeds it
};

struct MasterResult {
  std::vector<DensityMatrix> states;
  double max_leakage = 0.0;
  bool aborted = false;  // stopped early by leakage_abort

  bool leakage_warning() const { return max_leakage > kLeakageWarning; }
  RealMatrix populations() const {
    if (states.empty()) return {};
    RealMatrix out(static_cast<Eigen::Index>(states.size()), states.front().elements.rows());
    for (std::size_t r = 0; r < states.size(); ++r) {
      out.row(static_cast<Eigen::Index>(r)) = states[r].populations().transpose();
    }
    return out;
  }
};

inline void validate(const DensityMatrix& rho) {
  const ComplexMatrix& e = rho.elements;
  if (e.rows() != e.cols() || e.rows() == 0) throw ValidationError("density matrix must be square");
  if ((e - e.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw ValidationError("density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-8) throw ValidationError("density matrix must have unit trace");
  if (rho.populations().minCoeff() < -1e-10) throw ValidationError("density matrix has negative populations");
}

inline MasterResult integrate_master(const ComplexMatrix& h, const DensityMatrix& rho0,
                                     const DephasingSchedule& schedule, CorrelationMode mode,
                                     const PropagationGrid& grid, const MasterOptions& options = {}) {
  validate(grid);
  validate(schedule);
  validate(rho0);
  if (rho0.elements.rows() != h.rows()) {
    throw ValidationError("density matrix dimension does not match the Hamiltonian");
  }
  const MasterOperator op(h, mode);
  const std::size_t steps = step_count(grid.z_max, grid.dz);
  const double dt = grid.z_max / static_cast<double>(steps);
  const double t_start = rho0.t;

  MasterResult out;
  ComplexMatrix rho = rho0.elements;
  out.states.push_back(rho0);
  out.max_leakage = boundary_population(rho.diagonal().real());

  const auto full_rhs = [&](const ComplexMatrix& y, double t) -> ComplexMatrix {
    return op.rhs(y, dephasing_rate(schedule, t));
  };
  const auto hopping_rhs = [&](const ComplexMatrix& y, double) -> ComplexMatrix { return op.hopping_term(y); };

  ComplexMatrix first, second, half_phase;
  const bool constant_rate = schedule.kind == ScheduleKind::Constant;
  if (options.stepper == Stepper::InteractionPicture) {
    half_phase = op.phase_factor(0.5 * dt);
    if (constant_rate) {
      first = half_phase.cwiseProduct(op.decay_factor(0.5 * dt * schedule.gamma).cast<std::complex<double>>());
      second = first;
    }
  }

  for (std::size_t step = 1; step <= steps; ++step) {
    const double t0 = t_start + static_cast<double>(step - 1) * dt;
    if (options.stepper == Stepper::Classical) {
      rk4_step(rho, t0, dt, full_rhs);
    } else {
      if (!constant_rate) {
        const double g0 = cumulative_dephasing(schedule, t0);
        const double gh = cumulative_dephasing(schedule, t0 + 0.5 * dt);
        const double g1 = cumulative_dephasing(schedule, t0 + dt);
        first = half_phase.cwiseProduct(op.decay_factor(gh - g0).cast<std::complex<double>>());
        second = half_phase.cwiseProduct(op.decay_factor(g1 - gh).cast<std::complex<double>>());
      }
      lawson_rk4_step(rho, t0, dt, first, second, hopping_rhs);
    }
    const double t = t_start + static_cast<double>(step) * dt;
    const RealVector pop = rho.diagonal().real();
    out.max_leakage = std::max(out.max_leakage, boundary_population(pop));
    const double drift = std::abs(pop.sum() - 1.0);
    if (!(drift <= options.trace_tolerance)) {
      throw IntegrationError("trace drift " + format_number(drift) + " at t = " + format_number(t) +
                             "; reduce the step below dt = " + format_number(dt));
    }
    if (pop.minCoeff() < -options.positivity_tolerance) {
      throw IntegrationError("negative population " + format_number(pop.minCoeff()) + " at t = " +
                             format_number(t) + "; reduce the step below dt = " + format_number(dt));
    }
    if (step % grid.output_stride == 0 || step == steps) out.states.push_back({rho, t});
    if (options.leakage_abort > 0.0 && out.max_leakage > options.leakage_abort) {
      out.aborted = true;
      break;
    }
  }
  return out;
}

}  // namespace gft
