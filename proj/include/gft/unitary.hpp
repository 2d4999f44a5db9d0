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

// Noiseless coupled-mode propagation.
//
// Amplitudes evolve as d psi / dz = -i H psi (Schroedinger sign). The
// coupled-mode equation for waveguide fields carries the opposite sign; the
// two solutions are complex conjugates of each other and have identical
// intensities, which is the only observable compared downstream.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "gft/errors.hpp"
#include "gft/format.hpp"
#include "gft/lattice.hpp"
#include "gft/operator.hpp"
#include "gft/rk4.hpp"

namespace gft {

struct PureState {
  ComplexVector amplitudes;
  double z = 0.0;
};

struct PropagationGrid {
  double z_max = 1.0;
  double dz = 1e-3;
  std::size_t output_stride = 1;
};

/// Excitation localized on a single site.
inline PureState site_state(std::size_t num_sites, std::size_t site) {
  if (site >= num_sites) {
    throw ValidationError("initial site " + std::to_string(site) + " outside lattice of " +
                          std::to_string(num_sites) + " sites");
  }
  PureState s;
  s.amplitudes = ComplexVector::Zero(static_cast<Eigen::Index>(num_sites));
  s.amplitudes[static_cast<Eigen::Index>(site)] = 1.0;
  return s;
}

/// Default step: ||H||_inf * dz = 0.01, which keeps RK4 norm drift far below
/// 1e-9 per unit distance and satisfies C_N dz <= 0.05 for GF lattices.
inline double default_unitary_step(const ComplexMatrix& h) {
  const double norm = split_hamiltonian(h).max_row_sum;
  return norm > 0.0 ? 0.01 / norm : 0.01;
}

struct UnitaryOptions {
  Stepper stepper = Stepper::Classical;
  double norm_tolerance = 1e-9;  // allowed |norm^2 - 1| per unit distance
};

struct UnitaryResult {
  std::vector<PureState> states;
  double max_leakage = 0.0;  // largest boundary population seen at any step

  bool leakage_warning() const { return max_leakage > kLeakageWarning; }
};

inline void validate(const PropagationGrid& g) {
  step_count(g.z_max, g.dz);
  if (g.output_stride == 0) throw ValidationError("output stride must be >= 1");
}

namespace detail {

inline void check_norm(const ComplexVector& psi, double z, double tolerance, double dz) {
  const double drift = std::abs(psi.squaredNorm() - 1.0);
  if (!(drift <= tolerance * std::max(1.0, z))) {
    throw IntegrationError("norm drift " + format_number(drift) + " at z = " + format_number(z) +
                           " exceeds tolerance; reduce the step below dz = " + format_number(dz));
  }
}

}  // namespace detail

inline UnitaryResult propagate_unitary(const ComplexMatrix& h, const PureState& psi0, const PropagationGrid& grid,
                                       const UnitaryOptions& options = {}) {
  validate(grid);
  if (psi0.amplitudes.size() != h.rows()) {
    throw ValidationError("initial state dimension does not match the Hamiltonian");
  }
  if (std::abs(psi0.amplitudes.squaredNorm() - 1.0) > 1e-12) {
    throw ValidationError("initial state must be normalized");
  }
  const SplitHamiltonian op = split_hamiltonian(h);
  const std::size_t steps = step_count(grid.z_max, grid.dz);
  const double dz = grid.z_max / static_cast<double>(steps);

  UnitaryResult out;
  ComplexVector psi = psi0.amplitudes;
  double z = psi0.z;
  out.states.push_back({psi, z});
  out.max_leakage = boundary_population(psi.cwiseAbs2());

  const auto hopping_rhs = [&op](const ComplexVector& y, double) -> ComplexVector {
    return std::complex<double>(0.0, -1.0) * (op.hopping * y);
  };
  const auto full_rhs = [&op](const ComplexVector& y, double) -> ComplexVector {
    return std::complex<double>(0.0, -1.0) * op.apply(y);
  };
  ComplexVector half_phase;
  if (options.stepper == Stepper::InteractionPicture) {
    half_phase = (std::complex<double>(0.0, -0.5 * dz) * op.site_energy.cast<std::complex<double>>())
                     .array()
                     .exp()
                     .matrix();
  }

  for (std::size_t step = 1; step <= steps; ++step) {
    const double t0 = psi0.z + static_cast<double>(step - 1) * dz;
    if (options.stepper == Stepper::Classical) {
      rk4_step(psi, t0, dz, full_rhs);
    } else {
      lawson_rk4_step(psi, t0, dz, half_phase, half_phase, hopping_rhs);
    }
    z = psi0.z + static_cast<double>(step) * dz;
    out.max_leakage = std::max(out.max_leakage, boundary_population(psi.cwiseAbs2()));
    if (step % grid.output_stride == 0 || step == steps) {
      detail::check_norm(psi, z - psi0.z, options.norm_tolerance, dz);
      out.states.push_back({psi, z});
    }
  }
  return out;
}

/// I_m(z) = |psi_m(z)|^2, one row per output point.
inline RealMatrix intensity(const std::vector<PureState>& states) {
  if (states.empty()) return {};
  RealMatrix out(static_cast<Eigen::Index>(states.size()), states.front().amplitudes.size());
  for (std::size_t r = 0; r < states.size(); ++r) {
    out.row(static_cast<Eigen::Index>(r)) = states[r].amplitudes.cwiseAbs2().transpose();
  }
  return out;
}

}  // namespace gft
