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

// Lattice geometry and single-excitation Hamiltonians.
//
// A Glauber-Fock (GF) lattice of N waveguides has couplings C1*sqrt(m) between
// sites m-1 and m and a linear propagation-constant ramp alpha*m. Read as a
// driven harmonic oscillator H = omega*n + g*(a + a^dagger) truncated to the
// Fock states |0>..|N-1>, the same matrix appears with g = C1, omega = alpha
// and time t = propagation distance z. Sites are zero-indexed so that site m
// is Fock state |m>.

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "gft/errors.hpp"

namespace gft {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

enum class LatticeMode { GlauberFock, CustomHopping };

struct LatticeSpec {
  std::size_t num_sites = 40;
  double coupling_c1 = 1.0;  // C1, identical to the oscillator drive g
  double ramp_alpha = 0.5;   // alpha, identical to the oscillator frequency omega
  LatticeMode mode = LatticeMode::GlauberFock;
  std::optional<RealMatrix> custom_hopping;  // symmetric N x N, zero diagonal

  double drive_g() const { return coupling_c1; }
  double base_frequency() const { return ramp_alpha; }

  friend bool operator==(const LatticeSpec& a, const LatticeSpec& b) {
    if (a.num_sites != b.num_sites || a.coupling_c1 != b.coupling_c1 ||
        a.ramp_alpha != b.ramp_alpha || a.mode != b.mode ||
        a.custom_hopping.has_value() != b.custom_hopping.has_value()) {
      return false;
    }
    return !a.custom_hopping || *a.custom_hopping == *b.custom_hopping;
  }
};

/// Fabrication parameters of a laser-written GF array (lengths in um).
struct GeometrySpec {
  double d1 = 0.0;  // separation between waveguides 0 and 1
  double s = 0.0;   // coupling decay length
};

inline void validate(const LatticeSpec& spec) {
  if (spec.num_sites < 2) {
    throw ValidationError("lattice.sites must be >= 2, got " + std::to_string(spec.num_sites));
  }
  if (!(spec.coupling_c1 >= 0.0) || !std::isfinite(spec.coupling_c1)) {
    throw ValidationError("lattice.c1 must be a finite value >= 0");
  }
  if (!(spec.ramp_alpha >= 0.0) || !std::isfinite(spec.ramp_alpha)) {
    throw ValidationError("lattice.alpha must be a finite value >= 0 (negative ramps are not supported)");
  }
  if (spec.mode == LatticeMode::CustomHopping) {
    if (!spec.custom_hopping) {
      throw ValidationError("lattice.hopping is required when lattice.mode = custom");
    }
    const RealMatrix& k = *spec.custom_hopping;
    const auto n = static_cast<Eigen::Index>(spec.num_sites);
    if (k.rows() != n || k.cols() != n) {
      throw ValidationError("lattice.hopping must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    if (!k.allFinite()) {
      throw ValidationError("lattice.hopping contains non-finite entries");
    }
    const double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < n; ++i) {
      if (k(i, i) != 0.0) {
        throw ValidationError("lattice.hopping must have a zero diagonal (entry " + std::to_string(i) + ")");
      }
      for (Eigen::Index j = i + 1; j < n; ++j) {
        if (std::abs(k(i, j) - k(j, i)) > 1e-12 * scale) {
          throw ValidationError("lattice.hopping is not symmetric at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
        }
      }
    }
  }
}

/// Real symmetric hopping matrix kappa of the spec (diagonal zero).
inline RealMatrix hopping_matrix(const LatticeSpec& spec) {
  validate(spec);
  const auto n = static_cast<Eigen::Index>(spec.num_sites);
  if (spec.mode == LatticeMode::CustomHopping) return *spec.custom_hopping;
  RealMatrix k = RealMatrix::Zero(n, n);
  for (Eigen::Index m = 0; m + 1 < n; ++m) {
    const double c = spec.coupling_c1 * std::sqrt(static_cast<double>(m + 1));
    k(m, m + 1) = c;
    k(m + 1, m) = c;
  }
  return k;
}

/// H_nn = n * omega, H_nj = kappa_nj. Exactly Hermitian (real symmetric).
inline ComplexMatrix build_hamiltonian(const LatticeSpec& spec) {
  ComplexMatrix h = hopping_matrix(spec).cast<std::complex<double>>();
  for (Eigen::Index n = 0; n < h.rows(); ++n) {
    h(n, n) = static_cast<double>(n) * spec.ramp_alpha;
  }
  return h;
}

/// d_m = d1 - (s/2) ln m.
inline double spacing_profile(const GeometrySpec& geom, std::size_t m) {
  if (m == 0) {
    throw ValidationError("spacing_profile: m must be >= 1 (waveguide 0 has no left neighbour)");
  }
  return geom.d1 - 0.5 * geom.s * std::log(static_cast<double>(m));
}

/// Evanescent coupling C1 * exp(-(d - d1) / s) at separation d.
inline double coupling_from_spacing(const GeometrySpec& geom, double c1, double d) {
  if (!(geom.s > 0.0)) throw ValidationError("geometry.s must be > 0");
  return c1 * std::exp(-(d - geom.d1) / geom.s);
}

/// Scaled revival distance Z_rev = 2 pi k C1 / alpha. The physical distance
/// is Z_rev / C1 = 2 pi k / alpha, which is also the oscillator revival time.
inline double revival_distance(double c1, double alpha, int k) {
  if (k < 1) throw ValidationError("revival index k must be >= 1");
  if (alpha < 0.0) throw ValidationError("alpha must be >= 0");
  if (alpha == 0.0) throw ValidationError("no Bloch revival: alpha = 0 delocalizes the light");
  return 2.0 * std::numbers::pi * k * c1 / alpha;
}

/// Revival time t_rev = 2 pi k / omega.
inline double revival_time(double omega, int k) { return revival_distance(1.0, omega, k); }

}  // namespace gft
