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

// Gaussian site-energy noise: white (delta-correlated) and Ornstein-Uhlenbeck.
//
// White:  <phi_n(t) phi_m(t')> = Gamma c_nm delta(t - t')
// OU:     2 <Omega_n(t) Omega_m(t')> = Gamma lambda c_nm exp(-lambda |t - t'|)
// with c_nm = 1 when one generator drives every site, delta_nm otherwise.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "gft/dephasing.hpp"
#include "gft/errors.hpp"
#include "gft/lattice.hpp"
#include "gft/rng.hpp"

namespace gft {

enum class NoiseKind { White, OrnsteinUhlenbeck };

struct NoiseModel {
  NoiseKind kind = NoiseKind::White;
  double gamma = 0.0;
  double lambda = 1.0;
  CorrelationMode correlation = CorrelationMode::UncorrelatedAcrossSites;

  double stationary_variance() const { return 0.5 * gamma * lambda; }
};

inline void validate(const NoiseModel& m) {
  if (!(m.gamma >= 0.0) || !std::isfinite(m.gamma)) throw ValidationError("noise.gamma must be a finite value >= 0");
  if (m.kind == NoiseKind::OrnsteinUhlenbeck && (!(m.lambda > 0.0) || !std::isfinite(m.lambda))) {
    throw ValidationError("noise.lambda must be > 0 for Ornstein-Uhlenbeck noise");
  }
}

/// Standard-normal generators for one realization: a single stream when the
/// noise is shared by all sites, one stream per site otherwise.
class NoiseStreams {
 public:
  NoiseStreams(CorrelationMode mode, std::size_t num_sites, std::uint64_t master_seed, std::uint64_t realization)
      : num_sites_(num_sites), shared_(mode == CorrelationMode::CorrelatedAcrossSites) {
    const std::size_t count = shared_ ? 1 : num_sites;
    streams_.reserve(count);
    for (std::size_t s = 0; s < count; ++s) streams_.emplace_back(stream_seed(master_seed, realization, s));
  }

  std::size_t num_sites() const { return num_sites_; }
  bool shared() const { return shared_; }

  /// One standard-normal draw per site (replicated when shared).
  RealVector standard_normals() {
    RealVector xi(static_cast<Eigen::Index>(num_sites_));
    if (shared_) {
      xi.setConstant(streams_.front().draw());
    } else {
      for (std::size_t s = 0; s < num_sites_; ++s) xi[static_cast<Eigen::Index>(s)] = streams_[s].draw();
    }
    return xi;
  }

 private:
  struct Stream {
    explicit Stream(std::uint64_t seed) : engine(seed) {}
    double draw() { return normal(engine); }
    StreamEngine engine;
    std::normal_distribution<double> normal;
  };

  std::size_t num_sites_;
  bool shared_;
  std::vector<Stream> streams_;
};

/// Piecewise-constant white noise over a step of length dt: variance Gamma/dt.
inline RealVector sample_white_step(double dt, const NoiseModel& model, NoiseStreams& streams) {
  if (!(dt > 0.0)) throw ValidationError("dt must be > 0");
  if (model.gamma == 0.0) return RealVector::Zero(static_cast<Eigen::Index>(streams.num_sites()));
  return std::sqrt(model.gamma / dt) * streams.standard_normals();
}

/// Draw from the stationary law N(0, Gamma lambda / 2).
inline RealVector sample_ou_stationary(const NoiseModel& model, NoiseStreams& streams) {
  if (model.gamma == 0.0) return RealVector::Zero(static_cast<Eigen::Index>(streams.num_sites()));
  return std::sqrt(model.stationary_variance()) * streams.standard_normals();
}

/// Exact OU transition over dt.
inline RealVector sample_ou_step(const RealVector& prev, double dt, const NoiseModel& model, NoiseStreams& streams) {
  if (!(dt > 0.0)) throw ValidationError("dt must be > 0");
  if (model.gamma == 0.0) return RealVector::Zero(prev.size());
  const double decay = std::exp(-model.lambda * dt);
  const double spread = std::sqrt(model.stationary_variance() * -std::expm1(-2.0 * model.lambda * dt));
  return decay * prev + spread * streams.standard_normals();
}

}  // namespace gft
