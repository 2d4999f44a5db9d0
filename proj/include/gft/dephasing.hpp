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

// Pure-dephasing rate schedules and the inter-site correlation switch.

#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "gft/errors.hpp"

namespace gft {

enum class ScheduleKind { Constant, OUN, PLN };

/// Whether one noise process drives every site (no Kronecker delta in the
/// master equation, identical to the oscillator Lindblad form) or each site
/// has its own independent process.
enum class CorrelationMode { CorrelatedAcrossSites, UncorrelatedAcrossSites };

/// Time-dependent dephasing rate gamma(t).
///   Constant: gamma
///   OUN:      gamma/2 * (1 - exp(-lambda t))
///   PLN:      gamma / (2 (lambda t + 1)^3)
/// lambda is ignored for Constant.
struct DephasingSchedule {
  ScheduleKind kind = ScheduleKind::Constant;
  double gamma = 0.0;
  double lambda = 1.0;

  /// Same schedule with gamma multiplied by `factor`; every kind is linear in gamma.
  DephasingSchedule scaled(double factor) const {
    DephasingSchedule s = *this;
    s.gamma *= factor;
    return s;
  }

  friend bool operator==(const DephasingSchedule&, const DephasingSchedule&) = default;
};

inline void validate(const DephasingSchedule& s) {
  if (!(s.gamma >= 0.0) || !std::isfinite(s.gamma)) {
    throw ValidationError("noise.gamma must be a finite value >= 0");
  }
  if (s.kind != ScheduleKind::Constant && (!(s.lambda > 0.0) || !std::isfinite(s.lambda))) {
    throw ValidationError("noise.lambda must be > 0 for OUN and PLN schedules");
  }
}

inline double dephasing_rate(const DephasingSchedule& s, double t) {
  switch (s.kind) {
    case ScheduleKind::Constant:
      return s.gamma;
    case ScheduleKind::OUN:
      return 0.5 * s.gamma * -std::expm1(-s.lambda * t);
    case ScheduleKind::PLN: {
      const double u = s.lambda * t + 1.0;
      return s.gamma / (2.0 * u * u * u);
    }
  }
  return 0.0;
}

/// Integral of the rate over [0, t], in closed form.
inline double cumulative_dephasing(const DephasingSchedule& s, double t) {
  switch (s.kind) {
    case ScheduleKind::Constant:
      return s.gamma * t;
    case ScheduleKind::OUN: {
      // (gamma/2) (t - (1 - e^{-lambda t}) / lambda); series below x = 1e-3
      const double x = s.lambda * t;
      const double core = x < 1e-3 ? x * x * (0.5 - x / 6.0 + x * x / 24.0) : x + std::expm1(-x);
      return 0.5 * s.gamma * core / s.lambda;
    }
    case ScheduleKind::PLN: {
      const double u = s.lambda * t + 1.0;
      return s.gamma / (4.0 * s.lambda) * (1.0 - 1.0 / (u * u));
    }
  }
  return 0.0;
}

inline std::string_view to_string(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::Constant: return "constant";
    case ScheduleKind::OUN: return "oun";
    case ScheduleKind::PLN: return "pln";
  }
  return "?";
}

inline std::string_view to_string(CorrelationMode m) {
  return m == CorrelationMode::CorrelatedAcrossSites ? "correlated" : "uncorrelated";
}

}  // namespace gft
