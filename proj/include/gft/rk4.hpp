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

// Fixed-step fourth-order Runge-Kutta steppers shared by the engines.
//
// `State` is any Eigen dense type (vector for pure states, matrix for density
// matrices). Right-hand sides are callables `State f(const State&, double t)`.

#pragma once

#include <cmath>
#include <cstddef>
#include <string_view>

#include "gft/errors.hpp"

namespace gft {

/// Classical RK4 integrates the full right-hand side. InteractionPicture is
/// the Lawson integrating-factor RK4: the elementwise-diagonal linear part
/// (site energies and dephasing) is propagated exactly and RK4 is applied to
/// the hopping term only, which removes the stiffness of large rates.
enum class Stepper { Classical, InteractionPicture };

inline std::string_view to_string(Stepper s) {
  return s == Stepper::Classical ? "rk4" : "interaction";
}

template <class State, class Rhs>
void rk4_step(State& y, double t, double h, Rhs&& f) {
  const State k1 = f(y, t);
  const State k2 = f(State(y + (0.5 * h) * k1), t + 0.5 * h);
  const State k3 = f(State(y + (0.5 * h) * k2), t + 0.5 * h);
  const State k4 = f(State(y + h * k3), t + h);
  y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// One Lawson RK4 step of y' = L(t) o y + f(y, t), where `o` is the
/// elementwise product. `first` is the elementwise propagator of the linear
/// part from t to t+h/2 and `second` from t+h/2 to t+h.
template <class State, class Factor, class Rhs>
void lawson_rk4_step(State& y, double t, double h, const Factor& first, const Factor& second, Rhs&& f) {
  const double half = 0.5 * h;
  const State k1 = f(y, t);
  const State yh = first.cwiseProduct(y);
  const State k2 = f(State(first.cwiseProduct(State(y + half * k1))), t + half);
  const State k3 = f(State(yh + half * k2), t + half);
  const State k4 = f(State(second.cwiseProduct(State(yh + h * k3))), t + h);
  State acc = first.cwiseProduct(State(y + (h / 6.0) * k1));
  acc += (h / 3.0) * (k2 + k3);
  y = second.cwiseProduct(acc);
  y += (h / 6.0) * k4;
}

/// Number of steps of size <= `dz` covering [0, z_max]; the step is shrunk
/// so that z_max is hit exactly.
inline std::size_t step_count(double z_max, double dz) {
  if (!(dz > 0.0)) throw ValidationError("step must be > 0");
  if (!(z_max > 0.0)) throw ValidationError("integration span must be > 0");
  if (dz > z_max) throw ValidationError("step must not exceed the integration span");
  return static_cast<std::size_t>(std::ceil(z_max / dz - 1e-9));
}

}  // namespace gft
