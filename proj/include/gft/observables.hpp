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

// Transport observables, closed-form excitation numbers, the two-moment ODE
// and dephasing-rate scans.
//
// Rate conventions. The closed forms and the moment ODE use the rate gamma(t)
// at which the mean field <a> decays:
//
//   d<a>/dt = (-i omega - gamma(t)) <a> - i g,     d<n>/dt = -2 g Im<a>.
//
// A Lindblad (or network master) equation with rate G(t) damps the first
// off-diagonal coherences, and hence <a>, at G(t)/2. Scans therefore drive
// the master engine with twice the field-decay schedule; an OU trajectory
// ensemble of strength Gamma corresponds to that doubled OUN schedule.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "gft/dephasing.hpp"
#include "gft/errors.hpp"
#include "gft/lattice.hpp"
#include "gft/master.hpp"
#include "gft/noise.hpp"
#include "gft/parallel.hpp"
#include "gft/rk4.hpp"
#include "gft/stochastic.hpp"
#include "gft/unitary.hpp"

namespace gft {

/// <n> = sum_n n P_n for a population (or intensity) row.
template <class Populations>
double mean_site_index(const Populations& p) {
  double sum = 0.0;
  for (Eigen::Index n = 0; n < p.size(); ++n) sum += static_cast<double>(n) * p[n];
  return sum;
}

inline double mean_site_index(const DensityMatrix& rho) { return mean_site_index(rho.populations()); }

/// m + (2g/omega)^2 sin^2(omega t / 2); the omega = 0 limit is m + (g t)^2.
inline double closed_form_unitary(double m, double g, double omega, double t) {
  if (omega == 0.0) return m + (g * t) * (g * t);
  const double s = std::sin(0.5 * omega * t);
  return m + 4.0 * g * g / (omega * omega) * s * s;
}

/// Constant-rate solution m + 2g^2/(omega^2+gamma^2)^2 (f(t) + e^{-gamma t} h(t)).
inline double closed_form_markovian(double m, double g, double omega, double gamma, double t) {
  if (omega == 0.0 && gamma == 0.0) {
    throw ValidationError("closed_form_markovian needs (omega, gamma) != (0, 0)");
  }
  const double w2 = omega * omega;
  const double y2 = gamma * gamma;
  const double f = y2 * (gamma * t - 1.0) + w2 * (gamma * t + 1.0);
  const double h = (y2 - w2) * std::cos(omega * t) - 2.0 * gamma * omega * std::sin(omega * t);
  const double denom = (w2 + y2) * (w2 + y2);
  return m + 2.0 * g * g / denom * (f + std::exp(-gamma * t) * h);
}

/// <n> at t_rev = 2 pi k / omega as a function of the scaled rate gamma/omega.
inline double mean_n_at_revival(double m, double g, double omega, double gamma_tilde, int k) {
  if (gamma_tilde < 0.0) throw ValidationError("scaled dephasing rate must be >= 0");
  if (k < 1) throw ValidationError("revival index k must be >= 1");
  if (omega == 0.0) throw ValidationError("revival needs omega != 0");
  const double x = 2.0 * std::numbers::pi * k * gamma_tilde;
  const double y2 = gamma_tilde * gamma_tilde;
  const double bracket = x / (1.0 + y2) + (1.0 - y2) / ((1.0 + y2) * (1.0 + y2)) * -std::expm1(-x);
  return m + 2.0 * g * g / (omega * omega) * bracket;
}

struct MomentState {
  std::complex<double> mean_a;
  double mean_n = 0.0;
  double t = 0.0;
};

/// Integrates the two-moment ODE from |m> (<a> = 0, <n> = m) with RK4.
inline std::vector<MomentState> moment_ode_mean_n(double m, double g, double omega, const DephasingSchedule& schedule,
                                                  const PropagationGrid& grid) {
  validate(grid);
  validate(schedule);
  const std::size_t steps = step_count(grid.z_max, grid.dz);
  const double dt = grid.z_max / static_cast<double>(steps);
  using Vec2 = Eigen::Vector2cd;  // (<a>, <n>)
  const auto rhs = [&](const Vec2& y, double t) -> Vec2 {
    const std::complex<double> i(0.0, 1.0);
    Vec2 d;
    d[0] = (-i * omega - dephasing_rate(schedule, t)) * y[0] - i * g;
    d[1] = -2.0 * g * y[0].imag();
    return d;
  };
  Vec2 y(0.0, m);
  std::vector<MomentState> out{{y[0], m, 0.0}};
  for (std::size_t step = 1; step <= steps; ++step) {
    rk4_step(y, static_cast<double>(step - 1) * dt, dt, rhs);
    if (step % grid.output_stride == 0 || step == steps) {
      out.push_back({y[0], y[1].real(), static_cast<double>(step) * dt});
    }
  }
  return out;
}

/// Field-decay-rate schedule -> rate of the equivalent master equation.
inline DephasingSchedule master_schedule_for(const DephasingSchedule& field_decay) { return field_decay.scaled(2.0); }

enum class ScanEngine { ClosedForm, MasterEq, MomentODE, Trajectories };

inline std::string_view to_string(ScanEngine e) {
  switch (e) {
    case ScanEngine::ClosedForm: return "closed-form";
    case ScanEngine::MasterEq: return "master";
    case ScanEngine::MomentODE: return "moment-ode";
    case ScanEngine::Trajectories: return "trajectories";
  }
  return "?";
}

struct TransportCurve {
  std::vector<double> parameter_grid;  // gamma values (rate, not scaled)
  std::vector<double> mean_n_values;   // <n(t_rev)>
  ScanEngine engine = ScanEngine::ClosedForm;
  int k = 1;
  std::size_t m = 0;
  std::vector<std::size_t> sites_used;  // lattice size per point (master/trajectories)
  std::vector<double> leakage;          // boundary population per point
};

struct ScanRequest {
  LatticeSpec lattice;  // g = c1, omega = alpha
  ScheduleKind family = ScheduleKind::Constant;
  double lambda = 1.0;
  CorrelationMode mode = CorrelationMode::CorrelatedAcrossSites;
  std::vector<double> gammas;
  int k = 1;
  std::size_t m = 0;
  ScanEngine engine = ScanEngine::ClosedForm;

  double dt = 0.0;                          // 0 = engine default
  double leakage_target = kLeakageWarning;  // master: grow the lattice until below
  std::size_t max_sites = 400;
  std::size_t realizations = 200;           // trajectories
  std::uint64_t master_seed = 1;
  std::size_t threads = 1;
};

/// Log- or linearly spaced grid including both end points.
inline std::vector<double> make_grid(double from, double to, std::size_t points, bool log_scale) {
  if (points == 0) throw ValidationError("scan.points must be >= 1");
  if (log_scale && !(from > 0.0 && to > 0.0)) throw ValidationError("log-scaled scans need positive end points");
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double u = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    out[i] = log_scale ? std::exp(std::log(from) + u * (std::log(to) - std::log(from))) : from + u * (to - from);
  }
  return out;
}

inline void validate(const ScanRequest& r) {
  validate(r.lattice);
  if (r.gammas.empty()) throw ValidationError("scan grid must not be empty");
  for (std::size_t i = 0; i < r.gammas.size(); ++i) {
    if (!(r.gammas[i] >= 0.0)) throw ValidationError("scan grid values must be >= 0");
    if (i > 0 && !(r.gammas[i] > r.gammas[i - 1])) throw ValidationError("scan grid must be strictly increasing");
  }
  if (r.k < 1) throw ValidationError("run.k must be >= 1");
  if (r.lattice.ramp_alpha <= 0.0) throw ValidationError("scans evaluate at the revival time and need alpha > 0");
  if (r.m >= r.lattice.num_sites) throw ValidationError("run.initial_site must be < lattice.sites");
  if (r.engine == ScanEngine::ClosedForm && r.family != ScheduleKind::Constant) {
    throw ValidationError("closed-form engine only covers the constant (Markovian) schedule");
  }
  if (r.engine == ScanEngine::ClosedForm && r.mode != CorrelationMode::CorrelatedAcrossSites) {
    throw ValidationError("closed-form engine describes site-correlated noise only");
  }
  if (r.engine == ScanEngine::MomentODE && r.mode != CorrelationMode::CorrelatedAcrossSites) {
    throw ValidationError("moment-ode engine describes site-correlated noise only");
  }
  if (r.engine == ScanEngine::Trajectories && r.family != ScheduleKind::OUN) {
    throw ValidationError("trajectories engine needs an OUN schedule (no generative process for the others)");
  }
  if (r.engine == ScanEngine::Trajectories && r.realizations == 0) {
    throw ValidationError("run.realizations must be >= 1");
  }
}

namespace detail {

inline constexpr std::uint64_t kScanSeedSalt = 0x5ca7;

struct ScanPoint {
  double mean_n = 0.0;
  std::size_t sites = 0;
  double leakage = 0.0;
};

// Integrates to t_rev in segments whose step follows the largest rate inside the segment;
// a decaying PLN rate then costs small steps only near t = 0.
inline MasterResult master_segments(const ComplexMatrix& h, const ScanRequest& r, const DephasingSchedule& lindblad,
                                    double t_rev, const MasterOptions& options) {
  const MasterOperator op(h, r.mode);
  const double hop = hopping_row_sum(op.hamiltonian());
  const double base = hop > 0.0 ? 0.2 / hop : 0.2;
  const double segment = r.dt > 0.0 ? t_rev : std::min(t_rev, 16.0 * base);
  DensityMatrix rho = pure_density(site_state(static_cast<std::size_t>(h.rows()), r.m));
  MasterResult out;
  double t = 0.0;
  while (t < t_rev) {
    const double end = t_rev - t < 1.5 * segment ? t_rev : t + segment;
    double dt = r.dt;
    if (dt <= 0.0) {
      const double peak = std::max(dephasing_rate(lindblad, t), dephasing_rate(lindblad, end));
      dt = peak > 0.0 ? std::min(base, 1.0 / peak) : base;
    }
    const PropagationGrid grid{end - t, std::min(dt, end - t), std::numeric_limits<std::size_t>::max()};
    rho.t = t;
    MasterResult part = integrate_master(h, rho, lindblad, r.mode, grid, options);
    out.max_leakage = std::max(out.max_leakage, part.max_leakage);
    rho = part.states.back();
    if (part.aborted) {
      out.aborted = true;
      break;
    }
    t = end;
  }
  out.states.push_back(rho);
  return out;
}

inline ScanPoint master_point(const ScanRequest& r, const DephasingSchedule& field_decay, double t_rev) {
  LatticeSpec lattice = r.lattice;
  const DephasingSchedule lindblad = master_schedule_for(field_decay);
  for (;;) {
    const ComplexMatrix h = build_hamiltonian(lattice);
    const bool can_grow = lattice.mode == LatticeMode::GlauberFock && lattice.num_sites < r.max_sites;
    MasterOptions options{Stepper::InteractionPicture};
    if (can_grow) options.leakage_abort = r.leakage_target;
    const MasterResult run = master_segments(h, r, lindblad, t_rev, options);
    const bool grow = can_grow && run.max_leakage >= r.leakage_target;
    if (!grow) return {mean_site_index(run.states.back()), lattice.num_sites, run.max_leakage};
    lattice.num_sites = std::min(r.max_sites, (lattice.num_sites * 3 + 1) / 2);
  }
}

}  // namespace detail

inline TransportCurve scan_dephasing(const ScanRequest& r) {
  validate(r);
  const double g = r.lattice.drive_g();
  const double omega = r.lattice.base_frequency();
  const double t_rev = revival_time(omega, r.k);
  const double m = static_cast<double>(r.m);

  std::vector<detail::ScanPoint> points(r.gammas.size());
  const auto evaluate = [&](std::size_t i) {
    const DephasingSchedule schedule{r.family, r.gammas[i], r.lambda};
    detail::ScanPoint& p = points[i];
    switch (r.engine) {
      case ScanEngine::ClosedForm:
        p.mean_n = mean_n_at_revival(m, g, omega, r.gammas[i] / omega, r.k);
        break;
      case ScanEngine::MomentODE: {
        const double dt = r.dt > 0.0 ? r.dt : 1e-3 / std::max({1.0, std::abs(omega), g, r.gammas[i]});
        const PropagationGrid grid{t_rev, std::min(dt, t_rev), std::numeric_limits<std::size_t>::max()};
        p.mean_n = moment_ode_mean_n(m, g, omega, schedule, grid).back().mean_n;
        break;
      }
      case ScanEngine::MasterEq:
        p = detail::master_point(r, schedule, t_rev);
        break;
      case ScanEngine::Trajectories: {
        const ComplexMatrix h = build_hamiltonian(r.lattice);
        const NoiseModel model{NoiseKind::OrnsteinUhlenbeck, r.gammas[i], r.lambda, r.mode};
        const double dt = r.dt > 0.0 ? r.dt : 0.01;
        const PropagationGrid grid{t_rev, std::min(dt, t_rev), std::numeric_limits<std::size_t>::max()};
        const TrajectoryEnsemble ens = run_ensemble(h, site_state(r.lattice.num_sites, r.m), model, grid,
                                                    r.realizations, stream_seed(r.master_seed, i, detail::kScanSeedSalt), 1);
        p = {mean_site_index(ens.mean_sigma.back()), r.lattice.num_sites, ens.max_leakage};
        break;
      }
    }
  };
  parallel_for(points.size(), r.threads, evaluate);

  TransportCurve curve;
  curve.parameter_grid = r.gammas;
  curve.engine = r.engine;
  curve.k = r.k;
  curve.m = r.m;
  for (const auto& p : points) {
    curve.mean_n_values.push_back(p.mean_n);
    curve.sites_used.push_back(p.sites);
    curve.leakage.push_back(p.leakage);
  }
  return curve;
}

}  // namespace gft
