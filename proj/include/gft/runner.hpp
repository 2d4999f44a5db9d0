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

// Orchestration of one configured run: engine dispatch, then a single
// serialized pass that writes every artifact and the run manifest.

#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gft/config.hpp"
#include "gft/io.hpp"
#include "gft/master.hpp"
#include "gft/observables.hpp"
#include "gft/stochastic.hpp"
#include "gft/unitary.hpp"

namespace gft {

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::optional<std::string> output_directory;
};

struct RunOutcome {
  std::filesystem::path directory;
  std::vector<std::string> files;  // relative to `directory`, in write order
  std::vector<std::string> warnings;
};

inline constexpr const char* kOutputDirEnv = "GFT_OUTPUT_DIR";

/// Applies command-line overrides and resolves defaults that depend on other fields.
inline RunConfig resolve_config(RunConfig cfg, const RunOverrides& overrides = {}) {
  if (overrides.seed) cfg.run.seed = *overrides.seed;
  if (overrides.threads) cfg.run.threads = *overrides.threads;
  if (overrides.output_directory) {
    cfg.output.directory = *overrides.output_directory;
  } else if (cfg.output.directory.empty()) {
    const char* env = std::getenv(kOutputDirEnv);
    cfg.output.directory = (env && *env) ? env : "out";
  }
  if (cfg.run.t_max == 0.0 && cfg.lattice.ramp_alpha > 0.0) {
    cfg.run.t_max = 2.0 * revival_time(cfg.lattice.ramp_alpha, cfg.run.k);
  }
  if (cfg.run.engine == EngineKind::Trajectories) cfg.run.stepper = Stepper::InteractionPicture;
  validate(cfg);
  return cfg;
}

/// Master-equation rate schedule named by the noise section (rates verbatim).
inline DephasingSchedule schedule_from(const NoiseSection& noise) {
  switch (noise.kind) {
    case NoiseKindConfig::None: return {ScheduleKind::Constant, 0.0, 1.0};
    case NoiseKindConfig::White: return {ScheduleKind::Constant, noise.gamma, 1.0};
    case NoiseKindConfig::OUN: return {ScheduleKind::OUN, noise.gamma, noise.lambda};
    case NoiseKindConfig::PLN: return {ScheduleKind::PLN, noise.gamma, noise.lambda};
  }
  return {};
}

inline NoiseModel noise_model_from(const NoiseSection& noise) {
  switch (noise.kind) {
    case NoiseKindConfig::None: return {NoiseKind::White, 0.0, 1.0, noise.correlation};
    case NoiseKindConfig::White: return {NoiseKind::White, noise.gamma, 1.0, noise.correlation};
    case NoiseKindConfig::OUN: return {NoiseKind::OrnsteinUhlenbeck, noise.gamma, noise.lambda, noise.correlation};
    case NoiseKindConfig::PLN: break;
  }
  throw ValidationError("power-law noise has no trajectory model");
}

namespace detail {

struct Artifact {
  std::string name;
  std::string content;
};

inline std::size_t stride_for(std::size_t steps, std::size_t requested) {
  if (requested > 0) return requested;
  return std::max<std::size_t>(1, steps / 400);
}

inline std::vector<double> positions(const std::vector<PureState>& s) {
  std::vector<double> out;
  for (const auto& x : s) out.push_back(x.z);
  return out;
}
inline std::vector<double> positions(const std::vector<DensityMatrix>& s) {
  std::vector<double> out;
  for (const auto& x : s) out.push_back(x.t);
  return out;
}

inline void add_map(std::vector<Artifact>& out, const OutputSection& o, const std::string& stem, std::string_view axis,
                    const std::vector<double>& pos, const RealMatrix& values) {
  if (o.formats.contains("csv")) out.push_back({stem + ".csv", matrix_csv(axis, pos, values)});
  if (o.formats.contains("pgm")) out.push_back({stem + ".pgm", heatmap_pgm(values)});
  if (o.formats.contains("svg")) out.push_back({stem + ".svg", heatmap_svg(values)});
}

inline void note_leakage(std::vector<std::string>& warnings, const std::string& what, double leakage,
                         std::size_t sites) {
  if (leakage > kLeakageWarning) {
    warnings.push_back(what + ": boundary population " + format_number(leakage) +
                       " exceeds 1e-6; consider lattice.sites = " + std::to_string(2 * sites));
  }
}

}  // namespace detail

/// Runs the configured engine for every initial site and writes the outputs.
/// On failure nothing is left behind from this run.
inline RunOutcome run(const RunConfig& input, const RunOverrides& overrides = {}) {
  const auto started = std::chrono::steady_clock::now();
  const RunConfig cfg = resolve_config(input, overrides);
  const RunSection& rs = cfg.run;
  RunOutcome outcome;
  outcome.directory = cfg.output.directory;
  std::vector<detail::Artifact> artifacts;

  const ComplexMatrix h = build_hamiltonian(cfg.lattice);
  for (std::size_t m : rs.initial_sites) {
    const std::string tag = "_m" + std::to_string(m);
    const PureState psi0 = site_state(cfg.lattice.num_sites, m);
    switch (rs.engine) {
      case EngineKind::Unitary: {
        const double dz = rs.dt > 0.0 ? rs.dt : default_unitary_step(h);
        const PropagationGrid grid{rs.t_max, std::min(dz, rs.t_max), detail::stride_for(step_count(rs.t_max, dz), rs.output_stride)};
        const UnitaryResult r = propagate_unitary(h, psi0, grid, {rs.stepper});
        detail::add_map(artifacts, cfg.output, "intensity" + tag, "z", detail::positions(r.states), intensity(r.states));
        detail::note_leakage(outcome.warnings, "intensity" + tag, r.max_leakage, cfg.lattice.num_sites);
        break;
      }
      case EngineKind::Master: {
        const DephasingSchedule schedule = schedule_from(cfg.noise);
        const double dt = rs.dt > 0.0 ? rs.dt : default_master_step(MasterOperator(h, cfg.noise.correlation), schedule, rs.stepper);
        const PropagationGrid grid{rs.t_max, std::min(dt, rs.t_max), detail::stride_for(step_count(rs.t_max, dt), rs.output_stride)};
        const MasterResult r = integrate_master(h, pure_density(psi0), schedule, cfg.noise.correlation, grid, {rs.stepper});
        detail::add_map(artifacts, cfg.output, "populations" + tag, "t", detail::positions(r.states), r.populations());
        if (rs.snapshots) artifacts.push_back({"snapshot" + tag + ".txt", snapshot_text(r.states.back().elements)});
        detail::note_leakage(outcome.warnings, "populations" + tag, r.max_leakage, cfg.lattice.num_sites);
        break;
      }
      case EngineKind::Trajectories: {
        const NoiseModel model = noise_model_from(cfg.noise);
        const double hop = hopping_row_sum(split_hamiltonian(h));
        const double dt = rs.dt > 0.0 ? rs.dt : std::min(0.01, hop > 0.0 ? 0.05 / hop : 0.01);
        const PropagationGrid grid{rs.t_max, std::min(dt, rs.t_max), detail::stride_for(step_count(rs.t_max, dt), rs.output_stride)};
        const TrajectoryEnsemble e = run_ensemble(h, psi0, model, grid, rs.realizations, rs.seed, rs.threads);
        const auto pos = detail::positions(e.mean_sigma);
        detail::add_map(artifacts, cfg.output, "populations" + tag, "t", pos, e.populations());
        if (cfg.output.formats.contains("csv")) {
          artifacts.push_back({"stderr" + tag + ".csv", matrix_csv("t", pos, e.population_errors())});
        }
        if (rs.snapshots) artifacts.push_back({"snapshot" + tag + ".txt", snapshot_text(e.mean_sigma.back().elements)});
        detail::note_leakage(outcome.warnings, "populations" + tag, e.max_leakage, cfg.lattice.num_sites);
        break;
      }
      case EngineKind::MomentODE: {
        // <a> decays at half the master rate
        const DephasingSchedule schedule = schedule_from(cfg.noise).scaled(0.5);
        const double g = cfg.lattice.drive_g();
        const double omega = cfg.lattice.base_frequency();
        const double dt = rs.dt > 0.0 ? rs.dt : 1e-3 / std::max({1.0, omega, g, schedule.gamma});
        const PropagationGrid grid{rs.t_max, std::min(dt, rs.t_max), detail::stride_for(step_count(rs.t_max, dt), rs.output_stride)};
        const auto states = moment_ode_mean_n(static_cast<double>(m), g, omega, schedule, grid);
        std::string csv = "t,mean_n,re_a,im_a\n";
        for (const auto& s : states) {
          csv += format_number(s.t) + ',' + format_number(s.mean_n) + ',' + format_number(s.mean_a.real()) + ',' +
                 format_number(s.mean_a.imag()) + '\n';
        }
        artifacts.push_back({"moments" + tag + ".csv", std::move(csv)});
        break;
      }
      case EngineKind::Scan: {
        const ScanSection& sc = *cfg.scan;
        ScanRequest req;
        req.lattice = cfg.lattice;
        req.family = schedule_from(cfg.noise).kind;
        req.lambda = cfg.noise.lambda;
        req.mode = cfg.noise.correlation;
        req.gammas = make_grid(sc.from, sc.to, sc.points, sc.log_scale);
        req.k = rs.k;
        req.m = m;
        req.engine = sc.engine;
        req.dt = rs.dt;
        req.realizations = rs.realizations;
        req.master_seed = rs.seed;
        req.threads = rs.threads;
        const TransportCurve curve = scan_dephasing(req);
        artifacts.push_back({"curve" + tag + ".csv", curve_csv(curve)});
        break;
      }
    }
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::string manifest = "# gftransport run manifest\nversion = " GFT_VERSION "\nseed = " + std::to_string(rs.seed) +
                         "\nthreads = " + std::to_string(rs.threads) + "\nwall_time_s = " + format_number(wall) +
                         "\nfiles =";
  for (const auto& a : artifacts) manifest += ' ' + a.name;
  manifest += "\n\n# resolved config\n" + serialize_config(cfg);
  for (const auto& w : outcome.warnings) manifest += "# warning: " + w + '\n';
  artifacts.push_back({"manifest.txt", std::move(manifest)});

  std::filesystem::create_directories(outcome.directory);
  try {
    for (const auto& a : artifacts) {
      const auto path = outcome.directory / a.name;
      outcome.files.push_back(a.name);
      std::ofstream f(path, std::ios::binary | std::ios::trunc);
      f << a.content;
      if (!f.flush()) throw std::runtime_error("failed to write " + path.string());
    }
  } catch (...) {
    for (const auto& name : outcome.files) {
      std::error_code ec;
      std::filesystem::remove(outcome.directory / name, ec);
    }
    throw;
  }
  return outcome;
}

}  // namespace gft
