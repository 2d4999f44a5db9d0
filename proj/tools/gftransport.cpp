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
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gft/config.hpp"
#include "gft/io.hpp"
#include "gft/runner.hpp"

namespace {

gft::RunConfig load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gft::ValidationError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return gft::parse_config(buf.str());
}

int report(const gft::RunOutcome& r) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& f : r.files) std::cout << (r.directory / f).string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Glauber-Fock lattice transport under dephasing"};
  app.set_version_flag("--version", GFT_VERSION);
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string out_dir;
  const auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "INI configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "master seed (overrides run.seed)");
    sub->add_option("--threads", threads, "worker threads, 0 = hardware concurrency");
    sub->add_option("--out", out_dir, std::string("output directory (default $") + gft::kOutputDirEnv + " or ./out)");
  };

  auto* run = app.add_subcommand("run", "run the engine named in the config");
  add_run_flags(run);
  auto* scan = app.add_subcommand("scan", "run a dephasing scan (run with engine = scan)");
  add_run_flags(scan);

  auto* cmp = app.add_subcommand("compare", "compare two CSV outputs column by column");
  std::string file_a, file_b, error_file;
  double tolerance = 1e-9;
  double sigmas = 3.0;
  cmp->add_option("file_a", file_a)->required()->check(CLI::ExistingFile);
  cmp->add_option("file_b", file_b)->required()->check(CLI::ExistingFile);
  cmp->add_option("--tolerance", tolerance, "absolute tolerance")->check(CLI::NonNegativeNumber);
  cmp->add_option("--error-file", error_file, "standard-error CSV widening the tolerance to sigmas * error");
  cmp->add_option("--sigmas", sigmas, "multiplier for --error-file")->check(CLI::NonNegativeNumber);

  auto* geo = app.add_subcommand("geometry", "print waveguide spacings d_m and couplings C_m");
  std::string geo_config;
  double d1 = 10.0, s = 2.0, c1 = 1.0;
  std::size_t rows = 10;
  geo->add_option("--config", geo_config, "take d1, s, rows and C1 from a config file")->check(CLI::ExistingFile);
  geo->add_option("--d1", d1, "first spacing");
  geo->add_option("--s", s, "decay length of the evanescent coupling");
  geo->add_option("--c1", c1, "first coupling");
  geo->add_option("--rows", rows, "number of waveguide pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (run->parsed() || scan->parsed()) {
      auto* sub = run->parsed() ? run : scan;
      gft::RunConfig cfg = load(config_path);
      if (scan->parsed()) {
        cfg.run.engine = gft::EngineKind::Scan;
        if (!cfg.scan) cfg.scan = gft::ScanSection{};
      }
      gft::RunOverrides o;
      if (sub->count("--seed")) o.seed = seed;
      if (sub->count("--threads")) o.threads = threads;
      if (sub->count("--out")) o.output_directory = out_dir;
      return report(gft::run(cfg, o));
    }
    if (cmp->parsed()) {
      const auto r = gft::compare(file_a, file_b, tolerance, error_file, sigmas);
      std::printf("%-16s %-24s %-24s %s\n", "column", "max_abs", "rms", "status");
      for (const auto& c : r.columns) {
        std::printf("%-16s %-24s %-24s %s\n", c.name.c_str(), gft::format_number(c.max_abs).c_str(),
                    gft::format_number(c.rms).c_str(), c.max_excess > 0.0 ? "FAIL" : "ok");
      }
      std::printf("%s\n", r.pass ? "PASS" : "FAIL");
      return r.pass ? 0 : 1;
    }
    if (geo->parsed()) {
      gft::GeometrySpec g{d1, s};
      if (!geo_config.empty()) {
        const auto cfg = load(geo_config);
        if (!cfg.geometry) throw gft::ValidationError("config has no [geometry] section");
        g = cfg.geometry->spec;
        rows = cfg.geometry->rows;
        c1 = cfg.lattice.coupling_c1;
      }
      std::printf("m,d_m,C_m\n");
      for (std::size_t m = 1; m <= rows; ++m) {
        const double d = gft::spacing_profile(g, m);
        std::printf("%zu,%s,%s\n", m, gft::format_number(d).c_str(),
                    gft::format_number(gft::coupling_from_spacing(g, c1, d)).c_str());
      }
      return 0;
    }
  } catch (const gft::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
