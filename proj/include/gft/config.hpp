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

// Run configuration: a sectioned key = value (INI) document.
//
//   [lattice]  sites, c1 (or g), alpha (or omega), mode, hopping
//   [geometry] d1, s, rows
//   [noise]    kind, gamma, lambda, correlation
//   [run]      engine, t_max (or z_max), dt, stepper, output_stride,
//              initial_site, realizations, seed, k, threads, snapshots
//   [scan]     variable, from, to, points, scale, engine
//   [output]   directory, formats
//
// Lengths and times may be written as multiples of pi: "8pi", "8*pi",
// "3*pi/2", "pi". Custom hopping matrices are given row by row with rows
// separated by ';' and entries by commas or spaces. Unknown sections or keys are errors.

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "gft/dephasing.hpp"
#include "gft/errors.hpp"
#include "gft/io.hpp"
#include "gft/lattice.hpp"
#include "gft/observables.hpp"
#include "gft/rk4.hpp"

namespace gft {

enum class NoiseKindConfig { None, White, OUN, PLN };
enum class EngineKind { Unitary, Master, Trajectories, MomentODE, Scan };

struct NoiseSection {
  NoiseKindConfig kind = NoiseKindConfig::None;
  double gamma = 0.0;
  double lambda = 1.0;
  CorrelationMode correlation = CorrelationMode::CorrelatedAcrossSites;
  friend bool operator==(const NoiseSection&, const NoiseSection&) = default;
};

struct RunSection {
  EngineKind engine = EngineKind::Unitary;
  double t_max = 0.0;  // 0 = two revivals (k-th revival time times 2)
  double dt = 0.0;     // 0 = engine default
  Stepper stepper = Stepper::Classical;
  std::size_t output_stride = 0;  // 0 = about 400 output points
  std::vector<std::size_t> initial_sites{0};
  std::size_t realizations = 200;
  std::uint64_t seed = 1;
  int k = 1;
  std::size_t threads = 1;
  bool snapshots = false;
  friend bool operator==(const RunSection&, const RunSection&) = default;
};

struct ScanSection {
  std::string variable = "gamma";
  double from = 0.01;
  double to = 100.0;
  std::size_t points = 25;
  bool log_scale = true;
  ScanEngine engine = ScanEngine::ClosedForm;
  friend bool operator==(const ScanSection&, const ScanSection&) = default;
};

struct OutputSection {
  std::string directory;  // empty = $GFT_OUTPUT_DIR or "out"
  std::set<std::string> formats{"csv"};
  friend bool operator==(const OutputSection&, const OutputSection&) = default;
};

struct GeometrySection {
  GeometrySpec spec;
  std::size_t rows = 10;
  friend bool operator==(const GeometrySection& a, const GeometrySection& b) {
    return a.spec.d1 == b.spec.d1 && a.spec.s == b.spec.s && a.rows == b.rows;
  }
};

struct RunConfig {
  LatticeSpec lattice;
  std::optional<GeometrySection> geometry;
  NoiseSection noise;
  RunSection run;
  std::optional<ScanSection> scan;
  OutputSection output;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

namespace detail {

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

/// Reads keys of one section and remembers which were consumed.
class SectionReader {
 public:
  SectionReader(const boost::property_tree::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  bool present() const { return tree_ != nullptr; }
  std::string path(const std::string& key) const { return name_ + "." + key; }

  std::optional<std::string> raw(const std::string& key) {
    used_.insert(key);
    if (!tree_) return std::nullopt;
    const auto child = tree_->get_child_optional(key);
    if (!child) return std::nullopt;
    return trim(child->data());
  }

  double number(const std::string& key, double fallback) {
    const auto v = raw(key);
    return v ? parse_number(*v, path(key)) : fallback;
  }
  std::optional<double> number(const std::string& key) {
    const auto v = raw(key);
    if (!v) return std::nullopt;
    return parse_number(*v, path(key));
  }
  std::size_t count(const std::string& key, std::size_t fallback) {
    const auto v = raw(key);
    return v ? parse_count(*v, path(key)) : fallback;
  }
  std::string word(const std::string& key, const std::string& fallback) {
    const auto v = raw(key);
    return v ? lower(*v) : fallback;
  }

  void reject_unknown() const {
    if (!tree_) return;
    for (const auto& [key, child] : *tree_) {
      if (!used_.contains(key)) throw ValidationError("unknown key " + path(key));
      if (!child.empty()) throw ValidationError(path(key) + ": nested keys are not supported");
    }
  }

  static double parse_number(const std::string& text, const std::string& where) {
    static const std::regex pi_form(R"(^\s*([-+]?[0-9]*\.?[0-9]*(?:[eE][-+]?[0-9]+)?)\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)");
    std::smatch m;
    const std::string t = lower(text);
    if (std::regex_match(t, m, pi_form)) {
      double factor = 1.0;
      if (m[1].length() > 0 && m[1].str() != "+" && m[1].str() != "-") {
        factor = parse_plain(m[1].str(), where);
      } else if (m[1].str() == "-") {
        factor = -1.0;
      }
      double v = factor * std::numbers::pi;
      if (m[2].matched) v /= parse_plain(m[2].str(), where);
      return v;
    }
    return parse_plain(t, where);
  }

  static double parse_plain(const std::string& text, const std::string& where) {
    double v = 0.0;
    if (!parse_double(trim(text), v) || !std::isfinite(v)) {
      throw ValidationError(where + ": expected a number, got '" + text + "'");
    }
    return v;
  }

  static std::size_t parse_count(const std::string& text, const std::string& where) {
    const std::string t = trim(text);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
      throw ValidationError(where + ": expected a non-negative integer, got '" + text + "'");
    }
    try {
      return static_cast<std::size_t>(std::stoull(t));
    } catch (const std::exception&) {
      throw ValidationError(where + ": integer out of range");
    }
  }

 private:
  const boost::property_tree::ptree* tree_;
  std::string name_;
  std::set<std::string> used_;
};

template <class Enum>
Enum parse_choice(const std::string& value, const std::map<std::string, Enum>& choices, const std::string& where) {
  const auto it = choices.find(value);
  if (it != choices.end()) return it->second;
  std::string known;
  for (const auto& [name, _] : choices) known += (known.empty() ? "" : ", ") + name;
  throw ValidationError(where + ": unknown value '" + value + "' (expected one of: " + known + ")");
}

template <class Enum>
std::string choice_name(Enum value, const std::map<std::string, Enum>& choices) {
  for (const auto& [name, v] : choices) {
    if (v == value) return name;
  }
  return "?";
}

inline const std::map<std::string, LatticeMode>& lattice_modes() {
  static const std::map<std::string, LatticeMode> m{{"glauber-fock", LatticeMode::GlauberFock},
                                                    {"custom", LatticeMode::CustomHopping}};
  return m;
}
inline const std::map<std::string, NoiseKindConfig>& noise_kinds() {
  static const std::map<std::string, NoiseKindConfig> m{{"none", NoiseKindConfig::None},
                                                        {"white", NoiseKindConfig::White},
                                                        {"oun", NoiseKindConfig::OUN},
                                                        {"pln", NoiseKindConfig::PLN}};
  return m;
}
inline const std::map<std::string, CorrelationMode>& correlation_modes() {
  static const std::map<std::string, CorrelationMode> m{{"correlated", CorrelationMode::CorrelatedAcrossSites},
                                                        {"uncorrelated", CorrelationMode::UncorrelatedAcrossSites}};
  return m;
}
inline const std::map<std::string, EngineKind>& engine_kinds() {
  static const std::map<std::string, EngineKind> m{{"unitary", EngineKind::Unitary},
                                                   {"master", EngineKind::Master},
                                                   {"trajectories", EngineKind::Trajectories},
                                                   {"moment-ode", EngineKind::MomentODE},
                                                   {"scan", EngineKind::Scan}};
  return m;
}
inline const std::map<std::string, ScanEngine>& scan_engines() {
  static const std::map<std::string, ScanEngine> m{{"closed-form", ScanEngine::ClosedForm},
                                                   {"master", ScanEngine::MasterEq},
                                                   {"moment-ode", ScanEngine::MomentODE},
                                                   {"trajectories", ScanEngine::Trajectories}};
  return m;
}
inline const std::map<std::string, Stepper>& steppers() {
  static const std::map<std::string, Stepper> m{{"rk4", Stepper::Classical},
                                                {"interaction", Stepper::InteractionPicture}};
  return m;
}
inline const std::map<std::string, bool>& booleans() {
  static const std::map<std::string, bool> m{{"true", true}, {"false", false}, {"yes", true},
                                             {"no", false},  {"1", true},      {"0", false}};
  return m;
}

inline std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline RealMatrix parse_hopping(const std::string& text, const std::string& where) {
  const auto rows = split_list(text, ';');
  std::vector<std::vector<double>> values;
  for (const auto& row : rows) {
    std::vector<double> r;
    std::string cells = row;
    std::replace(cells.begin(), cells.end(), ',', ' ');
    std::istringstream is(cells);
    std::string cell;
    while (is >> cell) r.push_back(SectionReader::parse_plain(cell, where));
    values.push_back(std::move(r));
  }
  const auto n = static_cast<Eigen::Index>(values.size());
  RealMatrix k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(values[static_cast<std::size_t>(i)].size()) != n) {
      throw ValidationError(where + ": row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    }
    for (Eigen::Index j = 0; j < n; ++j) k(i, j) = values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return k;
}

inline const char* kDefaultsNote =
    "optional keys with defaults: run.t_max (two revivals), run.dt (engine default), run.stepper = rk4, "
    "run.output_stride (about 400 points), run.initial_site = 0, run.realizations = 200, run.seed = 1, run.k = 1, "
    "run.threads = 1, noise.kind = none, noise.correlation = correlated, noise.lambda = 1, "
    "output.directory = $GFT_OUTPUT_DIR or out, output.formats = csv";

}  // namespace detail

/// Checks cross-field constraints of a parsed or hand-built config.
inline void validate(const RunConfig& cfg) {
  validate(cfg.lattice);
  const RunSection& run = cfg.run;
  for (std::size_t site : run.initial_sites) {
    if (site >= cfg.lattice.num_sites) {
      throw ValidationError("run.initial_site " + std::to_string(site) + " must be < lattice.sites = " +
                            std::to_string(cfg.lattice.num_sites));
    }
  }
  if (run.initial_sites.empty()) throw ValidationError("run.initial_site must name at least one site");
  if (run.dt < 0.0 || !std::isfinite(run.dt)) throw ValidationError("run.dt must be > 0");
  if (run.t_max < 0.0 || !std::isfinite(run.t_max)) throw ValidationError("run.t_max must be > 0");
  if (run.k < 1) throw ValidationError("run.k must be >= 1");
  if (run.t_max == 0.0 && cfg.lattice.ramp_alpha == 0.0 && run.engine != EngineKind::Scan) {
    throw ValidationError("run.t_max is required when lattice.alpha = 0 (no revival time to default to)");
  }
  if (cfg.noise.gamma < 0.0) throw ValidationError("noise.gamma must be >= 0");
  if ((cfg.noise.kind == NoiseKindConfig::OUN || cfg.noise.kind == NoiseKindConfig::PLN) && !(cfg.noise.lambda > 0.0)) {
    throw ValidationError("noise.lambda must be > 0");
  }
  switch (run.engine) {
    case EngineKind::Unitary:
      if (cfg.noise.kind != NoiseKindConfig::None) {
        throw ValidationError("engine = unitary is noiseless; set noise.kind = none");
      }
      break;
    case EngineKind::Trajectories:
      if (run.realizations < 1) throw ValidationError("run.realizations must be >= 1 for engine = trajectories");
      if (cfg.noise.kind == NoiseKindConfig::PLN) {
        throw ValidationError("engine = trajectories is incompatible with noise.kind = pln (no generative process)");
      }
      break;
    case EngineKind::MomentODE:
      if (cfg.noise.correlation != CorrelationMode::CorrelatedAcrossSites && cfg.noise.kind != NoiseKindConfig::None) {
        throw ValidationError("engine = moment-ode describes site-correlated noise only (noise.correlation)");
      }
      if (cfg.lattice.mode != LatticeMode::GlauberFock) {
        throw ValidationError("engine = moment-ode needs lattice.mode = glauber-fock");
      }
      break;
    case EngineKind::Scan: {
      if (!cfg.scan) throw ValidationError("engine = scan needs a [scan] section");
      const ScanSection& s = *cfg.scan;
      if (s.variable != "gamma") throw ValidationError("scan.variable: only 'gamma' is supported");
      if (s.points < 1) throw ValidationError("scan.points must be >= 1");
      if (!(s.to > s.from) && s.points > 1) throw ValidationError("scan.to must exceed scan.from");
      if (s.log_scale && !(s.from > 0.0)) throw ValidationError("scan.from must be > 0 for scale = log");
      if (cfg.noise.kind == NoiseKindConfig::None) throw ValidationError("engine = scan needs noise.kind");
      if (s.engine == ScanEngine::ClosedForm && cfg.noise.kind != NoiseKindConfig::White) {
        throw ValidationError("scan.engine = closed-form needs noise.kind = white");
      }
      if (s.engine == ScanEngine::Trajectories && cfg.noise.kind != NoiseKindConfig::OUN) {
        throw ValidationError("scan.engine = trajectories needs noise.kind = oun");
      }
      if (cfg.lattice.ramp_alpha == 0.0) throw ValidationError("engine = scan needs lattice.alpha > 0");
      break;
    }
    default:
      break;
  }
  if (cfg.output.formats.empty()) throw ValidationError("output.formats must name at least one format");
  for (const auto& f : cfg.output.formats) {
    if (f != "csv" && f != "pgm" && f != "svg") throw ValidationError("output.formats: unknown format '" + f + "'");
  }
}

inline RunConfig parse_config(const std::string& text) {
  boost::property_tree::ptree tree;
  try {
    std::istringstream is(text);
    boost::property_tree::ini_parser::read_ini(is, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ValidationError("config syntax error at line " + std::to_string(e.line()) + ": " + e.message());
  }
  static const std::set<std::string> sections{"lattice", "geometry", "noise", "run", "scan", "output"};
  for (const auto& [name, child] : tree) {
    if (!sections.contains(name)) throw ValidationError("unknown section [" + name + "]");
    if (!child.data().empty()) throw ValidationError("key '" + name + "' outside of a section");
  }
  const auto section = [&](const char* name) {
    const auto child = tree.get_child_optional(name);
    return detail::SectionReader(child ? &*child : nullptr, name);
  };

  RunConfig cfg;
  using detail::parse_choice;

  auto lat = section("lattice");
  if (!lat.present()) throw ValidationError(std::string("missing section [lattice]; ") + detail::kDefaultsNote);
  const auto sites = lat.raw("sites");
  if (!sites) throw ValidationError(std::string("missing required key lattice.sites; ") + detail::kDefaultsNote);
  cfg.lattice.num_sites = detail::SectionReader::parse_count(*sites, "lattice.sites");
  const auto c1 = lat.number("c1");
  const auto g = lat.number("g");
  if (c1 && g) throw ValidationError("lattice.c1 and lattice.g name the same parameter; give only one");
  if (!c1 && !g) throw ValidationError(std::string("missing required key lattice.c1; ") + detail::kDefaultsNote);
  cfg.lattice.coupling_c1 = c1 ? *c1 : *g;
  const auto alpha = lat.number("alpha");
  const auto omega = lat.number("omega");
  if (alpha && omega) throw ValidationError("lattice.alpha and lattice.omega name the same parameter; give only one");
  if (!alpha && !omega) throw ValidationError(std::string("missing required key lattice.alpha; ") + detail::kDefaultsNote);
  cfg.lattice.ramp_alpha = alpha ? *alpha : *omega;
  cfg.lattice.mode = parse_choice(lat.word("mode", "glauber-fock"), detail::lattice_modes(), "lattice.mode");
  if (const auto hop = lat.raw("hopping")) {
    if (cfg.lattice.mode != LatticeMode::CustomHopping) {
      throw ValidationError("lattice.hopping is only allowed with lattice.mode = custom");
    }
    cfg.lattice.custom_hopping = detail::parse_hopping(*hop, "lattice.hopping");
  }
  lat.reject_unknown();

  if (auto geo = section("geometry"); geo.present()) {
    GeometrySection gs;
    gs.spec.d1 = geo.number("d1", 0.0);
    gs.spec.s = geo.number("s", 0.0);
    gs.rows = geo.count("rows", 10);
    if (!(gs.spec.d1 > 0.0)) throw ValidationError("geometry.d1 must be > 0");
    if (!(gs.spec.s > 0.0)) throw ValidationError("geometry.s must be > 0");
    geo.reject_unknown();
    cfg.geometry = gs;
  }

  auto noise = section("noise");
  cfg.noise.kind = parse_choice(noise.word("kind", "none"), detail::noise_kinds(), "noise.kind");
  cfg.noise.gamma = noise.number("gamma", 0.0);
  cfg.noise.lambda = noise.number("lambda", 1.0);
  cfg.noise.correlation =
      parse_choice(noise.word("correlation", "correlated"), detail::correlation_modes(), "noise.correlation");
  noise.reject_unknown();

  auto run = section("run");
  const auto engine = run.raw("engine");
  if (!engine) throw ValidationError(std::string("missing required key run.engine; ") + detail::kDefaultsNote);
  cfg.run.engine = parse_choice(detail::lower(*engine), detail::engine_kinds(), "run.engine");
  const auto t_max = run.number("t_max");
  const auto z_max = run.number("z_max");
  if (t_max && z_max) throw ValidationError("run.t_max and run.z_max name the same parameter; give only one");
  cfg.run.t_max = t_max ? *t_max : z_max.value_or(0.0);
  if (t_max || z_max) {
    if (!(cfg.run.t_max > 0.0)) throw ValidationError(std::string(t_max ? "run.t_max" : "run.z_max") + " must be > 0");
  }
  if (const auto dt = run.number("dt")) {
    if (!(*dt > 0.0)) throw ValidationError("run.dt must be > 0");
    cfg.run.dt = *dt;
  }
  cfg.run.stepper = parse_choice(run.word("stepper", "rk4"), detail::steppers(), "run.stepper");
  cfg.run.output_stride = run.count("output_stride", 0);
  if (const auto sites_text = run.raw("initial_site")) {
    cfg.run.initial_sites.clear();
    for (const auto& item : detail::split_list(*sites_text, ',')) {
      cfg.run.initial_sites.push_back(detail::SectionReader::parse_count(item, "run.initial_site"));
    }
  }
  cfg.run.realizations = run.count("realizations", 200);
  if (const auto seed = run.raw("seed")) cfg.run.seed = detail::SectionReader::parse_count(*seed, "run.seed");
  cfg.run.k = static_cast<int>(run.count("k", 1));
  cfg.run.threads = run.count("threads", 1);
  cfg.run.snapshots = parse_choice(run.word("snapshots", "false"), detail::booleans(), "run.snapshots");
  run.reject_unknown();

  if (auto scan = section("scan"); scan.present()) {
    ScanSection s;
    s.variable = scan.word("variable", "gamma");
    s.from = scan.number("from", s.from);
    s.to = scan.number("to", s.to);
    s.points = scan.count("points", s.points);
    const std::string scale = scan.word("scale", "log");
    if (scale != "log" && scale != "linear") throw ValidationError("scan.scale must be log or linear");
    s.log_scale = scale == "log";
    s.engine = parse_choice(scan.word("engine", "closed-form"), detail::scan_engines(), "scan.engine");
    scan.reject_unknown();
    cfg.scan = s;
  }

  auto out = section("output");
  if (const auto dir = out.raw("directory")) cfg.output.directory = *dir;
  if (const auto formats = out.raw("formats")) {
    cfg.output.formats.clear();
    for (const auto& f : detail::split_list(detail::lower(*formats), ',')) cfg.output.formats.insert(f);
  }
  out.reject_unknown();

  validate(cfg);
  return cfg;
}

/// Canonical text form; parse_config(serialize_config(c)) == c.
inline std::string serialize_config(const RunConfig& cfg) {
  using detail::choice_name;
  std::ostringstream os;
  os << "[lattice]\n"
     << "sites = " << cfg.lattice.num_sites << '\n'
     << "c1 = " << format_number(cfg.lattice.coupling_c1) << '\n'
     << "alpha = " << format_number(cfg.lattice.ramp_alpha) << '\n'
     << "mode = " << choice_name(cfg.lattice.mode, detail::lattice_modes()) << '\n';
  if (cfg.lattice.custom_hopping) {
    const RealMatrix& k = *cfg.lattice.custom_hopping;
    os << "hopping = ";
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
      if (i > 0) os << "; ";
      for (Eigen::Index j = 0; j < k.cols(); ++j) os << (j > 0 ? " " : "") << format_number(k(i, j));
    }
    os << '\n';
  }
  if (cfg.geometry) {
    os << "\n[geometry]\n"
       << "d1 = " << format_number(cfg.geometry->spec.d1) << '\n'
       << "s = " << format_number(cfg.geometry->spec.s) << '\n'
       << "rows = " << cfg.geometry->rows << '\n';
  }
  os << "\n[noise]\n"
     << "kind = " << choice_name(cfg.noise.kind, detail::noise_kinds()) << '\n'
     << "gamma = " << format_number(cfg.noise.gamma) << '\n'
     << "lambda = " << format_number(cfg.noise.lambda) << '\n'
     << "correlation = " << choice_name(cfg.noise.correlation, detail::correlation_modes()) << '\n';
  os << "\n[run]\n"
     << "engine = " << choice_name(cfg.run.engine, detail::engine_kinds()) << '\n';
  if (cfg.run.t_max > 0.0) os << "t_max = " << format_number(cfg.run.t_max) << '\n';
  if (cfg.run.dt > 0.0) os << "dt = " << format_number(cfg.run.dt) << '\n';
  os << "stepper = " << choice_name(cfg.run.stepper, detail::steppers()) << '\n'
     << "output_stride = " << cfg.run.output_stride << '\n'
     << "initial_site = ";
  for (std::size_t i = 0; i < cfg.run.initial_sites.size(); ++i) {
    os << (i > 0 ? ", " : "") << cfg.run.initial_sites[i];
  }
  os << '\n'
     << "realizations = " << cfg.run.realizations << '\n'
     << "seed = " << cfg.run.seed << '\n'
     << "k = " << cfg.run.k << '\n'
     << "threads = " << cfg.run.threads << '\n'
     << "snapshots = " << (cfg.run.snapshots ? "true" : "false") << '\n';
  if (cfg.scan) {
    os << "\n[scan]\n"
       << "variable = " << cfg.scan->variable << '\n'
       << "from = " << format_number(cfg.scan->from) << '\n'
       << "to = " << format_number(cfg.scan->to) << '\n'
       << "points = " << cfg.scan->points << '\n'
       << "scale = " << (cfg.scan->log_scale ? "log" : "linear") << '\n'
       << "engine = " << choice_name(cfg.scan->engine, detail::scan_engines()) << '\n';
  }
  os << "\n[output]\n";
  if (!cfg.output.directory.empty()) os << "directory = " << cfg.output.directory << '\n';
  os << "formats = ";
  bool first = true;
  for (const auto& f : cfg.output.formats) {
    os << (first ? "" : ", ") << f;
    first = false;
  }
  os << '\n';
  return os.str();
}

}  // namespace gft
