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

#include <filesystem>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "gft/config.hpp"
#include "oracles.hpp"

namespace gft {
namespace {

const char* kFig1a = R"(
[lattice]
sites = 40
c1 = 1
alpha = 0.5

[run]
engine = unitary
initial_site = 0
z_max = 8pi
)";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

TEST(Config, BlochExampleParsesAndRoundTrips) {
  const RunConfig c = parse_config(kFig1a);
  EXPECT_EQ(c.lattice.num_sites, 40u);
  EXPECT_DOUBLE_EQ(c.lattice.coupling_c1, 1.0);
  EXPECT_DOUBLE_EQ(c.lattice.ramp_alpha, 0.5);
  EXPECT_EQ(c.run.engine, EngineKind::Unitary);
  EXPECT_EQ(c.run.initial_sites, std::vector<std::size_t>{0});
  EXPECT_NEAR(c.run.t_max, 8.0 * std::numbers::pi, 1e-14);
  EXPECT_EQ(parse_config(serialize_config(c)), c);
}

TEST(Config, PiForms) {
  for (const auto& [text, value] : std::vector<std::pair<std::string, double>>{
           {"pi", std::numbers::pi}, {"3*pi/2", 1.5 * std::numbers::pi}, {"4 pi", 4.0 * std::numbers::pi},
           {"12.5", 12.5}}) {
    std::string cfg = kFig1a;
    cfg.replace(cfg.find("8pi"), 3, text);
    EXPECT_NEAR(parse_config(cfg).run.t_max, value, 1e-14) << text;
  }
}

TEST(Config, NegativeStepNamesKey) {
  std::string cfg = kFig1a;
  cfg.insert(cfg.find("z_max"), "dt = -0.1\n");
  EXPECT_NE(error_of(cfg).find("run.dt"), std::string::npos) << error_of(cfg);
}

TEST(Config, TrajectoriesRejectPowerLawNoise) {
  const std::string cfg = R"(
[lattice]
sites = 10
c1 = 1
alpha = 0.5
[noise]
kind = pln
gamma = 1
lambda = 10
[run]
engine = trajectories
)";
  const std::string msg = error_of(cfg);
  EXPECT_NE(msg.find("trajectories"), std::string::npos) << msg;
  EXPECT_NE(msg.find("pln"), std::string::npos) << msg;
}

TEST(Config, UnknownKeysAndSectionsAreErrors) {
  std::string cfg = kFig1a;
  cfg.insert(cfg.find("alpha"), "colour = red\n");
  EXPECT_NE(error_of(cfg).find("lattice.colour"), std::string::npos) << error_of(cfg);
  EXPECT_NE(error_of(std::string(kFig1a) + "[extras]\nx = 1\n").find("extras"), std::string::npos);
}

TEST(Config, MissingRequiredKeysListDefaults) {
  const std::string msg = error_of("[lattice]\nc1 = 1\nalpha = 0.5\n[run]\nengine = unitary\n");
  EXPECT_NE(msg.find("lattice.sites"), std::string::npos) << msg;
  EXPECT_NE(msg.find("defaults"), std::string::npos) << msg;
}

TEST(Config, RangeAndChoiceErrorsNameTheKey) {
  const auto with = [](const std::string& from, const std::string& to) {
    std::string c = kFig1a;
    c.replace(c.find(from), from.size(), to);
    return error_of(c);
  };
  EXPECT_NE(with("initial_site = 0", "initial_site = 40").find("run.initial_site"), std::string::npos);
  EXPECT_NE(with("engine = unitary", "engine = magic").find("run.engine"), std::string::npos);
  EXPECT_NE(with("sites = 40", "sites = forty").find("lattice.sites"), std::string::npos);
  EXPECT_NE(with("alpha = 0.5", "alpha = -1").find("alpha"), std::string::npos);
}

TEST(Config, AliasesAndLists) {
  const RunConfig c = parse_config(R"(
[lattice]
sites = 30
g = 1
omega = 0.5
[noise]
kind = oun
gamma = 0.2
lambda = 0.1
correlation = uncorrelated
[run]
engine = master
initial_site = 0, 2
t_max = 10
stepper = interaction
[output]
formats = csv, pgm
)");
  EXPECT_DOUBLE_EQ(c.lattice.drive_g(), 1.0);
  EXPECT_EQ(c.run.initial_sites, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(c.noise.correlation, CorrelationMode::UncorrelatedAcrossSites);
  EXPECT_EQ(c.run.stepper, Stepper::InteractionPicture);
  EXPECT_EQ(c.output.formats, (std::set<std::string>{"csv", "pgm"}));
  EXPECT_EQ(parse_config(serialize_config(c)), c);
}

TEST(Config, CustomHoppingRoundTrips) {
  const RunConfig c = parse_config(R"(
[lattice]
sites = 3
c1 = 1
alpha = 0
mode = custom
hopping = 0, 1, 0; 1, 0, 0.5; 0, 0.5, 0
[run]
engine = unitary
t_max = 1
)");
  ASSERT_TRUE(c.lattice.custom_hopping.has_value());
  EXPECT_DOUBLE_EQ((*c.lattice.custom_hopping)(1, 2), 0.5);
  EXPECT_EQ(parse_config(serialize_config(c)), c);
}

TEST(Config, NoRampNeedsExplicitSpan) {
  EXPECT_NE(error_of("[lattice]\nsites = 10\nc1 = 1\nalpha = 0\n[run]\nengine = unitary\n").find("t_max"),
            std::string::npos);
}

TEST(Config, ShippedConfigsParse) {
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(GFT_CONFIG_DIR)) {
    if (entry.path().extension() != ".ini") continue;
    ++count;
    EXPECT_NO_THROW(parse_config(oracle::slurp(entry.path()))) << entry.path();
  }
  EXPECT_GE(count, 8u);
}

}  // namespace
}  // namespace gft
