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
#include <set>

#include <gtest/gtest.h>

#include "gft/noise.hpp"
#include "gft/parallel.hpp"
#include "gft/rng.hpp"

namespace gft {
namespace {

TEST(Rng, StreamSeedIsAPureFunction) {
  EXPECT_EQ(stream_seed(7, 3, 11), stream_seed(7, 3, 11));
  EXPECT_NE(stream_seed(7, 3, 11), stream_seed(7, 11, 3));
}

TEST(Rng, StreamSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t r = 0; r < 50; ++r)
    for (std::uint64_t s = 0; s < 50; ++s) seen.insert(stream_seed(42, r, s));
  EXPECT_EQ(seen.size(), 2500u);
  EXPECT_NE(stream_seed(1, 0, 0), stream_seed(2, 0, 0));
}

TEST(Noise, CorrelatedStreamsShareOneValue) {
  NoiseStreams s(CorrelationMode::CorrelatedAcrossSites, 5, 3, 0);
  const RealVector x = s.standard_normals();
  for (int i = 1; i < 5; ++i) EXPECT_EQ(x[i], x[0]);
  NoiseStreams u(CorrelationMode::UncorrelatedAcrossSites, 5, 3, 0);
  const RealVector y = u.standard_normals();
  EXPECT_NE(y[0], y[1]);
}

TEST(Noise, SameSeedSameDraws) {
  NoiseStreams a(CorrelationMode::UncorrelatedAcrossSites, 4, 9, 17);
  NoiseStreams b(CorrelationMode::UncorrelatedAcrossSites, 4, 9, 17);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.standard_normals(), b.standard_normals());
}

TEST(Noise, WhiteStepVariance) {
  const NoiseModel model{NoiseKind::White, 0.3, 1.0, CorrelationMode::UncorrelatedAcrossSites};
  const double dt = 0.02;
  NoiseStreams s(model.correlation, 10, 5, 0);
  double sum = 0.0, sum2 = 0.0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    const RealVector x = sample_white_step(dt, model, s);
    sum += x.sum();
    sum2 += x.squaredNorm();
  }
  const double n = 10.0 * draws;
  const double var = sum2 / n - (sum / n) * (sum / n);
  EXPECT_NEAR(var / (model.gamma / dt), 1.0, 5.0 * std::sqrt(2.0 / n));
}

TEST(Noise, OrnsteinUhlenbeckAutocovariance) {
  const NoiseModel model{NoiseKind::OrnsteinUhlenbeck, 0.8, 2.0, CorrelationMode::CorrelatedAcrossSites};
  const double tau = 0.5;
  const int samples = 20000;
  double s0 = 0.0, c = 0.0, c2 = 0.0;
  for (int r = 0; r < samples; ++r) {
    NoiseStreams st(model.correlation, 1, 77, static_cast<std::uint64_t>(r));
    const RealVector x0 = sample_ou_stationary(model, st);
    RealVector x = x0;
    for (int k = 0; k < 5; ++k) x = sample_ou_step(x, tau / 5, model, st);
    s0 += x0[0] * x0[0];
    c += x0[0] * x[0];
    c2 += (x0[0] * x[0]) * (x0[0] * x[0]);
  }
  const double var = s0 / samples;
  EXPECT_NEAR(var / model.stationary_variance(), 1.0, 5.0 * std::sqrt(2.0 / samples));
  const double cov = c / samples;
  const double se = std::sqrt((c2 / samples - cov * cov) / samples);
  EXPECT_NEAR(cov, model.stationary_variance() * std::exp(-model.lambda * tau), 3.0 * se);
}

TEST(Noise, Validation) {
  EXPECT_THROW(validate(NoiseModel{NoiseKind::White, -1.0, 1.0}), ValidationError);
  EXPECT_THROW(validate(NoiseModel{NoiseKind::OrnsteinUhlenbeck, 1.0, 0.0}), ValidationError);
  NoiseStreams s(CorrelationMode::CorrelatedAcrossSites, 2, 1, 0);
  EXPECT_THROW(sample_white_step(0.0, NoiseModel{NoiseKind::White, 1.0, 1.0}, s), ValidationError);
}

TEST(Parallel, VisitsEveryIndexOnce) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(Parallel, RethrowsLowestFailingIndex) {
  try {
    parallel_for(100, 3, [](std::size_t i) {
      if (i == 7 || i == 40) throw std::runtime_error(std::to_string(i));
    });
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "7");
  }
}

TEST(Parallel, ResolveThreads) {
  EXPECT_EQ(resolve_threads(4, 2), 2u);
  EXPECT_GE(resolve_threads(0, 100), 1u);
  EXPECT_EQ(resolve_threads(3, 0), 1u);
}

}  // namespace
}  // namespace gft
