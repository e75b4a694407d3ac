// Copyright 2026 The PML Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "pml/adversary.hpp"
#include "pml/fixtures.hpp"
#include "pml/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace pml;
using fixtures::make_channel;
using fixtures::make_prior;
using fixtures::uniform_prior;

namespace {

RandomizedFunction identity_function(const Joint& j) {
  RandomizedFunction u;
  u.kernel.mode = j.mode();
  u.kernel.labels_x = j.prior().labels_x;
  u.kernel.labels_y = j.prior().labels_x;
  for (std::size_t x = 0; x < j.num_x(); ++x) {
    std::vector<Scalar> row(j.num_x(), Scalar::zero(j.mode()));
    row[x] = Scalar::one(j.mode());
    u.kernel.rows.push_back(std::move(row));
  }
  return u;
}

GainFunction identity_gain(const Joint& j) {
  std::vector<std::vector<Scalar>> rows;
  for (std::size_t x = 0; x < j.num_x(); ++x) {
    std::vector<Scalar> row(j.num_x(), Scalar::zero(j.mode()));
    row[x] = Scalar::one(j.mode());
    rows.push_back(std::move(row));
  }
  return GainFunction::from_matrix(std::move(rows), j.prior().labels_x,
                                   j.mode());
}

}  // namespace

TEST_CASE("guessing the secret itself compares best posterior to best prior") {
  const Joint j = fixtures::fix_c();
  const RandomizedFunction u = identity_function(j);
  // Outcome y1 reveals x4: posterior max 1, prior max 1/4.
  CHECK(u_leakage(j, u, 0) == Scalar::rational(4));
  CHECK(g_leakage(j, identity_gain(j), 0) == Scalar::rational(4));
  // Outcome y3 has posterior (3/10, 3/10, 1/5, 1/5).
  CHECK(u_leakage(j, u, 2) == Scalar::rational(6, 5));
}

TEST_CASE("constant functions and all-covering guesses leak nothing") {
  const Joint j = fixtures::fix_c();
  RandomizedFunction constant;
  constant.kernel = make_channel(
      {{"1"}, {"1"}, {"1"}, {"1"}}, Mode::kRational, "x", "u");
  for (std::size_t y : j.supp_y()) {
    CHECK(u_leakage(j, constant, y) == Scalar::rational(1));
  }
  // One guess covering the whole alphabet (|X|-tries with k = |X|).
  const GainFunction cover = GainFunction::from_matrix(
      {{Scalar::rational(1)},
       {Scalar::rational(1)},
       {Scalar::rational(1)},
       {Scalar::rational(1)}},
      {"all"}, Mode::kRational);
  for (std::size_t y : j.supp_y()) {
    CHECK(g_leakage(j, cover, y) == Scalar::rational(1));
  }
}

TEST_CASE("the shattering function attains the pointwise leakage") {
  for (std::uint64_t seed = 1000; seed < 1012; ++seed) {
    const Joint j = random_model(seed, 3, 4);
    RandomizedFunction u;
    u.kernel = shattering_channel(j.prior());
    for (std::size_t y : j.supp_y()) {
      REQUIRE(u_leakage(j, u, y) == pml::pml(j, y));
    }
  }
}

TEST_CASE("dynamics can fall below one even though the ratio never does") {
  // Posterior flattens a biased prior: guessing gets harder after the
  // release, but the pointwise ratio still weighs the rare secret.
  const Joint j = validate_model(
      make_prior({"3/5", "2/5"}),
      make_channel({{"1/3", "2/3"}, {"1/2", "1/2"}}));
  const RandomizedFunction u = identity_function(j);
  CHECK(u_leakage(j, u, 0) == Scalar::rational(5, 6));
  CHECK(pml::pml(j, 0) == Scalar::rational(5, 4));
}

TEST_CASE("no adversary beats the pointwise ratio") {
  for (std::uint64_t seed = 1100; seed < 1130; ++seed) {
    const Joint j = random_model(seed, 3, 3);
    const Channel k = random_channel(seed + 7000, 3, 4, Mode::kRational,
                                     "x", "u");
    RandomizedFunction u;
    u.kernel = k;
    GainFunction g = GainFunction::from_matrix(k.rows, k.labels_y, k.mode);
    for (std::size_t y : j.supp_y()) {
      const Scalar cap = pml::pml(j, y);
      REQUIRE(u_leakage(j, u, y) <= cap);
      REQUIRE(g_leakage(j, g, y) <= cap);
    }
  }
}

TEST_CASE("gain normalization and validation") {
  GainFunction g = GainFunction::from_matrix(
      {{Scalar::rational(1, 2), Scalar::rational(0)},
       {Scalar::rational(0), Scalar::rational(1, 4)}},
      {"a", "b"}, Mode::kRational);
  CHECK(g.matrix[0][0] == Scalar::rational(1));
  CHECK(g.matrix[1][1] == Scalar::rational(1, 2));
  CHECK_THROWS_AS(
      GainFunction::from_matrix({{Scalar::rational(0)}}, {"a"},
                                Mode::kRational),
      ZeroBaselineGain);
  CHECK_THROWS_AS(
      GainFunction::from_matrix({{Scalar::rational(-1)}}, {"a"},
                                Mode::kRational),
      NegativeEntry);
}

TEST_CASE("function-to-gain keeps every outcome's leakage") {
  for (std::uint64_t seed = 1200; seed < 1220; ++seed) {
    const Joint j = random_model(seed, 3, 3);
    RandomizedFunction u;
    u.kernel = random_channel(seed + 9000, 3, 3, Mode::kRational, "x", "u");
    const GainFunction g = gain_from_function(u);
    for (std::size_t y : j.supp_y()) {
      REQUIRE(g_leakage(j, g, y) == u_leakage(j, u, y));
    }
  }
}

TEST_CASE("gain-to-function: shared maximizer case") {
  const Joint j = fixtures::fix_c();
  const GainFunction g = identity_gain(j);
  // At y1 the guess "x4" maximizes both the posterior (1) and the prior
  // (uniform tie) expected gain.
  const RandomizedFunction u = function_from_gain(j, g, 0);
  REQUIRE(detail::sums_to_one(u.kernel.rows[0], Mode::kRational));
  CHECK(u_leakage(j, u, 0) == g_leakage(j, g, 0));
}

TEST_CASE("gain-to-function: disjoint maximizers need the mixture") {
  // Posterior-best and prior-best guesses differ at y1: the prior favours
  // x1 while the posterior favours x2.
  const Joint j = validate_model(
      make_prior({"2/3", "1/3"}),
      make_channel({{"1/4", "3/4"}, {"3/4", "1/4"}}));
  const GainFunction g = identity_gain(j);
  const RandomizedFunction u = function_from_gain(j, g, 0);
  for (const auto& row : u.kernel.rows) {
    REQUIRE(detail::sums_to_one(row, Mode::kRational));
  }
  CHECK(u_leakage(j, u, 0) == g_leakage(j, g, 0));
}

TEST_CASE("gain-to-function pads secrets outside the guess supports") {
  const Joint j = fixtures::fix_c();
  // Guesses only distinguish x1 and x2; x3, x4 sit outside every support.
  const GainFunction g = GainFunction::from_matrix(
      {{Scalar::rational(1), Scalar::rational(0)},
       {Scalar::rational(0), Scalar::rational(1)},
       {Scalar::rational(0), Scalar::rational(0)},
       {Scalar::rational(0), Scalar::rational(0)}},
      {"a", "b"}, Mode::kRational);
  // At y1 and y2 the posterior puts no mass on x1 or x2, so the best
  // posterior gain is 0 and no randomized function can realize that ratio.
  CHECK(g_leakage(j, g, 0).is_zero());
  CHECK_THROWS_AS(function_from_gain(j, g, 0), ComputationError);
  CHECK_THROWS_AS(function_from_gain(j, g, 1), ComputationError);
  for (std::size_t y : {std::size_t{2}, std::size_t{3}}) {
    const RandomizedFunction u = function_from_gain(j, g, y);
    for (const auto& row : u.kernel.rows) {
      REQUIRE(detail::sums_to_one(row, Mode::kRational));
    }
    REQUIRE(u_leakage(j, u, y) == g_leakage(j, g, y));
  }
}

TEST_CASE("gain-to-function equivalence on random instances") {
  for (std::uint64_t seed = 1300; seed < 1330; ++seed) {
    const Joint j = random_model(seed, 3, 3);
    Channel raw = random_channel(seed + 11000, 3, 3, Mode::kRational,
                                 "x", "g");
    // Sparsify: zero one entry per row so supports genuinely differ, then
    // use rows directly as (unnormalized) gains.
    SplitMix64 rng(seed);
    for (auto& row : raw.rows) {
      row[rng.next() % row.size()] = Scalar::rational(0);
    }
    GainFunction g;
    try {
      g = GainFunction::from_matrix(raw.rows, raw.labels_y, raw.mode);
    } catch (const ZeroBaselineGain&) {
      continue;
    }
    for (std::size_t y : j.supp_y()) {
      const RandomizedFunction u = function_from_gain(j, g, y);
      for (const auto& row : u.kernel.rows) {
        REQUIRE(detail::sums_to_one(row, Mode::kRational));
      }
      REQUIRE(u_leakage(j, u, y) == g_leakage(j, g, y));
    }
  }
}
