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
#include "pml/comparisons.hpp"
#include "pml/fixtures.hpp"
#include "pml/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace pml;
using fixtures::make_channel;
using fixtures::uniform_prior;

namespace {

Scalar max_pml(const Joint& j) {
  Scalar best = Scalar::one(j.mode());
  for (std::size_t y : j.supp_y()) {
    const Scalar r = pml::pml(j, y);
    if (r > best) best = r;
  }
  return best;
}

}  // namespace

TEST_CASE("local differential privacy epsilon") {
  CHECK(ldp_epsilon(fixtures::fix_d().channel()).value ==
        Scalar::rational(3, 2));
  CHECK(ldp_epsilon(fixtures::fix_f().channel()).infinite);
  const Channel constant =
      make_channel({{"1/2", "1/2"}, {"1/2", "1/2"}});
  CHECK(ldp_epsilon(constant).value == Scalar::rational(1));
}

TEST_CASE("approximate LDP separates the two pathological channels") {
  // Disjoint supports: far from any pure guarantee, but (1, 1/4)-LDP.
  const Channel f = fixtures::fix_f().channel();
  CHECK(approx_ldp_holds(f, Scalar::rational(1), Scalar::rational(1, 4)));
  CHECK_FALSE(
      approx_ldp_holds(f, Scalar::rational(1), Scalar::rational(1, 5)));

  // A deterministic row: even a huge epsilon cannot buy delta < 1.
  const Channel g = fixtures::fix_g().channel();
  CHECK_FALSE(approx_ldp_holds(g, Scalar::rational(1000000),
                               Scalar::rational(1, 10)));
  CHECK(approx_ldp_holds(g, Scalar::rational(1), Scalar::rational(1)));
  CHECK_THROWS_AS(
      approx_ldp_holds(g, Scalar::rational(1, 2), Scalar::rational(0)),
      InvalidEpsilon);
}

TEST_CASE("local information privacy and local differential identifiability") {
  const Joint d = fixtures::fix_d();
  CHECK(lip_epsilon(d).value == Scalar::rational(5, 4));
  CHECK(ldi_epsilon(d).value == Scalar::rational(3, 2));

  const Joint indep = validate_model(
      uniform_prior(2), make_channel({{"1/2", "1/2"}, {"1/2", "1/2"}}));
  CHECK(lip_epsilon(indep).value == Scalar::rational(1));
  CHECK(ldi_epsilon(indep).value == Scalar::rational(1));

  // A revealing outcome makes both diverge.
  CHECK(lip_epsilon(fixtures::fix_c()).infinite);
  CHECK(ldi_epsilon(fixtures::fix_c()).infinite);
}

TEST_CASE("implied PML bounds, tight on the binary symmetric channel") {
  const Joint d = fixtures::fix_d();
  const Scalar worst = max_pml(d);
  CHECK(worst == Scalar::rational(6, 5));
  CHECK(implied_pml_bound(LocalNotion::kLdp, ldp_epsilon(d.channel()),
                          d.prior()) == Scalar::rational(6, 5));
  CHECK(implied_pml_bound(LocalNotion::kLdi, ldi_epsilon(d), d.prior()) ==
        Scalar::rational(6, 5));
  CHECK(implied_pml_bound(LocalNotion::kLip, lip_epsilon(d), d.prior()) ==
        Scalar::rational(5, 4));

  // Ratio 1 collapses every bound to 1.
  const Joint indep = validate_model(
      uniform_prior(2), make_channel({{"1/2", "1/2"}, {"1/2", "1/2"}}));
  for (const LocalNotion k :
       {LocalNotion::kLdp, LocalNotion::kLip, LocalNotion::kLdi}) {
    CHECK(implied_pml_bound(k, MeasureValue::finite(Scalar::rational(1)),
                            indep.prior()) == Scalar::rational(1));
  }
  CHECK_THROWS_AS(
      implied_pml_bound(LocalNotion::kLdp,
                        MeasureValue::inf(Mode::kRational), d.prior()),
      InfiniteInput);
}

TEST_CASE("implied PML bounds are sound on random models") {
  for (std::uint64_t seed = 1400; seed < 1430; ++seed) {
    const Joint j = random_model(seed, 3, 4);
    const Scalar worst = max_pml(j);
    REQUIRE(implied_pml_bound(LocalNotion::kLdp, ldp_epsilon(j.channel()),
                              j.prior()) >= worst);
    REQUIRE(implied_pml_bound(LocalNotion::kLip, lip_epsilon(j),
                              j.prior()) >= worst);
    REQUIRE(implied_pml_bound(LocalNotion::kLdi, ldi_epsilon(j),
                              j.prior()) >= worst);
  }
}

TEST_CASE("mutual information never exceeds the expected leakage") {
  const Joint indep = validate_model(
      uniform_prior(2), make_channel({{"1/2", "1/2"}, {"1/2", "1/2"}}));
  CHECK(mutual_information(indep) == Catch::Approx(0.0).margin(1e-12));
  CHECK(expected_leakage_nats(indep) == Catch::Approx(0.0).margin(1e-12));
  for (std::uint64_t seed = 1500; seed < 1530; ++seed) {
    const Joint j = random_model(seed, 3, 4);
    REQUIRE(mutual_information(j) <= expected_leakage_nats(j) + 1e-12);
  }
}

TEST_CASE("f-information registry") {
  CHECK_THROWS_AS(parse_f_kind("hellinger"), UnknownF);
  const Joint j = fixtures::fix_d();
  CHECK(f_information(j, FKind::kKl) ==
        Catch::Approx(mutual_information(j)).margin(1e-12));
  CHECK(f_information(j, FKind::kTv) ==
        Catch::Approx(total_variation_privacy(j).to_double()).margin(1e-12));
  const Joint indep = validate_model(
      uniform_prior(2), make_channel({{"1/2", "1/2"}, {"1/2", "1/2"}}));
  for (const FKind f : {FKind::kKl, FKind::kTv, FKind::kChi2}) {
    CHECK(f_information(indep, f) == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(f_information(j, f) <= f_info_pml_bound(j, f) + 1e-12);
  }
}

TEST_CASE("total variation privacy and its bounds on the BSC") {
  const Joint j = fixtures::fix_d();
  CHECK(total_variation_privacy(j) == Scalar::rational(1, 10));
  const TvBounds b =
      tv_bounds(j, Scalar::rational(6, 5), Scalar::rational(0));
  CHECK(b.ml_bound == Scalar::rational(1, 5));
  CHECK(b.regime_bound == Scalar::rational(1, 5));
  CHECK(b.pointwise_bound == Scalar::rational(1, 2));
  CHECK(b.cardinality_bound == Scalar::rational(1, 10));
}

TEST_CASE("the three regimes of the tail-aware bound") {
  const Joint j = fixtures::fix_d();
  const Scalar delta = Scalar::rational(1, 10);
  const Scalar slack =  // delta/2 * (eps_max - 1) with eps_max ratio 2
      Scalar::rational(1, 20);
  CHECK(tv_bounds(j, Scalar::rational(5, 4), delta).regime_bound ==
        Scalar::rational(1, 4) + slack);
  CHECK(tv_bounds(j, Scalar::rational(7, 4), delta).regime_bound ==
        Scalar::rational(1, 2) + slack);
  CHECK(tv_bounds(j, Scalar::rational(3), delta).regime_bound ==
        Scalar::rational(1) + slack);
}

TEST_CASE("all total variation bounds are sound on random models") {
  for (std::uint64_t seed = 1600; seed < 1630; ++seed) {
    const Joint j = random_model(seed, 3, 4);
    const Scalar t = total_variation_privacy(j);
    const TvBounds b = tv_bounds(j, max_pml(j), Scalar::rational(0));
    REQUIRE(t <= b.ml_bound);
    REQUIRE(t <= b.regime_bound);
    REQUIRE(t <= b.pointwise_bound);
    REQUIRE(t <= b.cardinality_bound);
  }
}

TEST_CASE("max-information equals the worst pointwise ratio") {
  for (std::uint64_t seed = 1700; seed < 1720; ++seed) {
    const Joint j = random_model(seed, 3, 4);
    REQUIRE(max_information(j) == max_pml(j));
  }
  CHECK(max_information(fixtures::fix_c()) == Scalar::rational(4));
}

TEST_CASE("approximate max-information: brute force against the screen") {
  const Joint j = fixtures::fix_c();
  CHECK(approx_max_information(j, Scalar::rational(0)) ==
        max_information(j));
  const Scalar delta = Scalar::rational(1, 6);
  const Scalar exact = approx_max_information(j, delta);
  const Scalar bound = approx_max_information_bound(j, delta);
  CHECK(exact <= bound);
  CHECK(bound == Scalar::rational(6, 5));
  // Monotone in the slack.
  CHECK(approx_max_information(j, Scalar::rational(1, 3)) <= exact);

  for (std::uint64_t seed = 1800; seed < 1812; ++seed) {
    const Joint r = random_model(seed, 2, 4);
    for (const Scalar& d : {Scalar::rational(1, 8), Scalar::rational(1, 3)}) {
      REQUIRE(approx_max_information(r, d) <=
              approx_max_information_bound(r, d));
    }
  }
}

TEST_CASE("oversized supports fall back to the sufficient bound") {
  const Joint big = random_model(1900, 5, 5);
  try {
    approx_max_information(big, Scalar::rational(1, 10));
    FAIL("expected TooLargeForBruteForce");
  } catch (const TooLargeForBruteForce& e) {
    CHECK(e.fallback_bound ==
          approx_max_information_bound(big, Scalar::rational(1, 10)));
  }
}
