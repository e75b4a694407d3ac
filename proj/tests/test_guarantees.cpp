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
#include "pml/fixtures.hpp"
#include "pml/guarantees.hpp"
#include "pml/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace pml;
using fixtures::make_channel;
using fixtures::uniform_prior;

TEST_CASE("almost-sure guarantee with a worst-outcome witness") {
  const Joint j = fixtures::fix_c();
  const GuaranteeReport ok = check_eps_pml(j, Scalar::rational(4));
  CHECK(ok.holds);
  const GuaranteeReport bad = check_eps_pml(j, Scalar::rational(6, 5));
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witness_y.has_value());
  CHECK(*bad.witness_y == 0);
  CHECK_THROWS_AS(check_eps_pml(j, Scalar::rational(1, 2)), InvalidEpsilon);

  const Joint indep = validate_model(
      uniform_prior(2), make_channel({{"1/2", "1/2"}, {"1/2", "1/2"}}));
  CHECK(check_eps_pml(indep, Scalar::rational(1)).holds);
}

TEST_CASE("smallest epsilon for a tail budget excludes whole groups") {
  const Joint j = fixtures::fix_c();
  const MinEpsResult r = min_eps_for_delta_pml(j, Scalar::rational(1, 6));
  CHECK(r.eps_ratio == Scalar::rational(6, 5));
  CHECK(r.excluded == std::vector<std::size_t>{0, 1});

  // Excluding only one of the two ratio-4 outcomes cannot lower the bound.
  const MinEpsResult half = min_eps_for_delta_pml(j, Scalar::rational(1, 12));
  CHECK(half.eps_ratio == Scalar::rational(4));
  CHECK(half.excluded.empty());

  const MinEpsResult g =
      min_eps_for_delta_pml(fixtures::fix_g(), Scalar::rational(1, 10));
  CHECK(g.eps_ratio == Scalar::rational(10, 9));
  CHECK(g.excluded == std::vector<std::size_t>{0});

  // Every outcome of the disjoint-support channel leaks ratio 2, so no tail
  // budget short of everything helps.
  const MinEpsResult f =
      min_eps_for_delta_pml(fixtures::fix_f(), Scalar::rational(9, 10));
  CHECK(f.eps_ratio == Scalar::rational(2));
}

TEST_CASE("tail-bound guarantee") {
  const Joint j = fixtures::fix_c();
  CHECK(check_eps_delta_pml(j, Scalar::rational(6, 5), Scalar::rational(1, 6))
            .holds);
  CHECK_FALSE(
      check_eps_delta_pml(j, Scalar::rational(6, 5), Scalar::rational(1, 8))
          .holds);
  CHECK(check_eps_delta_pml(j, Scalar::rational(4), Scalar::rational(0))
            .holds);
  CHECK_THROWS_AS(
      check_eps_delta_pml(j, Scalar::rational(2), Scalar::rational(2)),
      InvalidDelta);
}

TEST_CASE("per-secret event leakage on the canonical worked example") {
  const Joint j = fixtures::fix_c();
  const Scalar delta = Scalar::rational(1, 6);
  CHECK(eml_h_x(j, 0, delta) == Scalar::rational(6, 5));
  CHECK(eml_h_x(j, 1, delta) == Scalar::rational(6, 5));
  CHECK(eml_h_x(j, 2, delta) == Scalar::rational(12, 5));
  CHECK(eml_h_x(j, 3, delta) == Scalar::rational(12, 5));
  CHECK(eml_h_x(j, 0, Scalar::rational(1)) == Scalar::rational(1));
  CHECK_THROWS_AS(eml_h_x(j, 0, Scalar::rational(0)), InvalidDelta);
  CHECK_THROWS_AS(eml_h_x(j, 0, Scalar::rational(3, 2)), InvalidDelta);
}

TEST_CASE("kappa and its witness event") {
  const Joint j = fixtures::fix_c();
  const EmlKappaResult k = eml_kappa(j, Scalar::rational(1, 6));
  CHECK(k.kappa == Scalar::rational(12, 5));
  CHECK(k.worst_x == 2);
  CHECK(k.maximizers == std::vector<std::size_t>{2, 3});
  CHECK(k.h_values.size() == 4);
  // Witness: the reduced outcome y2 plus a tenth of the merged bulk class.
  CHECK(k.worst_event.members == std::set<std::size_t>{1});
  REQUIRE(k.worst_event.split.has_value());
  CHECK(k.worst_event.split->y == 2);
  CHECK(k.worst_event.split->zeta == Scalar::rational(1, 10));
  CHECK(event_leakage(validate_model(j.prior(), [&] {
          Channel c = k.reduction.reduced;
          c.labels_x = j.prior().labels_x;
          return c;
        }()), k.worst_event) == k.kappa);
}

TEST_CASE("kappa on the binary symmetric channel at a decimal delta") {
  const Scalar delta = Scalar::parse("0.6", Mode::kRational);
  const EmlKappaResult k = eml_kappa(fixtures::fix_d(), delta);
  CHECK(k.kappa == Scalar::rational(17, 15));
  CHECK(k.kappa == Scalar::rational(34, 30));
  CHECK(k.maximizers.size() == 2);
}

TEST_CASE("post-processing can destroy a tail guarantee") {
  const Joint j = fixtures::fix_c();
  const Joint post = postprocess(j, fixtures::fix_c_postprocessing());
  // Before: excluding 1/6 of the outputs leaves epsilon ratio 6/5.
  CHECK(min_eps_for_delta_pml(j, Scalar::rational(1, 6)).eps_ratio ==
        Scalar::rational(6, 5));
  // After: every output leaks ratio 4/3, and no tail exclusion helps.
  CHECK(min_eps_for_delta_pml(post, Scalar::rational(1, 6)).eps_ratio ==
        Scalar::rational(4, 3));
  CHECK_FALSE(check_eps_delta_pml(post, Scalar::rational(6, 5),
                                  Scalar::rational(1, 6))
                  .holds);
  // The event-level guarantee sees this coming: kappa already exceeds 6/5.
  CHECK(eml_kappa(j, Scalar::rational(1, 6)).kappa > Scalar::rational(6, 5));
  CHECK(eml_kappa(post, Scalar::rational(1, 6)).kappa ==
        Scalar::rational(4, 3));
}

TEST_CASE("event-level guarantee check; delta = 0 degenerates to eps-PML") {
  const Joint j = fixtures::fix_c();
  CHECK(check_eps_delta_eml(j, Scalar::rational(12, 5), Scalar::rational(1, 6))
            .holds);
  const GuaranteeReport bad =
      check_eps_delta_eml(j, Scalar::rational(2), Scalar::rational(1, 6));
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witness_event.has_value());
  CHECK(bad.witness_event->members == std::set<std::size_t>{1});

  const GuaranteeReport zero =
      check_eps_delta_eml(j, Scalar::rational(4), Scalar::rational(0));
  CHECK(zero.kind == GuaranteeKind::kEml);
  CHECK(zero.holds);
  CHECK_FALSE(
      check_eps_delta_eml(j, Scalar::rational(3), Scalar::rational(0)).holds);
}

TEST_CASE("kappa curve breakpoints on the binary symmetric channel") {
  const KappaCurve curve = kappa_curve(fixtures::fix_d());
  REQUIRE(curve.breakpoints.size() == 2);
  CHECK(curve.breakpoints[0].delta == Scalar::rational(1, 2));
  CHECK(curve.breakpoints[0].kappa == Scalar::rational(6, 5));
  CHECK(curve.breakpoints[1].delta == Scalar::rational(1));
  CHECK(curve.breakpoints[1].kappa == Scalar::rational(1));
}

TEST_CASE("kappa is monotone, pinned at both ends") {
  const std::vector<Scalar> deltas = {
      Scalar::rational(1, 10), Scalar::rational(1, 6), Scalar::rational(1, 3),
      Scalar::rational(1, 2), Scalar::rational(3, 5), Scalar::rational(9, 10),
      Scalar::rational(1)};
  for (std::uint64_t seed = 400; seed < 415; ++seed) {
    const Joint j = random_model(seed, 3, 4);
    CHECK(eml_kappa(j, Scalar::rational(1)).kappa == Scalar::one(j.mode()));
    Scalar prev = Scalar::zero(j.mode());
    bool first = true;
    for (const Scalar& d : deltas) {
      const Scalar k = eml_kappa(j, d).kappa;
      if (!first) REQUIRE(k <= prev);
      prev = k;
      first = false;
    }
    // For delta no larger than any secret's favourite outcome mass, kappa
    // equals the worst pointwise ratio.
    const Joint red = reduced_joint(j);
    Scalar small = Scalar::one(j.mode());
    for (std::size_t x = 0; x < red.num_x(); ++x) {
      Scalar best_d = Scalar::zero(j.mode());
      Scalar best_mass = Scalar::zero(j.mode());
      for (std::size_t y : red.supp_y()) {
        const Scalar d = info_density(red, x, y);
        if (d > best_d) {
          best_d = d;
          best_mass = red.output_marginal()[y];
        }
      }
      if (best_mass < small) small = best_mass;
    }
    Scalar worst = Scalar::one(j.mode());
    for (std::size_t y : j.supp_y()) {
      const Scalar r = pml::pml(j, y);
      if (r > worst) worst = r;
    }
    REQUIRE(eml_kappa(j, small).kappa == worst);
  }
}

TEST_CASE("kappa only depends on the equivalence class") {
  for (std::uint64_t seed = 500; seed < 506; ++seed) {
    const Joint j = random_model(seed, 3, 4);
    const Joint variant = random_split_variant(j, seed + 99);
    for (const Scalar& d :
         {Scalar::rational(1, 6), Scalar::rational(1, 2)}) {
      REQUIRE(eml_kappa(j, d).kappa == eml_kappa(variant, d).kappa);
    }
  }
}

TEST_CASE("kappa is invariant under output relabelling") {
  const Joint j = random_model(600, 3, 5);
  Channel permuted;
  permuted.mode = j.mode();
  permuted.labels_x = j.prior().labels_x;
  const std::vector<std::size_t> perm = {3, 0, 4, 1, 2};
  for (std::size_t y : perm) {
    permuted.labels_y.push_back(j.channel().labels_y[y]);
  }
  for (std::size_t x = 0; x < j.num_x(); ++x) {
    std::vector<Scalar> row;
    for (std::size_t y : perm) row.push_back(j.channel().at(x, y));
    permuted.rows.push_back(std::move(row));
  }
  const Joint jp = validate_model(j.prior(), permuted);
  for (const Scalar& d : {Scalar::rational(1, 5), Scalar::rational(2, 5),
                          Scalar::rational(4, 5)}) {
    REQUIRE(eml_kappa(j, d).kappa == eml_kappa(jp, d).kappa);
  }
}

TEST_CASE("guarantee reports are monotone in both parameters") {
  const Joint j = fixtures::fix_c();
  const std::vector<Scalar> epss = {Scalar::rational(1), Scalar::rational(6, 5),
                                    Scalar::rational(2), Scalar::rational(4)};
  const std::vector<Scalar> deltas = {Scalar::rational(0),
                                      Scalar::rational(1, 12),
                                      Scalar::rational(1, 6),
                                      Scalar::rational(1, 2)};
  for (std::size_t i = 0; i < epss.size(); ++i) {
    for (std::size_t k = 0; k < deltas.size(); ++k) {
      if (!check_eps_delta_pml(j, epss[i], deltas[k]).holds) continue;
      for (std::size_t i2 = i; i2 < epss.size(); ++i2) {
        for (std::size_t k2 = k; k2 < deltas.size(); ++k2) {
          REQUIRE(check_eps_delta_pml(j, epss[i2], deltas[k2]).holds);
        }
      }
    }
  }
  // EML monotonicity, directly.
  for (std::size_t i = 0; i < epss.size(); ++i) {
    for (std::size_t k = 0; k < deltas.size(); ++k) {
      if (!check_eps_delta_eml(j, epss[i], deltas[k]).holds) continue;
      for (std::size_t i2 = i; i2 < epss.size(); ++i2) {
        for (std::size_t k2 = k; k2 < deltas.size(); ++k2) {
          REQUIRE(check_eps_delta_eml(j, epss[i2], deltas[k2]).holds);
        }
      }
    }
  }
}

TEST_CASE("when the event guarantee transfers to the tail guarantee") {
  // BSC: the two outcomes have different maximizing secrets, so the
  // sufficient condition fails.
  const EmlImpliesPmlResult bsc = eml_implies_pml_check(
      fixtures::fix_d(), Scalar::rational(1), Scalar::rational(3, 5));
  CHECK_FALSE(bsc.condition_met);
  CHECK_FALSE(bsc.implies_pml);

  // One rare secret dominates the single high-leakage outcome.
  const EmlImpliesPmlResult g = eml_implies_pml_check(
      fixtures::fix_g(), Scalar::rational(3, 2), Scalar::rational(1, 10));
  CHECK(g.condition_met);
  REQUIRE(g.common_x.has_value());
  CHECK(*g.common_x == 0);
  CHECK(g.tail_mass == Scalar::rational(1, 10));
  CHECK(g.implies_pml);
  CHECK_FALSE(eml_implies_pml_check(fixtures::fix_g(), Scalar::rational(3, 2),
                                    Scalar::rational(1, 20))
                  .implies_pml);

  // Nothing above epsilon: vacuously transfers.
  const EmlImpliesPmlResult none = eml_implies_pml_check(
      fixtures::fix_d(), Scalar::rational(2), Scalar::rational(0));
  CHECK(none.condition_met);
  CHECK(none.implies_pml);
}
