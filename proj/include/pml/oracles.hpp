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
//
// Independent brute-force oracles.  Deliberately naive: these certify the
// main algorithms on small instances and are used only by tests.
#ifndef PML_ORACLES_HPP_
#define PML_ORACLES_HPP_

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "pml/channel_ops.hpp"
#include "pml/comparisons.hpp"
#include "pml/leakage.hpp"
#include "pml/model.hpp"

namespace pml {

struct OracleBudget {
  std::size_t max_outputs = 6;     // event enumeration over reduced outputs
  std::size_t max_event_bits = 20; // event enumeration over (x, y) pairs
  std::size_t grid_steps = 4;      // fractional weights a_j in {0, 1/q, .., 1}
};

// Exhaustive kappa(delta): every subset of reduced outcomes with mass at
// least delta, plus every subset completed to mass exactly delta by a
// fractional boundary outcome.
inline Scalar brute_force_eml(const Joint& joint, const Scalar& delta,
                              const OracleBudget& budget = {}) {
  const Mode mode = joint.mode();
  if (delta <= Scalar::zero(mode) || delta > Scalar::one(mode)) {
    throw InvalidDelta("delta must lie in (0, 1]");
  }
  const Joint red = reduced_joint(joint);
  const std::vector<std::size_t>& supp = red.supp_y();
  if (supp.size() > budget.max_outputs) {
    throw BudgetExceeded("reduced output alphabet of size " +
                         std::to_string(supp.size()) +
                         " exceeds the oracle budget of " +
                         std::to_string(budget.max_outputs));
  }
  bool found = false;
  Scalar best = Scalar::zero(mode);
  const std::uint64_t n_events = std::uint64_t{1} << supp.size();
  for (std::uint64_t e = 0; e < n_events; ++e) {
    Event ev;
    Scalar pe = Scalar::zero(mode);
    for (std::uint64_t bits = e; bits != 0; bits &= bits - 1) {
      const std::size_t yi = supp[std::countr_zero(bits)];
      ev.members.insert(yi);
      pe += red.output_marginal()[yi];
    }
    if (pe >= delta && !ev.members.empty()) {
      const Scalar r = event_leakage(red, ev);
      if (!found || r > best) {
        best = r;
        found = true;
      }
    }
    if (pe < delta) {
      // Try completing to mass exactly delta with one split outcome.
      for (std::size_t yi : supp) {
        if (ev.members.count(yi) > 0) continue;
        const Scalar need = delta - pe;
        const Scalar py = red.output_marginal()[yi];
        if (need > py) continue;
        Event split_ev = ev;
        split_ev.split = Event::Split{yi, need / py};
        const Scalar r = event_leakage(red, split_ev);
        if (!found || r > best) {
          best = r;
          found = true;
        }
      }
    }
  }
  return best;
}

// Grid screen for the same program: fractional weights a_j from a coarse
// grid; a feasible point, hence a lower bound on kappa(delta).
inline Scalar brute_force_eml_grid(const Joint& joint, const Scalar& delta,
                                   const OracleBudget& budget = {}) {
  const Mode mode = joint.mode();
  if (delta <= Scalar::zero(mode) || delta > Scalar::one(mode)) {
    throw InvalidDelta("delta must lie in (0, 1]");
  }
  const Joint red = reduced_joint(joint);
  const std::vector<std::size_t>& supp = red.supp_y();
  if (supp.size() > budget.max_outputs) {
    throw BudgetExceeded("reduced output alphabet exceeds the oracle budget");
  }
  const std::size_t q = budget.grid_steps;
  std::vector<Scalar> grid;
  for (std::size_t k = 0; k <= q; ++k) {
    grid.push_back(mode == Mode::kRational
                       ? Scalar::rational(static_cast<long long>(k),
                                          static_cast<long long>(q))
                       : Scalar::real(static_cast<double>(k) / q));
  }
  std::vector<std::size_t> idx(supp.size(), 0);
  bool found = false;
  Scalar best = Scalar::zero(mode);
  while (true) {
    Scalar massv = Scalar::zero(mode);
    for (std::size_t i = 0; i < supp.size(); ++i) {
      massv += grid[idx[i]] * red.output_marginal()[supp[i]];
    }
    if (massv >= delta && !massv.is_zero()) {
      Scalar m = Scalar::zero(mode);
      for (std::size_t x = 0; x < red.num_x(); ++x) {
        Scalar cond = Scalar::zero(mode);
        for (std::size_t i = 0; i < supp.size(); ++i) {
          cond += grid[idx[i]] * red.channel().at(x, supp[i]);
        }
        const Scalar r = cond / massv;
        if (x == 0 || r > m) m = r;
      }
      if (!found || m > best) {
        best = m;
        found = true;
      }
    }
    std::size_t i = 0;
    while (i < idx.size() && idx[i] == q) idx[i++] = 0;
    if (i == idx.size()) break;
    ++idx[i];
  }
  return best;
}

// Exhaustive approximate max-information with an explicit budget.
inline Scalar brute_force_approx_maxinfo(const Joint& joint,
                                         const Scalar& delta,
                                         const OracleBudget& budget = {}) {
  try {
    return approx_max_information(joint, delta, budget.max_event_bits);
  } catch (const TooLargeForBruteForce& e) {
    throw BudgetExceeded(e.what());
  }
}

// splitmix64: tiny, well-known, and reproducible across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in {1, ..., 64}: entries k/64 before row normalization.
  std::uint64_t next_numerator() { return (next() & 63U) + 1; }

 private:
  std::uint64_t state_;
};

// Deterministic pseudo-random channel with denominator-64 entries before
// row normalization.
inline Channel random_channel(std::uint64_t seed, std::size_t nx,
                              std::size_t ny, Mode mode = Mode::kRational,
                              const std::string& xprefix = "x",
                              const std::string& yprefix = "y") {
  SplitMix64 rng(seed);
  Channel c;
  c.mode = mode;
  for (std::size_t j = 0; j < ny; ++j) {
    c.labels_y.push_back(yprefix + std::to_string(j + 1));
  }
  for (std::size_t i = 0; i < nx; ++i) {
    c.labels_x.push_back(xprefix + std::to_string(i + 1));
    std::vector<Rational> raw;
    Rational sum = 0;
    for (std::size_t j = 0; j < ny; ++j) {
      raw.emplace_back(rng.next_numerator(), 64);
      sum += raw.back();
    }
    std::vector<Scalar> row;
    for (const Rational& r : raw) {
      const Rational norm = r / sum;
      row.push_back(mode == Mode::kRational
                        ? Scalar::rational(norm)
                        : Scalar::real(static_cast<double>(norm)));
    }
    c.rows.push_back(std::move(row));
  }
  return c;
}

inline Prior random_prior(std::uint64_t seed, std::size_t nx,
                          Mode mode = Mode::kRational,
                          const std::string& prefix = "x") {
  const Channel c = random_channel(seed, 1, nx, mode, "p", prefix);
  Prior p;
  p.mode = mode;
  for (std::size_t i = 0; i < nx; ++i) {
    p.labels_x.push_back(prefix + std::to_string(i + 1));
    p.probs.push_back(c.rows[0][i]);
  }
  return p;
}

// Deterministic pseudo-random joint; same seed, same model, bit for bit.
inline Joint random_model(std::uint64_t seed, std::size_t nx, std::size_t ny,
                          Mode mode = Mode::kRational) {
  return validate_model(random_prior(seed * 2 + 1, nx, mode),
                        random_channel(seed * 2, nx, ny, mode));
}

// A random member of the joint's equivalence class: up to max_splits
// outcome splits at random sixteenth weights.
inline Joint random_split_variant(const Joint& joint, std::uint64_t seed,
                                  std::size_t max_splits = 3) {
  SplitMix64 rng(seed);
  Joint j = joint;
  const std::size_t n = 1 + rng.next() % max_splits;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& supp = j.supp_y();
    const std::size_t y = supp[rng.next() % supp.size()];
    const std::uint64_t k = (rng.next() & 15U);
    if (k == 0 || k == 15) continue;  // keep zeta strictly inside (0, 1)
    const Scalar zeta =
        j.mode() == Mode::kRational
            ? Scalar::rational(static_cast<long long>(k), 16)
            : Scalar::real(static_cast<double>(k) / 16.0);
    j = split_outcome(j, y, zeta);
  }
  return j;
}

}  // namespace pml

#endif  // PML_ORACLES_HPP_
