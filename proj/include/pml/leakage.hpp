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
#ifndef PML_LEAKAGE_HPP_
#define PML_LEAKAGE_HPP_

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "pml/model.hpp"

namespace pml {

// Pointwise maximal leakage of a single outcome, as the ratio exp(l(X->y)).
inline Scalar pml(const Joint& joint, std::size_t y) {
  joint.require_y_supported(y);
  Scalar best = info_density(joint, 0, y);
  for (std::size_t x = 1; x < joint.num_x(); ++x) {
    const Scalar d = info_density(joint, x, y);
    if (d > best) best = d;
  }
  return best;
}

// Every supported secret attaining pml(joint, y).  The full argmax set is
// needed for the composition equality condition and the EML=>PML check.
inline std::vector<std::size_t> pml_argmax(const Joint& joint, std::size_t y) {
  const Scalar best = pml(joint, y);
  std::vector<std::size_t> arg;
  for (std::size_t x = 0; x < joint.num_x(); ++x) {
    if (info_density(joint, x, y) == best) arg.push_back(x);
  }
  return arg;
}

// The random variable l(X->Y): one entry per supported outcome.
struct LeakageDistribution {
  struct Entry {
    std::size_t y;
    Scalar prob;   // P_Y(y)
    Scalar ratio;  // exp(l(X->y))
  };
  std::vector<Entry> entries;  // sorted by ratio descending, ties by y index
};

inline LeakageDistribution leakage_distribution(const Joint& joint) {
  LeakageDistribution dist;
  for (std::size_t y : joint.supp_y()) {
    dist.entries.push_back({y, joint.output_marginal()[y], pml(joint, y)});
  }
  std::stable_sort(dist.entries.begin(), dist.entries.end(),
                   [](const LeakageDistribution::Entry& a,
                      const LeakageDistribution::Entry& b) {
                     if (a.ratio != b.ratio) return a.ratio > b.ratio;
                     return a.y < b.y;
                   });
  return dist;
}

// Conditional PML l(X->y | z) for side information Z released through
// channel_z and an observation channel whose rows are indexed (x, z) in
// row-major order: row x * |Z| + z.
inline Scalar conditional_pml(const Prior& prior, const Channel& channel_z,
                              const Channel& channel_y, std::size_t y,
                              std::size_t z) {
  const Joint jz = validate_model(prior, channel_z);
  const std::size_t nz = channel_z.num_y();
  if (channel_y.rows.size() != jz.num_x() * nz) {
    throw ShapeMismatch("observation channel must have one row per (x, z); "
                        "expected " + std::to_string(jz.num_x() * nz) +
                        " rows, got " + std::to_string(channel_y.rows.size()));
  }
  if (z >= nz) throw OutOfSupport("unknown side-information index " +
                                  std::to_string(z));
  jz.require_y_supported(z);
  if (y >= channel_y.num_y()) {
    throw OutOfSupport("unknown outcome index " + std::to_string(y));
  }

  const std::vector<Scalar> post_z = posterior(jz, z);
  Scalar p_y_given_z = Scalar::zero(prior.mode);
  for (std::size_t x = 0; x < jz.num_x(); ++x) {
    p_y_given_z += post_z[x] * channel_y.rows[x * nz + z][y];
  }
  if (p_y_given_z.is_zero()) {
    throw OutOfSupport("outcome \"" + channel_y.labels_y[y] +
                       "\" has zero probability given \"" +
                       channel_z.labels_y[z] + "\"");
  }
  bool found = false;
  Scalar best = Scalar::zero(prior.mode);
  for (std::size_t x = 0; x < jz.num_x(); ++x) {
    if (post_z[x].is_zero()) continue;  // quantifier is over supp(P_{X|Z=z})
    const Scalar r = channel_y.rows[x * nz + z][y] / p_y_given_z;
    if (!found || r > best) {
      best = r;
      found = true;
    }
  }
  return best;
}

// Leakage of an output event, optionally with a fractional boundary outcome.
inline Scalar event_leakage(const Joint& joint, const Event& e) {
  if (e.empty()) throw EmptyEvent("event has no outcomes");
  const Mode mode = joint.mode();
  if (e.split) {
    const Scalar& zeta = e.split->zeta;
    if (zeta <= Scalar::zero(mode) || zeta > Scalar::one(mode)) {
      throw InvalidZeta("split weight must lie in (0, 1]");
    }
    if (e.members.count(e.split->y) > 0) {
      throw InvalidZeta("split outcome \"" + joint.y_label(e.split->y) +
                        "\" is already an event member");
    }
  }
  Scalar mass = Scalar::zero(mode);
  for (std::size_t y : e.members) {
    joint.require_y_supported(y);
    mass += joint.output_marginal()[y];
  }
  if (e.split) {
    joint.require_y_supported(e.split->y);
    mass += e.split->zeta * joint.output_marginal()[e.split->y];
  }
  if (mass.is_zero()) {
    throw ZeroProbabilityEvent("event has zero probability");
  }
  Scalar best = Scalar::zero(mode);
  for (std::size_t x = 0; x < joint.num_x(); ++x) {
    Scalar cond = Scalar::zero(mode);
    for (std::size_t y : e.members) cond += joint.channel().at(x, y);
    if (e.split) cond += e.split->zeta * joint.channel().at(x, e.split->y);
    const Scalar r = cond / mass;
    if (x == 0 || r > best) best = r;
  }
  return best;
}

// exp(L(P_{Y|X})) = sum_y max_x P_{Y|X=x}(y); prior-independent.
inline Scalar maximal_leakage(const Channel& channel) {
  if (channel.rows.empty()) throw EmptySupport("channel has no rows");
  Scalar total = Scalar::zero(channel.mode);
  for (std::size_t y = 0; y < channel.num_y(); ++y) {
    Scalar colmax = channel.at(0, y);
    for (std::size_t x = 1; x < channel.num_x(); ++x) {
      if (channel.at(x, y) > colmax) colmax = channel.at(x, y);
    }
    total += colmax;
  }
  return total;
}

// exp(eps_max) = 1 / min_x P_X(x): the universal PML ceiling for this prior.
// The prior passed in is expected to be support-trimmed (as in a Joint).
inline Scalar eps_max(const Prior& prior) {
  if (prior.probs.empty()) throw EmptySupport("prior has empty support");
  Scalar pmin = prior.probs[0];
  for (const Scalar& p : prior.probs) {
    if (p.is_zero()) continue;
    if (p < pmin || pmin.is_zero()) pmin = p;
  }
  return Scalar::one(prior.mode) / pmin;
}

}  // namespace pml

#endif  // PML_LEAKAGE_HPP_
