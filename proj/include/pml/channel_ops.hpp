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
#ifndef PML_CHANNEL_OPS_HPP_
#define PML_CHANNEL_OPS_HPP_

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pml/leakage.hpp"
#include "pml/model.hpp"

namespace pml {

namespace detail {

// Canonical key of a posterior column: exact normal form in rational mode,
// rounded decimal key in float mode.
inline std::string posterior_key(const std::vector<Scalar>& post) {
  std::string key;
  for (const Scalar& p : post) {
    if (p.is_rational()) {
      key += p.str();
    } else {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.9e", p.flt());
      key += buf;
    }
    key += '|';
  }
  return key;
}

inline BigInt floor_rational(const Rational& q) {
  // Nonnegative operands: truncation equals floor.
  return boost::multiprecision::numerator(q) /
         boost::multiprecision::denominator(q);
}

}  // namespace detail

// Two supported outcomes are similar iff their posteriors coincide, i.e. the
// channel columns are scalar multiples of each other.
inline bool are_similar(const Joint& joint, std::size_t y1, std::size_t y2) {
  joint.require_y_supported(y1);
  joint.require_y_supported(y2);
  const auto p1 = posterior(joint, y1);
  const auto p2 = posterior(joint, y2);
  for (std::size_t x = 0; x < p1.size(); ++x) {
    if (!p1[x].approx_equals(p2[x])) return false;
  }
  return true;
}

struct ReducedChannelMap {
  Channel reduced;                                // no similar pair remains
  std::vector<std::vector<std::size_t>> merge_map;  // reduced y -> originals
  std::vector<std::size_t> dropped;               // zero-mass outcomes
};

// Merges similar supported outcomes (columns added) and drops zero-mass
// outcomes.  Classes keep the order of their first member.
inline ReducedChannelMap reduce(const Joint& joint) {
  ReducedChannelMap out;
  out.reduced.mode = joint.mode();
  out.reduced.labels_x = joint.prior().labels_x;
  out.reduced.rows.assign(joint.num_x(), {});

  std::map<std::string, std::size_t> class_of;
  for (std::size_t y = 0; y < joint.num_y(); ++y) {
    if (!joint.y_supported(y)) {
      out.dropped.push_back(y);
      continue;
    }
    const std::string key = detail::posterior_key(posterior(joint, y));
    auto it = class_of.find(key);
    if (it == class_of.end()) {
      const std::size_t idx = out.merge_map.size();
      class_of.emplace(key, idx);
      out.merge_map.push_back({y});
      out.reduced.labels_y.push_back(joint.y_label(y));
      for (std::size_t x = 0; x < joint.num_x(); ++x) {
        out.reduced.rows[x].push_back(joint.channel().at(x, y));
      }
    } else {
      const std::size_t idx = it->second;
      out.merge_map[idx].push_back(y);
      out.reduced.labels_y[idx] += "+" + joint.y_label(y);
      for (std::size_t x = 0; x < joint.num_x(); ++x) {
        out.reduced.rows[x][idx] += joint.channel().at(x, y);
      }
    }
  }
  return out;
}

inline Joint reduced_joint(const Joint& joint) {
  ReducedChannelMap m = reduce(joint);
  Prior p = joint.prior();
  m.reduced.labels_x = p.labels_x;
  return validate_model(p, m.reduced);
}

// Splits outcome y into two similar outcomes with weights zeta and 1 - zeta.
// The result lies in the same equivalence class: reducing it recovers the
// reduced input channel.
inline Joint split_outcome(const Joint& joint, std::size_t y,
                           const Scalar& zeta) {
  joint.require_y_supported(y);
  const Mode mode = joint.mode();
  if (zeta <= Scalar::zero(mode) || zeta >= Scalar::one(mode)) {
    throw InvalidZeta("split weight must lie strictly in (0, 1)");
  }
  Channel c;
  c.mode = mode;
  c.labels_x = joint.prior().labels_x;
  for (std::size_t yy = 0; yy < joint.num_y(); ++yy) {
    if (yy == y) {
      c.labels_y.push_back(joint.y_label(yy) + ".a");
      c.labels_y.push_back(joint.y_label(yy) + ".b");
    } else {
      c.labels_y.push_back(joint.y_label(yy));
    }
  }
  const Scalar one_minus = Scalar::one(mode) - zeta;
  for (std::size_t x = 0; x < joint.num_x(); ++x) {
    std::vector<Scalar> row;
    for (std::size_t yy = 0; yy < joint.num_y(); ++yy) {
      if (yy == y) {
        row.push_back(zeta * joint.channel().at(x, yy));
        row.push_back(one_minus * joint.channel().at(x, yy));
      } else {
        row.push_back(joint.channel().at(x, yy));
      }
    }
    c.rows.push_back(std::move(row));
  }
  return validate_model(joint.prior(), c);
}

namespace detail {

inline void require_stochastic_kernel(const Channel& k, const char* what) {
  for (std::size_t r = 0; r < k.rows.size(); ++r) {
    if (k.rows[r].size() != k.labels_y.size()) {
      throw ShapeMismatch(std::string(what) + " row " + std::to_string(r) +
                          " has wrong width");
    }
    for (const Scalar& s : k.rows[r]) {
      if (s.is_negative()) {
        throw NegativeEntry(std::string(what) + " has a negative entry");
      }
    }
    if (!sums_to_one(k.rows[r], k.mode)) {
      throw NonStochasticRow(std::string(what) + " row " + std::to_string(r) +
                             " does not sum to 1");
    }
  }
}

}  // namespace detail

// P_{Z|X} = P_{Z|Y} after P_{Y|X}; rows of k are indexed by the full output
// alphabet of joint (including zero-mass outcomes).
inline Joint postprocess(const Joint& joint, const Channel& k) {
  if (k.mode != joint.mode()) {
    throw ShapeMismatch("post-processing kernel uses a different scalar mode");
  }
  if (k.rows.size() != joint.num_y()) {
    throw ShapeMismatch("post-processing kernel has " +
                        std::to_string(k.rows.size()) + " rows, expected " +
                        std::to_string(joint.num_y()));
  }
  detail::require_stochastic_kernel(k, "post-processing kernel");
  Channel c;
  c.mode = joint.mode();
  c.labels_x = joint.prior().labels_x;
  c.labels_y = k.labels_y;
  for (std::size_t x = 0; x < joint.num_x(); ++x) {
    std::vector<Scalar> row(k.labels_y.size(), Scalar::zero(c.mode));
    for (std::size_t y = 0; y < joint.num_y(); ++y) {
      for (std::size_t z = 0; z < k.labels_y.size(); ++z) {
        row[z] += joint.channel().at(x, y) * k.rows[y][z];
      }
    }
    c.rows.push_back(std::move(row));
  }
  return validate_model(joint.prior(), c);
}

// Adaptive two-stage composition.  `second` maps a first-stage outcome label
// to the kernel P_{Z|X,Y=y} (rows over the same x alphabet as `prior`).  The
// output alphabet is the dense product; zero-mass pairs stay flagged
// out-of-support in the returned Joint.
inline Joint compose_adaptive(const Prior& prior, const Channel& first,
                              const std::map<std::string, Channel>& second) {
  const Joint j1 = validate_model(prior, first);
  if (second.empty()) throw MissingStage("no second-stage channels given");
  const std::vector<std::string>& labels_z = second.begin()->second.labels_y;
  for (const auto& [label, stage] : second) {
    if (stage.mode != prior.mode) {
      throw ShapeMismatch("stage \"" + label +
                          "\" uses a different scalar mode");
    }
    if (stage.labels_y != labels_z) {
      throw ShapeMismatch("stage \"" + label +
                          "\" has a mismatched output alphabet");
    }
    if (stage.rows.size() != prior.probs.size()) {
      throw ShapeMismatch("stage \"" + label + "\" has " +
                          std::to_string(stage.rows.size()) +
                          " rows, expected one per secret (" +
                          std::to_string(prior.probs.size()) + ")");
    }
    detail::require_stochastic_kernel(stage, "second-stage channel");
  }
  for (std::size_t y : j1.supp_y()) {
    if (second.find(j1.y_label(y)) == second.end()) {
      throw MissingStage("no second-stage channel for outcome \"" +
                         j1.y_label(y) + "\"");
    }
  }

  const Mode mode = prior.mode;
  const std::size_t nz = labels_z.size();
  Channel c;
  c.mode = mode;
  c.labels_x = prior.labels_x;
  for (std::size_t y = 0; y < first.num_y(); ++y) {
    for (std::size_t z = 0; z < nz; ++z) {
      c.labels_y.push_back(first.labels_y[y] + "," + labels_z[z]);
    }
  }
  // Uniform placeholder stage for zero-mass first-stage outcomes: the factor
  // P_{Y|X}(y) is 0 there, so the placeholder never influences probabilities.
  const Scalar unif =
      Scalar::one(mode) / (mode == Mode::kRational
                               ? Scalar::rational(static_cast<long long>(nz))
                               : Scalar::real(static_cast<double>(nz)));
  for (std::size_t xi = 0; xi < prior.probs.size(); ++xi) {
    std::vector<Scalar> row;
    row.reserve(first.num_y() * nz);
    for (std::size_t y = 0; y < first.num_y(); ++y) {
      const auto it = second.find(first.labels_y[y]);
      for (std::size_t z = 0; z < nz; ++z) {
        const Scalar stage_p =
            it != second.end() ? it->second.rows[xi][z] : unif;
        row.push_back(first.rows[xi][y] * stage_p);
      }
    }
    c.rows.push_back(std::move(row));
  }
  return validate_model(prior, c);
}

// The shattering channel of a prior: secret x is broken into about
// P_X(x)/p* letters, each of posterior mass p* = min_x P_X(x).
inline Channel shattering_channel(const Prior& prior_in) {
  // Work on the trimmed support.
  Prior prior;
  prior.mode = prior_in.mode;
  for (std::size_t x = 0; x < prior_in.probs.size(); ++x) {
    if (prior_in.probs[x].is_zero()) continue;
    prior.labels_x.push_back(prior_in.labels_x[x]);
    prior.probs.push_back(prior_in.probs[x]);
  }
  if (prior.probs.empty()) throw EmptySupport("prior has empty support");
  const Mode mode = prior.mode;
  Scalar pstar = prior.probs[0];
  for (const Scalar& p : prior.probs) {
    if (p < pstar) pstar = p;
  }

  Channel c;
  c.mode = mode;
  c.labels_x = prior.labels_x;
  struct Letter {
    std::size_t x;
    Scalar prob;  // P_{U|X=x}(u)
  };
  std::vector<Letter> letters;
  for (std::size_t x = 0; x < prior.probs.size(); ++x) {
    const Scalar full = pstar / prior.probs[x];  // mass p* per full letter
    std::size_t nfull;
    if (mode == Mode::kRational) {
      const Rational k = (prior.probs[x] / pstar).rat();
      nfull = static_cast<std::size_t>(detail::floor_rational(k));
    } else {
      nfull = static_cast<std::size_t>(
          std::floor(prior.probs[x].flt() / pstar.flt() + kFloatRelTol));
    }
    Scalar used = Scalar::zero(mode);
    for (std::size_t j = 0; j < nfull; ++j) {
      letters.push_back({x, full});
      used += full;
    }
    const Scalar rem = Scalar::one(mode) - used;
    if (!rem.is_zero() && !rem.is_negative()) {
      letters.push_back({x, rem});
    }
    std::size_t count = nfull + ((!rem.is_zero() && !rem.is_negative()) ? 1 : 0);
    for (std::size_t j = 0; j < count; ++j) {
      c.labels_y.push_back(prior.labels_x[x] + ":" + std::to_string(j + 1));
    }
  }
  for (std::size_t x = 0; x < prior.probs.size(); ++x) {
    std::vector<Scalar> row;
    row.reserve(letters.size());
    for (const Letter& u : letters) {
      row.push_back(u.x == x ? u.prob : Scalar::zero(mode));
    }
    c.rows.push_back(std::move(row));
  }
  return c;
}

struct ComposedGuarantee {
  Scalar eps_ratio;
  Scalar delta;
};

namespace detail {

inline void check_guarantee_params(const Scalar& eps_ratio,
                                   const Scalar& delta) {
  const Mode mode = eps_ratio.mode();
  if (eps_ratio < Scalar::one(mode)) {
    throw InvalidEpsilon("epsilon ratio must be at least 1");
  }
  if (delta.is_negative() || delta > Scalar::one(mode)) {
    throw InvalidDelta("delta must lie in [0, 1]");
  }
}

// A tail bound above 1 is vacuous; cap it so composed guarantees stay valid
// inputs for the checkers.
inline Scalar clamp_delta(const Scalar& delta) {
  const Scalar one = Scalar::one(delta.mode());
  return delta > one ? one : delta;
}

}  // namespace detail

// Two-stage PML composition rules (epsilon composes multiplicatively as a
// ratio, i.e. additively in the log domain).
//   part 1: both stages pure -> (e1*e2, 0)
//   part 2: (e1*e2, d1 + d2 - d1*d2)
//   part 3: (e1*e2, d1 + d2)
inline ComposedGuarantee compose_pml_bounds(int part, const Scalar& eps1,
                                            const Scalar& delta1,
                                            const Scalar& eps2,
                                            const Scalar& delta2) {
  detail::check_guarantee_params(eps1, delta1);
  detail::check_guarantee_params(eps2, delta2);
  const Scalar eps = eps1 * eps2;
  switch (part) {
    case 1:
      if (!delta1.is_zero() || !delta2.is_zero()) {
        throw InvalidDelta("part 1 requires delta1 = delta2 = 0");
      }
      return {eps, delta1};
    case 2:
      return {eps, detail::clamp_delta(delta1 + delta2 - delta1 * delta2)};
    case 3:
      return {eps, detail::clamp_delta(delta1 + delta2)};
    default:
      throw ValidationError("unknown PML composition part " +
                            std::to_string(part));
  }
}

// Two-stage EML composition rules.
//   part 4 (delta2 = 0 only): first stage (e1,d1)-EML, second stage e2-PML
//           for every fixed y -> (e1*e2, d1)-EML.
//   part 5: ratio = d2/(d1+d2) * eps_max + e1*e2, delta = d1 + d2.
inline ComposedGuarantee compose_eml_bounds(int part, const Scalar& eps1,
                                            const Scalar& delta1,
                                            const Scalar& eps2,
                                            const Scalar& delta2,
                                            const Prior& prior) {
  detail::check_guarantee_params(eps1, delta1);
  detail::check_guarantee_params(eps2, delta2);
  switch (part) {
    case 4:
      if (!delta2.is_zero()) {
        throw InvalidDelta(
            "part 4 emits a blanket guarantee only for delta2 = 0; use the "
            "per-event condition checker for delta2 > 0");
      }
      return {eps1 * eps2, delta1};
    case 5: {
      const Scalar dsum = delta1 + delta2;
      if (dsum.is_zero()) return {eps1 * eps2, dsum};
      const Scalar ratio =
          delta2 / dsum * eps_max(prior) + eps1 * eps2;
      return {ratio, detail::clamp_delta(dsum)};
    }
    default:
      throw ValidationError("unknown EML composition part " +
                            std::to_string(part));
  }
}

// Part-4 event condition for delta2 > 0: for a composed event given as pair
// indices (y * |Z| + z), returns min over involved first-stage outcomes y of
// P_{Z|Y=y}(E_Z(y)).  The part-4 guarantee extends to this event whenever
// delta2 does not exceed the returned value.
inline Scalar part4_event_condition_max_delta2(
    const Prior& prior, const Channel& first,
    const std::map<std::string, Channel>& second,
    const std::vector<std::size_t>& pair_indices) {
  const Joint j1 = validate_model(prior, first);
  if (second.empty()) throw MissingStage("no second-stage channels given");
  const std::size_t nz = second.begin()->second.labels_y.size();
  if (pair_indices.empty()) throw EmptyEvent("event has no outcomes");

  std::map<std::size_t, std::vector<std::size_t>> z_of_y;
  for (std::size_t p : pair_indices) {
    z_of_y[p / nz].push_back(p % nz);
  }
  const Mode mode = prior.mode;
  // Stage rows are indexed by the untrimmed x alphabet; map trimmed indices.
  std::vector<std::size_t> untrimmed;
  for (std::size_t xi = 0; xi < prior.probs.size(); ++xi) {
    if (!prior.probs[xi].is_zero()) untrimmed.push_back(xi);
  }
  bool found = false;
  Scalar best = Scalar::zero(mode);
  for (const auto& [y, zs] : z_of_y) {
    if (!j1.y_supported(y)) continue;
    const auto it = second.find(j1.y_label(y));
    if (it == second.end()) {
      throw MissingStage("no second-stage channel for outcome \"" +
                         j1.y_label(y) + "\"");
    }
    const auto post = posterior(j1, y);
    Scalar mass = Scalar::zero(mode);
    for (std::size_t z : zs) {
      for (std::size_t x = 0; x < j1.num_x(); ++x) {
        mass += post[x] * it->second.rows[untrimmed[x]][z];
      }
    }
    if (!found || mass < best) {
      best = mass;
      found = true;
    }
  }
  if (!found) throw ZeroProbabilityEvent("event has zero probability");
  return best;
}

}  // namespace pml

#endif  // PML_CHANNEL_OPS_HPP_
