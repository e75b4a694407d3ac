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
#ifndef PML_GUARANTEES_HPP_
#define PML_GUARANTEES_HPP_

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "pml/channel_ops.hpp"
#include "pml/leakage.hpp"
#include "pml/model.hpp"

namespace pml {

enum class GuaranteeKind { kPml, kDeltaPml, kEml };

inline std::string guarantee_kind_name(GuaranteeKind k) {
  switch (k) {
    case GuaranteeKind::kPml:
      return "eps-PML";
    case GuaranteeKind::kDeltaPml:
      return "(eps,delta)-PML";
    case GuaranteeKind::kEml:
      return "(eps,delta)-EML";
  }
  return "?";
}

struct GuaranteeReport {
  GuaranteeKind kind = GuaranteeKind::kPml;
  Scalar epsilon_ratio;
  Scalar delta;
  bool holds = false;
  // Worst single outcome (PML kinds) or worst event (EML kind).  EML witness
  // indices refer to the reduced channel of the audited joint.
  std::optional<std::size_t> witness_y;
  std::optional<Event> witness_event;
  std::string diagnostic;
};

// Almost-sure guarantee: max_y pml(y) <= eps.
inline GuaranteeReport check_eps_pml(const Joint& joint,
                                     const Scalar& eps_ratio) {
  const Mode mode = joint.mode();
  if (eps_ratio < Scalar::one(mode)) {
    throw InvalidEpsilon("epsilon ratio must be at least 1");
  }
  GuaranteeReport r;
  r.kind = GuaranteeKind::kPml;
  r.epsilon_ratio = eps_ratio;
  r.delta = Scalar::zero(mode);
  std::size_t worst = joint.supp_y().front();
  Scalar worst_ratio = pml(joint, worst);
  for (std::size_t y : joint.supp_y()) {
    const Scalar ratio = pml(joint, y);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst = y;
    }
  }
  r.witness_y = worst;
  r.holds = worst_ratio <= eps_ratio;
  r.diagnostic = "max pml ratio " + worst_ratio.str() + " at outcome \"" +
                 joint.y_label(worst) + "\"";
  return r;
}

struct MinEpsResult {
  Scalar eps_ratio;
  // Outcomes excluded from the epsilon bound, highest leakage first.
  std::vector<std::size_t> excluded;
};

// Smallest ratio r with P_Y-mass of {y : pml(y) > r} at most delta.  Whole
// equal-ratio groups are excluded at a time (partial exclusion cannot lower
// the bound); within the ordering, higher leakage goes first, then lower
// index.
inline MinEpsResult min_eps_for_delta_pml(const Joint& joint,
                                          const Scalar& delta) {
  const Mode mode = joint.mode();
  if (delta.is_negative() || delta > Scalar::one(mode)) {
    throw InvalidDelta("delta must lie in [0, 1]");
  }
  const LeakageDistribution dist = leakage_distribution(joint);

  MinEpsResult out;
  out.eps_ratio = Scalar::one(mode);
  Scalar cum = Scalar::zero(mode);
  std::size_t i = 0;
  while (i < dist.entries.size()) {
    // Entries are sorted descending, so [i, j) is one equal-ratio group.
    std::size_t j = i;
    Scalar group_mass = Scalar::zero(mode);
    while (j < dist.entries.size() &&
           dist.entries[j].ratio == dist.entries[i].ratio) {
      group_mass += dist.entries[j].prob;
      ++j;
    }
    if (dist.entries[i].ratio > Scalar::one(mode) &&
        cum + group_mass <= delta) {
      for (std::size_t k = i; k < j; ++k) {
        out.excluded.push_back(dist.entries[k].y);
      }
      cum += group_mass;
      i = j;
      continue;
    }
    out.eps_ratio = dist.entries[i].ratio;
    break;
  }
  return out;
}

// Tail-bound guarantee: P[l(X->Y) > eps] <= delta.
inline GuaranteeReport check_eps_delta_pml(const Joint& joint,
                                           const Scalar& eps_ratio,
                                           const Scalar& delta) {
  const Mode mode = joint.mode();
  if (eps_ratio < Scalar::one(mode)) {
    throw InvalidEpsilon("epsilon ratio must be at least 1");
  }
  if (delta.is_negative() || delta > Scalar::one(mode)) {
    throw InvalidDelta("delta must lie in [0, 1]");
  }
  GuaranteeReport r;
  r.kind = GuaranteeKind::kDeltaPml;
  r.epsilon_ratio = eps_ratio;
  r.delta = delta;
  Scalar tail = Scalar::zero(mode);
  std::optional<std::size_t> worst;
  Scalar worst_ratio = Scalar::one(mode);
  for (std::size_t y : joint.supp_y()) {
    const Scalar ratio = pml(joint, y);
    if (ratio > eps_ratio) tail += joint.output_marginal()[y];
    if (!worst || ratio > worst_ratio) {
      worst_ratio = ratio;
      worst = y;
    }
  }
  r.witness_y = worst;
  r.holds = tail <= delta;
  r.diagnostic = "tail mass above epsilon is " + tail.str();
  return r;
}

namespace detail {

struct HxResult {
  Scalar ratio;
  Event event;  // indices into the reduced output alphabet
};

// Extreme-point solution of the least-private-event program for one secret:
// sort outcomes by information density, take the smallest prefix of mass at
// least delta with a fractional boundary weight.  O(|Y| log |Y|).
inline HxResult eml_h_x_on_reduced(const Joint& reduced, std::size_t x,
                                   const Scalar& delta) {
  const Mode mode = reduced.mode();
  std::vector<std::size_t> order(reduced.supp_y());
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     const Scalar da = info_density(reduced, x, a);
                     const Scalar db = info_density(reduced, x, b);
                     if (da != db) return da > db;
                     return a < b;
                   });
  HxResult out;
  out.ratio = Scalar::zero(mode);
  Scalar mass = Scalar::zero(mode);
  Scalar cond = Scalar::zero(mode);
  for (std::size_t yi : order) {
    const Scalar py = reduced.output_marginal()[yi];
    if (mass + py < delta) {
      mass += py;
      cond += reduced.channel().at(x, yi);
      out.event.members.insert(yi);
      continue;
    }
    const Scalar zeta = (delta - mass) / py;
    if (zeta == Scalar::one(mode)) {
      out.event.members.insert(yi);
    } else {
      out.event.split = Event::Split{yi, zeta};
    }
    out.ratio = (cond + zeta * reduced.channel().at(x, yi)) / delta;
    return out;
  }
  // Unreachable for delta <= 1: total mass is 1.
  out.ratio = Scalar::one(mode);
  return out;
}

inline void require_eml_delta(const Scalar& delta, Mode mode) {
  if (delta <= Scalar::zero(mode)) {
    throw InvalidDelta("delta must be positive (delta = 0 is the eps-PML "
                       "guarantee; use check_eps_pml)");
  }
  if (delta > Scalar::one(mode)) {
    throw InvalidDelta("delta must lie in (0, 1]");
  }
}

}  // namespace detail

// h_x(P_{Y_r|X}, delta) on the reduced channel of joint.
inline Scalar eml_h_x(const Joint& joint, std::size_t x, const Scalar& delta) {
  detail::require_eml_delta(delta, joint.mode());
  if (x >= joint.num_x()) {
    throw OutOfSupport("unknown secret index " + std::to_string(x));
  }
  return detail::eml_h_x_on_reduced(reduced_joint(joint), x, delta).ratio;
}

struct EmlKappaResult {
  Scalar kappa;
  std::size_t worst_x = 0;              // lowest-index maximizer
  std::vector<std::size_t> maximizers;  // all x attaining kappa
  Event worst_event;                    // over the reduced output alphabet
  ReducedChannelMap reduction;
  std::vector<Scalar> h_values;         // h_x per secret
};

// kappa(delta) = max_x h_x on the reduced channel, with the least-private
// event witness.  Multiple maximizing x are reported; the witness follows
// the lowest-index one.
inline EmlKappaResult eml_kappa(const Joint& joint, const Scalar& delta) {
  detail::require_eml_delta(delta, joint.mode());
  EmlKappaResult out;
  out.reduction = reduce(joint);
  Prior p = joint.prior();
  Channel reduced_channel = out.reduction.reduced;
  reduced_channel.labels_x = p.labels_x;
  const Joint reduced = validate_model(p, reduced_channel);

  for (std::size_t x = 0; x < reduced.num_x(); ++x) {
    detail::HxResult hx = detail::eml_h_x_on_reduced(reduced, x, delta);
    out.h_values.push_back(hx.ratio);
    if (x == 0 || hx.ratio > out.kappa) {
      out.kappa = hx.ratio;
      out.worst_x = x;
      out.worst_event = hx.event;
    }
  }
  for (std::size_t x = 0; x < out.h_values.size(); ++x) {
    if (out.h_values[x] == out.kappa) out.maximizers.push_back(x);
  }
  return out;
}

// Piecewise description of delta -> kappa(delta): one breakpoint at every
// cumulative prefix mass of every secret's density ordering, plus delta = 1.
struct KappaCurve {
  struct Breakpoint {
    Scalar delta;
    Scalar kappa;
  };
  std::vector<Breakpoint> breakpoints;  // ascending in delta
};

inline KappaCurve kappa_curve(const Joint& joint) {
  const Joint reduced = reduced_joint(joint);
  const Mode mode = joint.mode();
  std::vector<Scalar> deltas;
  for (std::size_t x = 0; x < reduced.num_x(); ++x) {
    std::vector<std::size_t> order(reduced.supp_y());
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       const Scalar da = info_density(reduced, x, a);
                       const Scalar db = info_density(reduced, x, b);
                       if (da != db) return da > db;
                       return a < b;
                     });
    Scalar cum = Scalar::zero(mode);
    for (std::size_t yi : order) {
      cum += reduced.output_marginal()[yi];
      deltas.push_back(cum);
    }
  }
  std::sort(deltas.begin(), deltas.end());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
  KappaCurve curve;
  for (const Scalar& d : deltas) {
    curve.breakpoints.push_back({d, eml_kappa(joint, d).kappa});
  }
  return curve;
}

// (eps, delta)-EML check; delta = 0 is by definition the eps-PML guarantee.
inline GuaranteeReport check_eps_delta_eml(const Joint& joint,
                                           const Scalar& eps_ratio,
                                           const Scalar& delta) {
  const Mode mode = joint.mode();
  if (eps_ratio < Scalar::one(mode)) {
    throw InvalidEpsilon("epsilon ratio must be at least 1");
  }
  if (delta.is_negative() || delta > Scalar::one(mode)) {
    throw InvalidDelta("delta must lie in [0, 1]");
  }
  if (delta.is_zero()) {
    GuaranteeReport r = check_eps_pml(joint, eps_ratio);
    r.kind = GuaranteeKind::kEml;
    return r;
  }
  const EmlKappaResult k = eml_kappa(joint, delta);
  GuaranteeReport r;
  r.kind = GuaranteeKind::kEml;
  r.epsilon_ratio = eps_ratio;
  r.delta = delta;
  r.holds = k.kappa <= eps_ratio;
  r.witness_event = k.worst_event;
  std::string alts;
  for (std::size_t x : k.maximizers) {
    if (x == k.worst_x) continue;
    alts += alts.empty() ? " (also attained by" : ",";
    alts += " \"" + joint.x_label(x) + "\"";
  }
  if (!alts.empty()) alts += ")";
  r.diagnostic = "kappa(delta) = " + k.kappa.str() + ", worst secret \"" +
                 joint.x_label(k.worst_x) + "\"" + alts +
                 "; witness indices refer to the reduced channel";
  return r;
}

struct EmlImpliesPmlResult {
  bool condition_met = false;  // one x maximizes density on every bad outcome
  bool implies_pml = false;    // tail mass of the bad set is at most delta
  Scalar tail_mass;
  std::optional<std::size_t> common_x;
  std::string message;
};

// Sufficient condition under which an (eps, delta)-EML guarantee transfers
// to (eps, delta)-PML: a single secret dominates every outcome leaking more
// than eps.
inline EmlImpliesPmlResult eml_implies_pml_check(const Joint& joint,
                                                 const Scalar& eps_ratio,
                                                 const Scalar& delta) {
  const Mode mode = joint.mode();
  if (eps_ratio < Scalar::one(mode)) {
    throw InvalidEpsilon("epsilon ratio must be at least 1");
  }
  EmlImpliesPmlResult out;
  out.tail_mass = Scalar::zero(mode);
  std::vector<std::size_t> bad;
  for (std::size_t y : joint.supp_y()) {
    if (pml(joint, y) > eps_ratio) {
      bad.push_back(y);
      out.tail_mass += joint.output_marginal()[y];
    }
  }
  if (bad.empty()) {
    out.condition_met = true;
    out.implies_pml = true;
    out.message = "no outcome leaks more than epsilon";
    return out;
  }
  std::vector<std::size_t> common = pml_argmax(joint, bad.front());
  for (std::size_t i = 1; i < bad.size() && !common.empty(); ++i) {
    const std::vector<std::size_t> arg = pml_argmax(joint, bad[i]);
    std::vector<std::size_t> inter;
    std::set_intersection(common.begin(), common.end(), arg.begin(), arg.end(),
                          std::back_inserter(inter));
    common = std::move(inter);
  }
  if (common.empty()) {
    out.message = "condition not met: no single secret maximizes the "
                  "information density on every high-leakage outcome";
    return out;
  }
  out.condition_met = true;
  out.common_x = common.front();
  out.implies_pml = out.tail_mass <= delta;
  out.message = "secret \"" + joint.x_label(common.front()) +
                "\" dominates all high-leakage outcomes; their mass is " +
                out.tail_mass.str();
  return out;
}

}  // namespace pml

#endif  // PML_GUARANTEES_HPP_
