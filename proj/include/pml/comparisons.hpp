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
#ifndef PML_COMPARISONS_HPP_
#define PML_COMPARISONS_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pml/guarantees.hpp"
#include "pml/leakage.hpp"
#include "pml/model.hpp"

namespace pml {

// A measure value that may be infinite.  Infinity is a first-class flag (not
// a float infinity) so rational mode stays closed under arithmetic.
struct MeasureValue {
  Scalar value;
  bool infinite = false;

  static MeasureValue finite(Scalar v) { return {std::move(v), false}; }
  static MeasureValue inf(Mode mode) { return {Scalar::zero(mode), true}; }

  std::string str() const { return infinite ? "inf" : value.str(); }
};

// Worst likelihood ratio between any two rows; prior-free.
inline MeasureValue ldp_epsilon(const Channel& channel) {
  const Mode mode = channel.mode;
  MeasureValue out = MeasureValue::finite(Scalar::one(mode));
  for (std::size_t y = 0; y < channel.num_y(); ++y) {
    for (std::size_t x = 0; x < channel.num_x(); ++x) {
      if (channel.at(x, y).is_zero()) continue;
      for (std::size_t x2 = 0; x2 < channel.num_x(); ++x2) {
        if (channel.at(x2, y).is_zero()) {
          return MeasureValue::inf(mode);
        }
        const Scalar r = channel.at(x, y) / channel.at(x2, y);
        if (!out.infinite && r > out.value) out.value = r;
      }
    }
  }
  return out;
}

// P_{Y|X=x}(y) <= eps * P_{Y|X=x'}(y) + delta for all triples.
inline bool approx_ldp_holds(const Channel& channel, const Scalar& eps_ratio,
                             const Scalar& delta) {
  const Mode mode = channel.mode;
  if (eps_ratio < Scalar::one(mode)) {
    throw InvalidEpsilon("epsilon ratio must be at least 1");
  }
  if (delta.is_negative() || delta > Scalar::one(mode)) {
    throw InvalidDelta("delta must lie in [0, 1]");
  }
  for (std::size_t y = 0; y < channel.num_y(); ++y) {
    for (std::size_t x = 0; x < channel.num_x(); ++x) {
      for (std::size_t x2 = 0; x2 < channel.num_x(); ++x2) {
        if (channel.at(x, y) > eps_ratio * channel.at(x2, y) + delta) {
          return false;
        }
      }
    }
  }
  return true;
}

// Two-sided posterior-to-prior ratio bound.
inline MeasureValue lip_epsilon(const Joint& joint) {
  const Mode mode = joint.mode();
  MeasureValue out = MeasureValue::finite(Scalar::one(mode));
  for (std::size_t y : joint.supp_y()) {
    const auto post = posterior(joint, y);
    for (std::size_t x = 0; x < joint.num_x(); ++x) {
      if (post[x].is_zero()) return MeasureValue::inf(mode);
      const Scalar up = post[x] / joint.prior().probs[x];
      const Scalar down = joint.prior().probs[x] / post[x];
      const Scalar r = up > down ? up : down;
      if (r > out.value) out.value = r;
    }
  }
  return out;
}

// Posterior-to-posterior ratio bound.
inline MeasureValue ldi_epsilon(const Joint& joint) {
  const Mode mode = joint.mode();
  MeasureValue out = MeasureValue::finite(Scalar::one(mode));
  for (std::size_t y : joint.supp_y()) {
    const auto post = posterior(joint, y);
    for (std::size_t x = 0; x < joint.num_x(); ++x) {
      if (post[x].is_zero()) continue;
      for (std::size_t x2 = 0; x2 < joint.num_x(); ++x2) {
        if (post[x2].is_zero()) return MeasureValue::inf(mode);
        const Scalar r = post[x] / post[x2];
        if (r > out.value) out.value = r;
      }
    }
  }
  return out;
}

enum class LocalNotion { kLdp, kLip, kLdi };

// PML guarantee implied by an eps-LDP/LIP/LDI guarantee for this prior.
inline Scalar implied_pml_bound(LocalNotion kind, const MeasureValue& eps,
                                const Prior& prior) {
  if (eps.infinite) {
    throw InfiniteInput("cannot derive a PML bound from an infinite epsilon");
  }
  const Mode mode = prior.mode;
  const Scalar one = Scalar::one(mode);
  if (eps.value < one) throw InvalidEpsilon("epsilon ratio must be >= 1");
  Scalar pmin = prior.probs.front();
  std::size_t support = 0;
  for (const Scalar& p : prior.probs) {
    if (p.is_zero()) continue;
    ++support;
    if (p < pmin || pmin.is_zero()) pmin = p;
  }
  switch (kind) {
    case LocalNotion::kLip:
      return eps.value;
    case LocalNotion::kLdp:
      return one / (pmin + (one - pmin) / eps.value);
    case LocalNotion::kLdi: {
      const Scalar n1 =
          mode == Mode::kRational
              ? Scalar::rational(static_cast<long long>(support - 1))
              : Scalar::real(static_cast<double>(support - 1));
      return one / (pmin * (one + n1 / eps.value));
    }
  }
  throw ValidationError("unknown local privacy notion");
}

// I(X;Y) in nats.  Always at most the expected leakage E[l(X->Y)].
inline double mutual_information(const Joint& joint) {
  double mi = 0.0;
  for (std::size_t y : joint.supp_y()) {
    for (std::size_t x = 0; x < joint.num_x(); ++x) {
      const Scalar pxy = joint.prior().probs[x] * joint.channel().at(x, y);
      if (pxy.is_zero()) continue;
      mi += pxy.to_double() * info_density(joint, x, y).log_value();
    }
  }
  return mi;
}

// E[l(X->Y)] in nats.
inline double expected_leakage_nats(const Joint& joint) {
  double e = 0.0;
  for (std::size_t y : joint.supp_y()) {
    e += joint.output_marginal()[y].to_double() * pml(joint, y).log_value();
  }
  return e;
}

// Registry of convex f's with finite f(0+): keeps the bound well defined.
enum class FKind { kKl, kTv, kChi2 };

inline FKind parse_f_kind(const std::string& name) {
  if (name == "kl") return FKind::kKl;
  if (name == "tv") return FKind::kTv;
  if (name == "chi2") return FKind::kChi2;
  throw UnknownF("unknown f-information kind \"" + name +
                 "\"; known: kl, tv, chi2");
}

inline double f_eval(FKind f, double t) {
  switch (f) {
    case FKind::kKl:
      return t == 0.0 ? 0.0 : t * std::log(t);
    case FKind::kTv:
      return std::fabs(t - 1.0) / 2.0;
    case FKind::kChi2:
      return (t - 1.0) * (t - 1.0);
  }
  return 0.0;
}

// I_f = E over the product distribution of f(density).
inline double f_information(const Joint& joint, FKind f) {
  double val = 0.0;
  for (std::size_t y : joint.supp_y()) {
    for (std::size_t x = 0; x < joint.num_x(); ++x) {
      const double w = joint.prior().probs[x].to_double() *
                       joint.output_marginal()[y].to_double();
      val += w * f_eval(f, info_density(joint, x, y).to_double());
    }
  }
  return val;
}

// E_Y[max{f(exp(pml)), f(0)}], an upper bound on I_f.
inline double f_info_pml_bound(const Joint& joint, FKind f) {
  double val = 0.0;
  for (std::size_t y : joint.supp_y()) {
    const double fy = f_eval(f, pml(joint, y).to_double());
    val += joint.output_marginal()[y].to_double() *
           std::max(fy, f_eval(f, 0.0));
  }
  return val;
}

// T(X;Y): expected total variation between posterior and prior.
inline Scalar total_variation_privacy(const Joint& joint) {
  const Mode mode = joint.mode();
  Scalar total = Scalar::zero(mode);
  const Scalar half = Scalar::one(mode) /
                      (mode == Mode::kRational ? Scalar::rational(2)
                                               : Scalar::real(2.0));
  for (std::size_t y : joint.supp_y()) {
    const auto post = posterior(joint, y);
    Scalar tv = Scalar::zero(mode);
    for (std::size_t x = 0; x < joint.num_x(); ++x) {
      const Scalar d = post[x] > joint.prior().probs[x]
                           ? post[x] - joint.prior().probs[x]
                           : joint.prior().probs[x] - post[x];
      tv += d;
    }
    total += joint.output_marginal()[y] * half * tv;
  }
  return total;
}

struct TvBounds {
  Scalar ml_bound;          // exp(L) - 1
  Scalar regime_bound;      // three-regime bound under an (eps, delta)-PML
  Scalar pointwise_bound;   // (1/2) E[max{exp(pml) - 1, 1}]
  Scalar cardinality_bound; // loose |X|-dependent bound, reported only
};

// Upper bounds on T(X;Y); eps_ratio/delta describe an (eps, delta)-PML
// guarantee the joint is assumed to satisfy.
inline TvBounds tv_bounds(const Joint& joint, const Scalar& eps_ratio,
                          const Scalar& delta) {
  const Mode mode = joint.mode();
  const Scalar one = Scalar::one(mode);
  if (eps_ratio < one) throw InvalidEpsilon("epsilon ratio must be >= 1");
  if (delta.is_negative() || delta > one) {
    throw InvalidDelta("delta must lie in [0, 1]");
  }
  const auto lit = [mode](long long n, long long d) {
    return mode == Mode::kRational
               ? Scalar::rational(n, d)
               : Scalar::real(static_cast<double>(n) / d);
  };
  const Scalar half = lit(1, 2);
  TvBounds out;
  const Scalar ml = maximal_leakage(joint.channel());
  out.ml_bound = ml - one;

  const Scalar eta_max = eps_max(joint.prior()) - one;
  const Scalar slack = delta * half * eta_max;
  if (eps_ratio <= lit(3, 2)) {
    out.regime_bound = eps_ratio - one + slack;
  } else if (eps_ratio <= lit(2, 1)) {
    out.regime_bound = half + slack;
  } else {
    out.regime_bound = half * (eps_ratio - one) + slack;
  }

  Scalar pw = Scalar::zero(mode);
  for (std::size_t y : joint.supp_y()) {
    const Scalar eta = pml(joint, y) - one;
    pw += joint.output_marginal()[y] * (eta > one ? eta : one);
  }
  out.pointwise_bound = half * pw;

  Scalar pmax = joint.prior().probs.front();
  for (const Scalar& p : joint.prior().probs) {
    if (p > pmax) pmax = p;
  }
  const Scalar card =
      mode == Mode::kRational
          ? Scalar::rational(static_cast<long long>(joint.num_x() - 1))
          : Scalar::real(static_cast<double>(joint.num_x() - 1));
  out.cardinality_bound = card * pmax * (ml - one);
  return out;
}

// exp(I_inf) = max over (x, y) of the information density ratio.
inline Scalar max_information(const Joint& joint) {
  Scalar best = Scalar::one(joint.mode());
  for (std::size_t y : joint.supp_y()) {
    const Scalar r = pml(joint, y);
    if (r > best) best = r;
  }
  return best;
}

// Density-truncation sufficient bound on exp(I_inf^delta): the smallest
// ratio r with P_XY-mass of pairs denser than r at most delta.
inline Scalar approx_max_information_bound(const Joint& joint,
                                           const Scalar& delta) {
  const Mode mode = joint.mode();
  struct PairMass {
    Scalar density;
    Scalar mass;
  };
  std::vector<PairMass> pairs;
  for (std::size_t y : joint.supp_y()) {
    for (std::size_t x = 0; x < joint.num_x(); ++x) {
      const Scalar pxy = joint.prior().probs[x] * joint.channel().at(x, y);
      if (pxy.is_zero()) continue;
      pairs.push_back({info_density(joint, x, y), pxy});
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const PairMass& a, const PairMass& b) {
              return a.density > b.density;
            });
  Scalar cum = Scalar::zero(mode);
  std::size_t i = 0;
  while (i < pairs.size()) {
    std::size_t j = i;
    Scalar group = Scalar::zero(mode);
    while (j < pairs.size() && pairs[j].density == pairs[i].density) {
      group += pairs[j].mass;
      ++j;
    }
    if (pairs[i].density > Scalar::one(mode) && cum + group <= delta) {
      cum += group;
      i = j;
      continue;
    }
    return pairs[i].density;
  }
  return Scalar::one(mode);
}

// exp(I_inf^delta) by exhaustive event enumeration over the support of
// P_XY.  Throws when the support exceeds max_bits, attaching the
// density-truncation fallback bound.
inline Scalar approx_max_information(const Joint& joint, const Scalar& delta,
                                     std::size_t max_bits = 20) {
  const Mode mode = joint.mode();
  if (delta.is_negative() || delta > Scalar::one(mode)) {
    throw InvalidDelta("delta must lie in [0, 1]");
  }
  if (delta.is_zero()) return max_information(joint);

  std::vector<Scalar> mass, prod;
  for (std::size_t y : joint.supp_y()) {
    for (std::size_t x = 0; x < joint.num_x(); ++x) {
      const Scalar pxy = joint.prior().probs[x] * joint.channel().at(x, y);
      if (pxy.is_zero()) continue;
      mass.push_back(pxy);
      prod.push_back(joint.prior().probs[x] * joint.output_marginal()[y]);
    }
  }
  if (mass.size() > max_bits) {
    throw TooLargeForBruteForce(
        "support of size " + std::to_string(mass.size()) +
            " exceeds the brute-force event cap of " +
            std::to_string(max_bits) + " pairs",
        approx_max_information_bound(joint, delta));
  }
  const std::uint64_t n_events = std::uint64_t{1} << mass.size();
  bool found = false;
  Scalar best = Scalar::zero(mode);
  for (std::uint64_t e = 1; e < n_events; ++e) {
    Scalar pe = Scalar::zero(mode);
    Scalar qe = Scalar::zero(mode);
    for (std::uint64_t bits = e; bits != 0; bits &= bits - 1) {
      const int i = std::countr_zero(bits);
      pe += mass[i];
      qe += prod[i];
    }
    if (pe < delta) continue;
    const Scalar r = (pe - delta) / qe;
    if (!found || r > best) {
      best = r;
      found = true;
    }
  }
  return found ? best : Scalar::zero(mode);
}

}  // namespace pml

#endif  // PML_COMPARISONS_HPP_
