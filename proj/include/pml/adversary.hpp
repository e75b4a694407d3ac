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
#ifndef PML_ADVERSARY_HPP_
#define PML_ADVERSARY_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pml/channel_ops.hpp"
#include "pml/leakage.hpp"
#include "pml/model.hpp"

namespace pml {

// An adversary guessing the value of a randomized function U of X.
struct RandomizedFunction {
  Channel kernel;  // P_{U|X}; labels_y play the role of labels_u

  std::size_t num_u() const { return kernel.num_y(); }
};

// An adversary scoring guesses via a nonnegative gain matrix g(x, xhat).
// Stored normalized so that the largest entry is 1 (scaling a gain function
// never changes the leakage ratio).
struct GainFunction {
  Mode mode = Mode::kRational;
  std::vector<std::string> labels_xhat;
  std::vector<std::vector<Scalar>> matrix;  // rows over x, columns over xhat

  std::size_t num_xhat() const { return labels_xhat.size(); }

  static GainFunction from_matrix(std::vector<std::vector<Scalar>> rows,
                                  std::vector<std::string> labels_xhat,
                                  Mode mode) {
    GainFunction g;
    g.mode = mode;
    g.labels_xhat = std::move(labels_xhat);
    g.matrix = std::move(rows);
    Scalar maxent = Scalar::zero(mode);
    for (const auto& row : g.matrix) {
      if (row.size() != g.labels_xhat.size()) {
        throw ShapeMismatch("gain row width does not match guess labels");
      }
      for (const Scalar& e : row) {
        if (e.is_negative()) throw NegativeEntry("gain entries must be >= 0");
        if (e > maxent) maxent = e;
      }
    }
    if (maxent.is_zero()) {
      throw ZeroBaselineGain("gain function is identically zero");
    }
    for (auto& row : g.matrix) {
      for (Scalar& e : row) e /= maxent;
    }
    return g;
  }
};

// l_U(X -> y) as a ratio: posterior vs prior probability of guessing U.
inline Scalar u_leakage(const Joint& joint, const RandomizedFunction& u,
                        std::size_t y) {
  joint.require_y_supported(y);
  if (u.kernel.rows.size() != joint.num_x()) {
    throw ShapeMismatch("function kernel must have one row per supported "
                        "secret");
  }
  const Mode mode = joint.mode();
  const auto post = posterior(joint, y);
  Scalar best_num = Scalar::zero(mode);
  Scalar best_den = Scalar::zero(mode);
  for (std::size_t ui = 0; ui < u.num_u(); ++ui) {
    Scalar num = Scalar::zero(mode);
    Scalar den = Scalar::zero(mode);
    for (std::size_t x = 0; x < joint.num_x(); ++x) {
      num += u.kernel.at(x, ui) * post[x];
      den += u.kernel.at(x, ui) * joint.prior().probs[x];
    }
    if (num > best_num) best_num = num;
    if (den > best_den) best_den = den;
  }
  if (best_den.is_zero()) {
    throw ZeroBaselineGain("function has zero prior guessing probability");
  }
  return best_num / best_den;
}

// l_g(X -> y) as a ratio: posterior vs prior expected gain of the best guess.
inline Scalar g_leakage(const Joint& joint, const GainFunction& g,
                        std::size_t y) {
  joint.require_y_supported(y);
  if (g.matrix.size() != joint.num_x()) {
    throw ShapeMismatch("gain matrix must have one row per supported secret");
  }
  const Mode mode = joint.mode();
  const auto post = posterior(joint, y);
  Scalar best_num = Scalar::zero(mode);
  Scalar best_den = Scalar::zero(mode);
  for (std::size_t a = 0; a < g.num_xhat(); ++a) {
    Scalar num = Scalar::zero(mode);
    Scalar den = Scalar::zero(mode);
    for (std::size_t x = 0; x < joint.num_x(); ++x) {
      num += g.matrix[x][a] * post[x];
      den += g.matrix[x][a] * joint.prior().probs[x];
    }
    if (num > best_num) best_num = num;
    if (den > best_den) best_den = den;
  }
  if (best_den.is_zero()) {
    throw ZeroBaselineGain("every guess has zero expected prior gain");
  }
  return best_num / best_den;
}

// Function view -> gain view: one guess per letter of U, scored by the
// kernel probability.  Preserves the leakage of every outcome.
inline GainFunction gain_from_function(const RandomizedFunction& u) {
  std::vector<std::vector<Scalar>> rows;
  for (const auto& krow : u.kernel.rows) rows.push_back(krow);
  return GainFunction::from_matrix(std::move(rows), u.kernel.labels_y,
                                   u.kernel.mode);
}

namespace detail {

// Smallest integer n with mass / n strictly below target; ties go up by 1.
inline std::size_t smallest_padding(const Scalar& mass, const Scalar& target) {
  if (mass.is_zero()) return 1;
  if (target.is_zero()) {
    throw ComputationError(
        "gain function assigns zero gain to every secret supported by the "
        "distribution; no realizing function exists");
  }
  const Scalar q = mass / target;
  std::size_t n;
  if (q.is_rational()) {
    n = static_cast<std::size_t>(floor_rational(q.rat()));
  } else {
    n = static_cast<std::size_t>(std::floor(q.flt() + kFloatRelTol));
  }
  return n + 1;
}

// Appends a shattering-style block realizing guess `a` of gain g with total
// row weight w for every x with g(x, a) > 0.  Letter j of the block carries
// probability w * g(x, a) for j below 1/g(x, a), plus a remainder letter.
inline void append_gain_block(const GainFunction& g, std::size_t a,
                              const Scalar& w, const std::string& tag,
                              std::vector<std::vector<Scalar>>* rows,
                              std::vector<std::string>* labels) {
  const Mode mode = g.mode;
  const std::size_t nx = g.matrix.size();
  std::vector<std::size_t> nfull(nx, 0);
  std::vector<Scalar> rem(nx, Scalar::zero(mode));
  std::size_t width = 0;
  for (std::size_t x = 0; x < nx; ++x) {
    const Scalar& gx = g.matrix[x][a];
    if (gx.is_zero()) continue;
    std::size_t f;
    if (gx.is_rational()) {
      f = static_cast<std::size_t>(
          floor_rational((Scalar::one(mode) / gx).rat()));
    } else {
      f = static_cast<std::size_t>(std::floor(1.0 / gx.flt() + kFloatRelTol));
    }
    nfull[x] = f;
    const Scalar used = gx * (mode == Mode::kRational
                                  ? Scalar::rational(static_cast<long long>(f))
                                  : Scalar::real(static_cast<double>(f)));
    rem[x] = Scalar::one(mode) - used;
    if (rem[x].is_negative()) rem[x] = Scalar::zero(mode);
    width = std::max(width, f + (rem[x].is_zero() ? 0 : 1));
  }
  const std::size_t base = labels->size();
  for (std::size_t j = 0; j < width; ++j) {
    labels->push_back(tag + std::to_string(j + 1));
  }
  for (std::size_t x = 0; x < nx; ++x) {
    (*rows)[x].resize(base + width, Scalar::zero(mode));
    if (g.matrix[x][a].is_zero()) continue;
    for (std::size_t j = 0; j < nfull[x]; ++j) {
      (*rows)[x][base + j] = w * g.matrix[x][a];
    }
    if (!rem[x].is_zero()) {
      (*rows)[x][base + nfull[x]] = w * rem[x];
    }
  }
}

// Appends n uniform padding letters carrying total row weight w for the
// given secrets.
inline void append_padding(const std::vector<std::size_t>& xs, std::size_t n,
                           const Scalar& w, Mode mode, const std::string& tag,
                           std::vector<std::vector<Scalar>>* rows,
                           std::vector<std::string>* labels) {
  const Scalar share =
      w / (mode == Mode::kRational
               ? Scalar::rational(static_cast<long long>(n))
               : Scalar::real(static_cast<double>(n)));
  const std::size_t base = labels->size();
  for (std::size_t j = 0; j < n; ++j) {
    labels->push_back(tag + std::to_string(j + 1));
  }
  for (auto& row : *rows) row.resize(base + n, Scalar::zero(mode));
  for (std::size_t x : xs) {
    for (std::size_t j = 0; j < n; ++j) (*rows)[x][base + j] = share;
  }
}

}  // namespace detail

// Gain view -> function view for a fixed outcome y: constructs a randomized
// function U_g with u_leakage(U_g, y) = g_leakage(g, y).  Either one guess
// maximizes both the posterior and the prior expected gain (single block) or
// the two maximizers are mixed with probability 1/2 each; secrets outside
// the involved supports get fresh padding letters, sized as the smallest
// integers keeping the intended letters maximal.
inline RandomizedFunction function_from_gain(const Joint& joint,
                                             const GainFunction& g,
                                             std::size_t y) {
  joint.require_y_supported(y);
  if (g.matrix.size() != joint.num_x()) {
    throw ShapeMismatch("gain matrix must have one row per supported secret");
  }
  const Mode mode = joint.mode();
  const auto post = posterior(joint, y);
  const auto& prior = joint.prior().probs;
  const std::size_t nx = joint.num_x();

  std::vector<Scalar> num(g.num_xhat(), Scalar::zero(mode));
  std::vector<Scalar> den(g.num_xhat(), Scalar::zero(mode));
  for (std::size_t a = 0; a < g.num_xhat(); ++a) {
    for (std::size_t x = 0; x < nx; ++x) {
      num[a] += g.matrix[x][a] * post[x];
      den[a] += g.matrix[x][a] * prior[x];
    }
  }
  const Scalar max_num = *std::max_element(num.begin(), num.end());
  const Scalar max_den = *std::max_element(den.begin(), den.end());
  if (max_den.is_zero()) {
    throw ZeroBaselineGain("every guess has zero expected prior gain");
  }

  // Shared maximizer, if any (lowest index).
  std::size_t a_v = g.num_xhat(), a_w = g.num_xhat(), shared = g.num_xhat();
  for (std::size_t a = 0; a < g.num_xhat(); ++a) {
    const bool in_num = num[a] == max_num;
    const bool in_den = den[a] == max_den;
    if (in_num && a_v == g.num_xhat()) a_v = a;
    if (in_den && a_w == g.num_xhat()) a_w = a;
    if (in_num && in_den && shared == g.num_xhat()) shared = a;
  }

  std::vector<std::vector<Scalar>> rows(nx);
  std::vector<std::string> labels;
  const auto in_support = [&](std::size_t x, std::size_t a) {
    return !g.matrix[x][a].is_zero();
  };

  if (shared != g.num_xhat()) {
    // Case 1: one block with full weight.
    detail::append_gain_block(g, shared, Scalar::one(mode), "v", &rows,
                              &labels);
    std::vector<std::size_t> outside;
    Scalar out_post = Scalar::zero(mode), out_prior = Scalar::zero(mode);
    for (std::size_t x = 0; x < nx; ++x) {
      if (in_support(x, shared)) continue;
      outside.push_back(x);
      out_post += post[x];
      out_prior += prior[x];
    }
    if (!outside.empty()) {
      const std::size_t n_o =
          std::max(detail::smallest_padding(out_post, max_num),
                   detail::smallest_padding(out_prior, max_den));
      detail::append_padding(outside, n_o, Scalar::one(mode), mode, "o",
                             &rows, &labels);
    }
  } else {
    // Case 2: Bernoulli-1/2 mixture of the posterior-best and prior-best
    // blocks.
    const Scalar half = Scalar::one(mode) /
                        (mode == Mode::kRational ? Scalar::rational(2)
                                                 : Scalar::real(2.0));
    detail::append_gain_block(g, a_v, half, "v", &rows, &labels);
    detail::append_gain_block(g, a_w, half, "w", &rows, &labels);

    std::vector<std::size_t> w_only, v_only, outside;
    Scalar wp = Scalar::zero(mode), wq = Scalar::zero(mode);
    Scalar vp = Scalar::zero(mode), vq = Scalar::zero(mode);
    Scalar op = Scalar::zero(mode), oq = Scalar::zero(mode);
    for (std::size_t x = 0; x < nx; ++x) {
      const bool in_v = in_support(x, a_v);
      const bool in_w = in_support(x, a_w);
      if (in_v && in_w) continue;
      if (in_w) {  // needs a V-side half
        w_only.push_back(x);
        wp += post[x];
        wq += prior[x];
      } else if (in_v) {  // needs a W-side half
        v_only.push_back(x);
        vp += post[x];
        vq += prior[x];
      } else {
        outside.push_back(x);
        op += post[x];
        oq += prior[x];
      }
    }
    const Scalar half_num = half * max_num;
    const Scalar half_den = half * max_den;
    if (!w_only.empty()) {
      const std::size_t n_v =
          std::max(detail::smallest_padding(half * wp, half_num),
                   detail::smallest_padding(half * wq, half_den));
      detail::append_padding(w_only, n_v, half, mode, "pv", &rows, &labels);
    }
    if (!v_only.empty()) {
      const std::size_t n_w =
          std::max(detail::smallest_padding(half * vp, half_num),
                   detail::smallest_padding(half * vq, half_den));
      detail::append_padding(v_only, n_w, half, mode, "pw", &rows, &labels);
    }
    if (!outside.empty()) {
      const std::size_t n_o =
          std::max(detail::smallest_padding(op, half_num),
                   detail::smallest_padding(oq, half_den));
      detail::append_padding(outside, n_o, Scalar::one(mode), mode, "o",
                             &rows, &labels);
    }
  }

  RandomizedFunction u;
  u.kernel.mode = mode;
  u.kernel.labels_x = joint.prior().labels_x;
  u.kernel.labels_y = std::move(labels);
  u.kernel.rows = std::move(rows);
  for (auto& row : u.kernel.rows) {
    row.resize(u.kernel.labels_y.size(), Scalar::zero(mode));
  }
  return u;
}

}  // namespace pml

#endif  // PML_ADVERSARY_HPP_
