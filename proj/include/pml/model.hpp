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
#ifndef PML_MODEL_HPP_
#define PML_MODEL_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pml/errors.hpp"
#include "pml/scalar.hpp"

namespace pml {

// Distribution of the secret X.  Entries may be zero before support trimming;
// a validated Joint carries a trimmed Prior with strictly positive entries.
struct Prior {
  Mode mode = Mode::kRational;
  std::vector<std::string> labels_x;
  std::vector<Scalar> probs;

  std::size_t size() const { return probs.size(); }
};

// Row-stochastic kernel: rows indexed by x-labels, columns by y-labels.
struct Channel {
  Mode mode = Mode::kRational;
  std::vector<std::string> labels_x;
  std::vector<std::string> labels_y;
  std::vector<std::vector<Scalar>> rows;

  std::size_t num_x() const { return rows.size(); }
  std::size_t num_y() const { return labels_y.size(); }
  const Scalar& at(std::size_t x, std::size_t y) const { return rows[x][y]; }
};

// An output event: a set of outcome indices plus an optional fractional
// boundary outcome taken with weight zeta in (0, 1].
struct Event {
  struct Split {
    std::size_t y = 0;
    Scalar zeta;
  };
  std::set<std::size_t> members;
  std::optional<Split> split;

  bool empty() const { return members.empty() && !split.has_value(); }
};

namespace detail {

inline bool sums_to_one(const std::vector<Scalar>& v, Mode mode) {
  Scalar sum = Scalar::zero(mode);
  for (const auto& s : v) sum += s;
  return sum.approx_equals(Scalar::one(mode));
}

}  // namespace detail

// A validated (prior, channel) pair with cached output marginal.  The prior
// is trimmed to its support at construction; outputs with zero marginal mass
// are retained but excluded from supp_y().
class Joint {
 public:
  const Prior& prior() const { return prior_; }
  const Channel& channel() const { return channel_; }
  Mode mode() const { return prior_.mode; }

  std::size_t num_x() const { return prior_.size(); }
  std::size_t num_y() const { return channel_.num_y(); }

  const std::vector<Scalar>& output_marginal() const {
    return output_marginal_;
  }
  const std::vector<std::size_t>& supp_y() const { return supp_y_; }

  bool y_supported(std::size_t y) const {
    return y < num_y() && !output_marginal_[y].is_zero();
  }

  const std::string& x_label(std::size_t x) const {
    return prior_.labels_x[x];
  }
  const std::string& y_label(std::size_t y) const {
    return channel_.labels_y[y];
  }

  void require_y_supported(std::size_t y) const {
    if (y >= num_y()) {
      throw OutOfSupport("unknown outcome index " + std::to_string(y));
    }
    if (!y_supported(y)) {
      throw OutOfSupport("outcome \"" + y_label(y) +
                         "\" has zero probability");
    }
  }

  friend Joint validate_model(const Prior& prior, const Channel& channel);

 private:
  Prior prior_;
  Channel channel_;
  std::vector<Scalar> output_marginal_;
  std::vector<std::size_t> supp_y_;
};

// Validates shapes and stochasticity, drops zero-probability secrets, and
// caches P_Y.  Outputs with zero mass are kept (flagged out-of-support) so
// that channel algebra retains the full alphabet.
inline Joint validate_model(const Prior& prior, const Channel& channel) {
  if (prior.mode != channel.mode) {
    throw ShapeMismatch("prior and channel use different scalar modes");
  }
  const Mode mode = prior.mode;
  if (prior.labels_x.size() != prior.probs.size()) {
    throw ShapeMismatch("prior has " + std::to_string(prior.probs.size()) +
                        " entries but " +
                        std::to_string(prior.labels_x.size()) + " labels");
  }
  if (channel.rows.size() != prior.probs.size()) {
    throw ShapeMismatch("channel has " + std::to_string(channel.rows.size()) +
                        " rows but prior has " +
                        std::to_string(prior.probs.size()) + " entries");
  }
  if (channel.labels_x != prior.labels_x) {
    throw ShapeMismatch("channel row labels do not match prior labels");
  }
  for (std::size_t x = 0; x < channel.rows.size(); ++x) {
    if (channel.rows[x].size() != channel.labels_y.size()) {
      throw ShapeMismatch("row \"" + channel.labels_x[x] + "\" has " +
                          std::to_string(channel.rows[x].size()) +
                          " entries, expected " +
                          std::to_string(channel.labels_y.size()));
    }
  }

  for (std::size_t x = 0; x < prior.probs.size(); ++x) {
    if (prior.probs[x].is_negative()) {
      throw NegativeEntry("prior entry for \"" + prior.labels_x[x] +
                          "\" is negative");
    }
    for (std::size_t y = 0; y < channel.labels_y.size(); ++y) {
      if (channel.rows[x][y].is_negative()) {
        throw NegativeEntry("channel entry (\"" + prior.labels_x[x] +
                            "\", \"" + channel.labels_y[y] +
                            "\") is negative");
      }
    }
  }
  if (!detail::sums_to_one(prior.probs, mode)) {
    throw NonStochasticRow("prior does not sum to 1");
  }
  for (std::size_t x = 0; x < channel.rows.size(); ++x) {
    if (!detail::sums_to_one(channel.rows[x], mode)) {
      throw NonStochasticRow("channel row \"" + channel.labels_x[x] +
                             "\" does not sum to 1");
    }
  }

  // Support trimming: definitions quantify over supp(P_X) only.
  Joint j;
  j.prior_.mode = mode;
  j.channel_.mode = mode;
  j.channel_.labels_y = channel.labels_y;
  for (std::size_t x = 0; x < prior.probs.size(); ++x) {
    if (prior.probs[x].is_zero()) continue;
    j.prior_.labels_x.push_back(prior.labels_x[x]);
    j.prior_.probs.push_back(prior.probs[x]);
    j.channel_.labels_x.push_back(prior.labels_x[x]);
    j.channel_.rows.push_back(channel.rows[x]);
  }
  if (j.prior_.probs.empty()) {
    throw EmptySupport("prior has empty support");
  }

  j.output_marginal_.assign(channel.labels_y.size(), Scalar::zero(mode));
  for (std::size_t x = 0; x < j.prior_.size(); ++x) {
    for (std::size_t y = 0; y < channel.labels_y.size(); ++y) {
      j.output_marginal_[y] += j.prior_.probs[x] * j.channel_.rows[x][y];
    }
  }
  for (std::size_t y = 0; y < j.output_marginal_.size(); ++y) {
    if (!j.output_marginal_[y].is_zero()) j.supp_y_.push_back(y);
  }
  return j;
}

// P_{X|Y=y}: posterior over the supported secrets.
inline std::vector<Scalar> posterior(const Joint& joint, std::size_t y) {
  joint.require_y_supported(y);
  std::vector<Scalar> post;
  post.reserve(joint.num_x());
  for (std::size_t x = 0; x < joint.num_x(); ++x) {
    post.push_back(joint.prior().probs[x] * joint.channel().at(x, y) /
                   joint.output_marginal()[y]);
  }
  return post;
}

// exp(i(x;y)) = P_{Y|X=x}(y) / P_Y(y).  The log lives only in presentation.
inline Scalar info_density(const Joint& joint, std::size_t x, std::size_t y) {
  if (x >= joint.num_x()) {
    throw OutOfSupport("unknown secret index " + std::to_string(x));
  }
  joint.require_y_supported(y);
  return joint.channel().at(x, y) / joint.output_marginal()[y];
}

}  // namespace pml

#endif  // PML_MODEL_HPP_
