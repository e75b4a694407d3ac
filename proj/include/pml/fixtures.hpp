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
// Shared fixture corpus used by tests and examples.  All fixtures are exact
// rational models.
#ifndef PML_FIXTURES_HPP_
#define PML_FIXTURES_HPP_

#include <string>
#include <vector>

#include "pml/model.hpp"

namespace pml {
namespace fixtures {

inline Prior make_prior(const std::vector<std::string>& entries,
                        Mode mode = Mode::kRational,
                        const std::string& prefix = "x") {
  Prior p;
  p.mode = mode;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    p.labels_x.push_back(prefix + std::to_string(i + 1));
    p.probs.push_back(Scalar::parse(entries[i], mode));
  }
  return p;
}

inline Channel make_channel(const std::vector<std::vector<std::string>>& rows,
                            Mode mode = Mode::kRational,
                            const std::string& xprefix = "x",
                            const std::string& yprefix = "y") {
  Channel c;
  c.mode = mode;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    c.labels_x.push_back(xprefix + std::to_string(i + 1));
    std::vector<Scalar> row;
    for (const std::string& e : rows[i]) row.push_back(Scalar::parse(e, mode));
    c.rows.push_back(row);
  }
  if (!rows.empty()) {
    for (std::size_t j = 0; j < rows[0].size(); ++j) {
      c.labels_y.push_back(yprefix + std::to_string(j + 1));
    }
  }
  return c;
}

inline Prior uniform_prior(std::size_t n, Mode mode = Mode::kRational,
                           const std::string& prefix = "x") {
  std::vector<std::string> e(n, "1/" + std::to_string(n));
  return make_prior(e, mode, prefix);
}

// Ternary deterministic-ish channel: one fully revealing outcome per row.
inline Joint fix_a(Mode mode = Mode::kRational) {
  return validate_model(uniform_prior(3, mode),
                        make_channel({{"1", "0", "0"},
                                      {"1/2", "1/2", "0"},
                                      {"0", "1/2", "1/2"}},
                                     mode));
}

// Ternary symmetric channel: every outcome leaks the same amount.
inline Joint fix_b(Mode mode = Mode::kRational) {
  return validate_model(uniform_prior(3, mode),
                        make_channel({{"2/3", "1/6", "1/6"},
                                      {"1/6", "2/3", "1/6"},
                                      {"1/6", "1/6", "2/3"}},
                                     mode));
}

// 4x4 channel whose tail guarantee is destroyed by a deterministic
// post-processing; the canonical EML worked example.
inline Joint fix_c(Mode mode = Mode::kRational) {
  return validate_model(uniform_prior(4, mode),
                        make_channel({{"0", "0", "1/2", "1/2"},
                                      {"0", "0", "1/2", "1/2"},
                                      {"0", "1/3", "1/3", "1/3"},
                                      {"1/3", "0", "1/3", "1/3"}},
                                     mode));
}

// The deterministic post-processing kernel paired with fix_c.
inline Channel fix_c_postprocessing(Mode mode = Mode::kRational) {
  return make_channel(
      {{"1", "0"}, {"0", "1"}, {"1", "0"}, {"0", "1"}}, mode, "y", "z");
}

// Binary symmetric channel with crossover 2/5 and uniform prior.
inline Joint fix_d(Mode mode = Mode::kRational) {
  return validate_model(
      uniform_prior(2, mode),
      make_channel({{"3/5", "2/5"}, {"2/5", "3/5"}}, mode));
}

// Binary X, Y, Z triple where side information can either help or hurt.
// Rows of fix_e_observation are indexed (x, z) row-major.
inline Prior fix_e_prior(Mode mode = Mode::kRational) {
  return uniform_prior(2, mode);
}
inline Channel fix_e_side(Mode mode = Mode::kRational) {
  return make_channel({{"2/5", "3/5"}, {"3/5", "2/5"}}, mode, "x", "z");
}
inline Channel fix_e_observation(Mode mode = Mode::kRational) {
  Channel c = make_channel({{"1/2", "1/2"},
                            {"1/3", "2/3"},
                            {"2/3", "1/3"},
                            {"1/2", "1/2"}},
                           mode, "xz", "y");
  return c;
}

// Disjoint-support channel over 2n outcomes: satisfies (0, 1/n)-LDP yet
// every outcome has leakage ratio 2.
inline Joint fix_f(std::size_t n = 4, Mode mode = Mode::kRational) {
  const std::string d = "1/" + std::to_string(n);
  std::vector<std::string> row1, row2;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    const bool odd = (i % 2 == 0);  // y1, y3, ... are the "odd" outcomes
    row1.push_back(odd ? d : "0");
    row2.push_back(odd ? "0" : d);
  }
  return validate_model(uniform_prior(2, mode),
                        make_channel({row1, row2}, mode));
}

// One rare secret revealed exactly: LDP diverges while the tail guarantee
// stays mild.  Prior: P(x1) = 1/inv_pstar, rest uniform over m - 1 secrets.
inline Joint fix_g(std::size_t inv_pstar = 10, std::size_t m = 3,
                   std::size_t n = 4, Mode mode = Mode::kRational) {
  std::vector<std::string> prior_entries;
  prior_entries.push_back("1/" + std::to_string(inv_pstar));
  const std::string rest = std::to_string(inv_pstar - 1) + "/" +
                           std::to_string(inv_pstar * (m - 1));
  for (std::size_t j = 1; j < m; ++j) prior_entries.push_back(rest);

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row1(n, "0");
  row1[0] = "1";
  rows.push_back(row1);
  const std::string u = "1/" + std::to_string(n - 1);
  for (std::size_t j = 1; j < m; ++j) {
    std::vector<std::string> row(n, u);
    row[0] = "0";
    rows.push_back(row);
  }
  return validate_model(make_prior(prior_entries, mode),
                        make_channel(rows, mode));
}

}  // namespace fixtures
}  // namespace pml

#endif  // PML_FIXTURES_HPP_
