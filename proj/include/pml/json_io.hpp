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
#ifndef PML_JSON_IO_HPP_
#define PML_JSON_IO_HPP_

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pml/adversary.hpp"
#include "pml/model.hpp"

namespace pml {

using Json = nlohmann::json;

inline Mode parse_mode(const std::string& s) {
  if (s == "rational") return Mode::kRational;
  if (s == "float") return Mode::kFloat;
  throw ValidationError("unknown mode \"" + s +
                        "\"; expected \"rational\" or \"float\"");
}

namespace detail {

inline Scalar scalar_from_json(const Json& v, Mode mode) {
  if (v.is_string()) return Scalar::parse(v.get<std::string>(), mode);
  if (v.is_number()) return Scalar::parse(v.dump(), mode);
  throw ValidationError("expected a numeric entry, got: " + v.dump());
}

inline std::vector<std::string> labels_from_json(const Json& v,
                                                 const char* field) {
  if (!v.is_array()) {
    throw ValidationError(std::string(field) + " must be an array");
  }
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(e.get<std::string>());
  return out;
}

}  // namespace detail

struct ModelDocument {
  Prior prior;
  Channel channel;
};

// Model JSON:
// {"mode": "rational"|"float", "prior": ["1/4", ...],
//  "channel": [["0", "1/2", ...], ...],
//  "labels_x": [...], "labels_y": [...]}
// Labels are optional; defaults are x1.., y1...
inline ModelDocument model_from_json(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("model must be a JSON object");
  const Mode mode =
      parse_mode(doc.value("mode", std::string("rational")));
  if (!doc.contains("prior") || !doc.contains("channel")) {
    throw ValidationError("model needs \"prior\" and \"channel\" fields");
  }
  ModelDocument m;
  m.prior.mode = mode;
  m.channel.mode = mode;
  for (const auto& e : doc.at("prior")) {
    m.prior.probs.push_back(detail::scalar_from_json(e, mode));
  }
  for (const auto& row : doc.at("channel")) {
    std::vector<Scalar> r;
    for (const auto& e : row) r.push_back(detail::scalar_from_json(e, mode));
    m.channel.rows.push_back(std::move(r));
  }
  if (doc.contains("labels_x")) {
    m.prior.labels_x = detail::labels_from_json(doc.at("labels_x"),
                                                "labels_x");
  } else {
    for (std::size_t i = 0; i < m.prior.probs.size(); ++i) {
      m.prior.labels_x.push_back("x" + std::to_string(i + 1));
    }
  }
  m.channel.labels_x = m.prior.labels_x;
  const std::size_t ny = m.channel.rows.empty() ? 0 : m.channel.rows[0].size();
  if (doc.contains("labels_y")) {
    m.channel.labels_y = detail::labels_from_json(doc.at("labels_y"),
                                                  "labels_y");
  } else {
    for (std::size_t j = 0; j < ny; ++j) {
      m.channel.labels_y.push_back("y" + std::to_string(j + 1));
    }
  }
  return m;
}

inline ModelDocument convert_mode(const ModelDocument& m, Mode mode) {
  ModelDocument out = m;
  out.prior.mode = mode;
  out.channel.mode = mode;
  for (Scalar& s : out.prior.probs) s = s.to_mode(mode);
  for (auto& row : out.channel.rows) {
    for (Scalar& s : row) s = s.to_mode(mode);
  }
  return out;
}

inline Json model_to_json(const ModelDocument& m) {
  Json doc;
  doc["mode"] = mode_name(m.prior.mode);
  Json prior = Json::array();
  for (const Scalar& p : m.prior.probs) prior.push_back(p.str());
  doc["prior"] = prior;
  Json channel = Json::array();
  for (const auto& row : m.channel.rows) {
    Json r = Json::array();
    for (const Scalar& e : row) r.push_back(e.str());
    channel.push_back(r);
  }
  doc["channel"] = channel;
  doc["labels_x"] = m.prior.labels_x;
  doc["labels_y"] = m.channel.labels_y;
  return doc;
}

inline ModelDocument joint_to_document(const Joint& joint) {
  return ModelDocument{joint.prior(), joint.channel()};
}

// Stage JSON for adaptive composition:
// {"stages": {"y_label": [[...], ...], ...}, "labels_z": [...]}
inline std::map<std::string, Channel> stages_from_json(const Json& doc,
                                                       Mode mode) {
  if (!doc.is_object() || !doc.contains("stages")) {
    throw ValidationError("stage file needs a \"stages\" object");
  }
  std::vector<std::string> labels_z;
  if (doc.contains("labels_z")) {
    labels_z = detail::labels_from_json(doc.at("labels_z"), "labels_z");
  }
  std::map<std::string, Channel> stages;
  for (const auto& [label, rows] : doc.at("stages").items()) {
    Channel c;
    c.mode = mode;
    for (const auto& row : rows) {
      std::vector<Scalar> r;
      for (const auto& e : row) r.push_back(detail::scalar_from_json(e, mode));
      c.rows.push_back(std::move(r));
    }
    const std::size_t nz = c.rows.empty() ? 0 : c.rows[0].size();
    if (labels_z.empty()) {
      for (std::size_t j = 0; j < nz; ++j) {
        c.labels_y.push_back("z" + std::to_string(j + 1));
      }
    } else {
      c.labels_y = labels_z;
    }
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
      c.labels_x.push_back("x" + std::to_string(i + 1));
    }
    stages.emplace(label, std::move(c));
  }
  return stages;
}

// Gain JSON: {"gain": [[...], ...], "labels_xhat": [...]}
inline GainFunction gain_from_json(const Json& doc, Mode mode) {
  if (!doc.is_object() || !doc.contains("gain")) {
    throw ValidationError("gain file needs a \"gain\" matrix");
  }
  std::vector<std::vector<Scalar>> rows;
  for (const auto& row : doc.at("gain")) {
    std::vector<Scalar> r;
    for (const auto& e : row) r.push_back(detail::scalar_from_json(e, mode));
    rows.push_back(std::move(r));
  }
  std::vector<std::string> labels;
  if (doc.contains("labels_xhat")) {
    labels = detail::labels_from_json(doc.at("labels_xhat"), "labels_xhat");
  } else {
    const std::size_t n = rows.empty() ? 0 : rows[0].size();
    for (std::size_t j = 0; j < n; ++j) {
      labels.push_back("g" + std::to_string(j + 1));
    }
  }
  return GainFunction::from_matrix(std::move(rows), std::move(labels), mode);
}

// Epsilon arguments: a ratio like "6/5" (or "1.2"), or a natural-log value
// with a "log:" prefix.
inline Scalar parse_epsilon(const std::string& text, Mode mode) {
  if (text.rfind("log:", 0) == 0) {
    const double nats = std::stod(text.substr(4));
    const double ratio = std::exp(nats);
    return mode == Mode::kRational ? Scalar::real(ratio).to_mode(mode)
                                   : Scalar::real(ratio);
  }
  return Scalar::parse(text, mode);
}

}  // namespace pml

#endif  // PML_JSON_IO_HPP_
