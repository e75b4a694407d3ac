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
// pml_audit: batch auditor for finite privacy mechanisms.
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pml/json_io.hpp"
#include "pml/pml.hpp"

namespace {

using pml::Joint;
using pml::Json;
using pml::Mode;
using pml::Scalar;

constexpr int kSchemaVersion = 1;

struct CommonArgs {
  std::string input;
  std::string format = "table";
  std::string mode_override;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("-i,--input", args->input, "model JSON file")->required();
  cmd->add_option("--format", args->format, "output format: table or json")
      ->check(CLI::IsMember({"table", "json"}));
  cmd->add_option("--mode", args->mode_override,
                  "override the model's scalar mode")
      ->check(CLI::IsMember({"rational", "float"}));
  cmd->add_option("--seed", args->seed, "seed recorded in reports");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pml::ValidationError("cannot open file: " + path);
  Json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw pml::ValidationError("cannot parse " + path + ": " + e.what());
  }
  return doc;
}

pml::ModelDocument load_model(const CommonArgs& args) {
  pml::ModelDocument m = pml::model_from_json(read_json_file(args.input));
  if (!args.mode_override.empty()) {
    m = pml::convert_mode(m, pml::parse_mode(args.mode_override));
  }
  return m;
}

std::string fmt_log(const Scalar& ratio) {
  std::ostringstream os;
  os << std::setprecision(12) << ratio.log_value();
  return os.str();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string model_digest(const pml::ModelDocument& m) {
  std::ostringstream os;
  os << std::hex << std::setfill('0') << std::setw(16)
     << fnv1a(pml::model_to_json(m).dump());
  return os.str();
}

Json distribution_json(const Joint& joint) {
  Json entries = Json::array();
  for (const auto& e : pml::leakage_distribution(joint).entries) {
    entries.push_back({{"y", joint.y_label(e.y)},
                       {"prob", e.prob.str()},
                       {"ratio", e.ratio.str()},
                       {"log", e.ratio.log_value()}});
  }
  return entries;
}

void print_distribution_table(const Joint& joint) {
  std::cout << std::left << std::setw(16) << "outcome" << std::setw(14)
            << "P_Y" << std::setw(14) << "ratio"
            << "leakage (nats)\n";
  for (const auto& e : pml::leakage_distribution(joint).entries) {
    std::cout << std::left << std::setw(16) << joint.y_label(e.y)
              << std::setw(14) << e.prob.str() << std::setw(14)
              << e.ratio.str() << fmt_log(e.ratio) << "\n";
  }
}

Json event_json(const Joint& reduced, const pml::Event& ev) {
  Json members = Json::array();
  for (std::size_t y : ev.members) members.push_back(reduced.y_label(y));
  Json out{{"members", members}};
  if (ev.split) {
    out["split"] = {{"y", reduced.y_label(ev.split->y)},
                    {"zeta", ev.split->zeta.str()}};
  }
  return out;
}

Json guarantee_json(const Joint& joint, const pml::GuaranteeReport& r) {
  Json out{{"kind", pml::guarantee_kind_name(r.kind)},
           {"epsilon_ratio", r.epsilon_ratio.str()},
           {"epsilon_log", r.epsilon_ratio.log_value()},
           {"delta", r.delta.str()},
           {"holds", r.holds},
           {"diagnostic", r.diagnostic}};
  if (r.witness_y) out["witness_y"] = joint.y_label(*r.witness_y);
  if (r.witness_event) {
    out["witness_event"] = event_json(pml::reduced_joint(joint),
                                      *r.witness_event);
  }
  return out;
}

void emit(const CommonArgs& args, const Json& doc,
          const std::function<void()>& table) {
  if (args.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else {
    table();
  }
}

int cmd_pml(const CommonArgs& args) {
  const pml::ModelDocument m = load_model(args);
  const Joint joint = pml::validate_model(m.prior, m.channel);
  Json doc{{"schema_version", kSchemaVersion},
           {"command", "pml"},
           {"entries", distribution_json(joint)}};
  emit(args, doc, [&] { print_distribution_table(joint); });
  return 0;
}

int cmd_eml(const CommonArgs& args, const std::string& delta_text) {
  const pml::ModelDocument m = load_model(args);
  const Joint joint = pml::validate_model(m.prior, m.channel);
  const Scalar delta = Scalar::parse(delta_text, joint.mode());
  const pml::EmlKappaResult k = pml::eml_kappa(joint, delta);
  const Joint reduced = pml::reduced_joint(joint);
  Json hs = Json::array();
  for (std::size_t x = 0; x < k.h_values.size(); ++x) {
    hs.push_back({{"x", joint.x_label(x)}, {"h", k.h_values[x].str()}});
  }
  Json doc{{"schema_version", kSchemaVersion},
           {"command", "eml"},
           {"delta", delta.str()},
           {"kappa_ratio", k.kappa.str()},
           {"kappa_log", k.kappa.log_value()},
           {"worst_x", joint.x_label(k.worst_x)},
           {"h_values", hs},
           {"worst_event", event_json(reduced, k.worst_event)}};
  emit(args, doc, [&] {
    std::cout << "kappa(" << delta.str() << ") = " << k.kappa.str() << "  ("
              << fmt_log(k.kappa) << " nats)\n";
    for (std::size_t x = 0; x < k.h_values.size(); ++x) {
      std::cout << "  h[" << joint.x_label(x)
                << "] = " << k.h_values[x].str() << "\n";
    }
    std::cout << "worst secret: " << joint.x_label(k.worst_x)
              << "\nworst event (reduced outcomes):";
    for (std::size_t y : k.worst_event.members) {
      std::cout << " " << reduced.y_label(y);
    }
    if (k.worst_event.split) {
      std::cout << " + split(" << reduced.y_label(k.worst_event.split->y)
                << ", zeta=" << k.worst_event.split->zeta.str() << ")";
    }
    std::cout << "\n";
  });
  return 0;
}

int cmd_guarantee(const CommonArgs& args, const std::string& eps_text,
                  const std::string& delta_text) {
  const pml::ModelDocument m = load_model(args);
  const Joint joint = pml::validate_model(m.prior, m.channel);
  const Mode mode = joint.mode();
  const Scalar delta = delta_text.empty() ? Scalar::zero(mode)
                                          : Scalar::parse(delta_text, mode);
  Json reports = Json::array();
  std::vector<pml::GuaranteeReport> rs;
  if (!eps_text.empty()) {
    const Scalar eps = pml::parse_epsilon(eps_text, mode);
    if (delta.is_zero()) {
      rs.push_back(pml::check_eps_pml(joint, eps));
    } else {
      rs.push_back(pml::check_eps_delta_pml(joint, eps, delta));
    }
    rs.push_back(pml::check_eps_delta_eml(joint, eps, delta));
  }
  for (const auto& r : rs) reports.push_back(guarantee_json(joint, r));
  const pml::MinEpsResult me = pml::min_eps_for_delta_pml(joint, delta);
  Json excluded = Json::array();
  for (std::size_t y : me.excluded) excluded.push_back(joint.y_label(y));
  Json doc{{"schema_version", kSchemaVersion},
           {"command", "guarantee"},
           {"delta", delta.str()},
           {"min_epsilon_ratio", me.eps_ratio.str()},
           {"min_epsilon_log", me.eps_ratio.log_value()},
           {"excluded", excluded},
           {"reports", reports}};
  emit(args, doc, [&] {
    std::cout << "minimal epsilon at delta " << delta.str() << ": "
              << me.eps_ratio.str() << " (" << fmt_log(me.eps_ratio)
              << " nats)";
    if (!me.excluded.empty()) {
      std::cout << ", excluding";
      for (std::size_t y : me.excluded) std::cout << " " << joint.y_label(y);
    }
    std::cout << "\n";
    for (const auto& r : rs) {
      std::cout << pml::guarantee_kind_name(r.kind) << " at (eps="
                << r.epsilon_ratio.str() << ", delta=" << r.delta.str()
                << "): " << (r.holds ? "holds" : "FAILS") << " ("
                << r.diagnostic << ")\n";
    }
  });
  return 0;
}

int cmd_reduce(const CommonArgs& args) {
  const pml::ModelDocument m = load_model(args);
  const Joint joint = pml::validate_model(m.prior, m.channel);
  const pml::ReducedChannelMap r = pml::reduce(joint);
  Json merge = Json::array();
  for (std::size_t i = 0; i < r.merge_map.size(); ++i) {
    Json members = Json::array();
    for (std::size_t y : r.merge_map[i]) members.push_back(joint.y_label(y));
    merge.push_back({{"reduced", r.reduced.labels_y[i]},
                     {"members", members}});
  }
  Json dropped = Json::array();
  for (std::size_t y : r.dropped) dropped.push_back(joint.y_label(y));
  Json rows = Json::array();
  for (const auto& row : r.reduced.rows) {
    Json jr = Json::array();
    for (const Scalar& e : row) jr.push_back(e.str());
    rows.push_back(jr);
  }
  Json doc{{"schema_version", kSchemaVersion},
           {"command", "reduce"},
           {"labels_y", r.reduced.labels_y},
           {"channel", rows},
           {"merge_map", merge},
           {"dropped", dropped}};
  emit(args, doc, [&] {
    std::cout << "reduced channel over";
    for (const auto& l : r.reduced.labels_y) std::cout << " " << l;
    std::cout << "\n";
    for (std::size_t x = 0; x < r.reduced.rows.size(); ++x) {
      std::cout << std::left << std::setw(10) << joint.x_label(x);
      for (const Scalar& e : r.reduced.rows[x]) {
        std::cout << std::setw(12) << e.str();
      }
      std::cout << "\n";
    }
    if (!r.dropped.empty()) {
      std::cout << "dropped zero-mass outcomes:";
      for (std::size_t y : r.dropped) std::cout << " " << joint.y_label(y);
      std::cout << "\n";
    }
  });
  return 0;
}

int cmd_compose(const CommonArgs& args, const std::string& second_path) {
  const pml::ModelDocument m = load_model(args);
  const Mode mode = m.prior.mode;
  const auto stages = pml::stages_from_json(read_json_file(second_path), mode);
  const Joint composed = pml::compose_adaptive(m.prior, m.channel, stages);
  Json zero_mass = Json::array();
  for (std::size_t y = 0; y < composed.num_y(); ++y) {
    if (!composed.y_supported(y)) zero_mass.push_back(composed.y_label(y));
  }
  Json doc{{"schema_version", kSchemaVersion},
           {"command", "compose"},
           {"entries", distribution_json(composed)},
           {"zero_mass_pairs", zero_mass}};
  emit(args, doc, [&] {
    print_distribution_table(composed);
    if (!zero_mass.empty()) {
      std::cout << "(zero-mass pairs:";
      for (const auto& l : zero_mass) std::cout << " " << l.get<std::string>();
      std::cout << ")\n";
    }
  });
  return 0;
}

Json measure_report(const Joint& joint, const std::string& name,
                    const std::string& delta_text) {
  const Mode mode = joint.mode();
  Json r{{"measure", name}};
  if (name == "ldp" || name == "lip" || name == "ldi") {
    pml::MeasureValue v = name == "ldp" ? pml::ldp_epsilon(joint.channel())
                          : name == "lip" ? pml::lip_epsilon(joint)
                                          : pml::ldi_epsilon(joint);
    r["value"] = v.str();
    if (!v.infinite) {
      const pml::LocalNotion kind = name == "ldp" ? pml::LocalNotion::kLdp
                                    : name == "lip" ? pml::LocalNotion::kLip
                                                    : pml::LocalNotion::kLdi;
      const Scalar b = pml::implied_pml_bound(kind, v, joint.prior());
      r["implied_pml_bound"] = b.str();
      r["implied_pml_bound_log"] = b.log_value();
    }
  } else if (name == "mi") {
    r["value"] = pml::mutual_information(joint);
    r["expected_leakage_bound"] = pml::expected_leakage_nats(joint);
  } else if (name == "tv") {
    const Scalar t = pml::total_variation_privacy(joint);
    const Scalar eps = pml::max_information(joint);
    const pml::TvBounds b = pml::tv_bounds(joint, eps, Scalar::zero(mode));
    r["value"] = t.str();
    r["ml_bound"] = b.ml_bound.str();
    r["regime_bound"] = b.regime_bound.str();
    r["pointwise_bound"] = b.pointwise_bound.str();
    r["cardinality_bound"] = b.cardinality_bound.str();
  } else if (name == "maxinfo") {
    r["value"] = pml::max_information(joint).str();
    if (!delta_text.empty()) {
      const Scalar delta = Scalar::parse(delta_text, mode);
      try {
        r["approx_value"] = pml::approx_max_information(joint, delta).str();
      } catch (const pml::TooLargeForBruteForce& e) {
        r["approx_bound"] = e.fallback_bound.str();
        r["note"] = e.what();
      }
    }
  } else if (name.rfind("fdiv:", 0) == 0) {
    const pml::FKind f = pml::parse_f_kind(name.substr(5));
    r["value"] = pml::f_information(joint, f);
    r["pml_bound"] = pml::f_info_pml_bound(joint, f);
  } else {
    throw pml::ValidationError("unknown measure \"" + name + "\"");
  }
  return r;
}

int cmd_compare(const CommonArgs& args, const std::string& against,
                const std::string& delta_text) {
  const pml::ModelDocument m = load_model(args);
  const Joint joint = pml::validate_model(m.prior, m.channel);
  std::vector<std::string> names;
  std::stringstream ss(against);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) names.push_back(item);
  }
  if (names.empty()) {
    throw pml::ValidationError("--against needs at least one measure");
  }
  Json reports = Json::array();
  for (const auto& n : names) {
    reports.push_back(measure_report(joint, n, delta_text));
  }
  Json doc{{"schema_version", kSchemaVersion},
           {"command", "compare"},
           {"reports", reports}};
  emit(args, doc, [&] {
    for (const auto& r : reports) {
      std::cout << r.at("measure").get<std::string>() << ": ";
      for (const auto& [k, v] : r.items()) {
        if (k == "measure") continue;
        std::cout << k << "=" << (v.is_string() ? v.get<std::string>()
                                                : v.dump())
                  << "  ";
      }
      std::cout << "\n";
    }
  });
  return 0;
}

int cmd_audit(const CommonArgs& args, const std::string& eps_text,
              const std::vector<std::string>& delta_texts) {
  const auto start = std::chrono::steady_clock::now();
  const pml::ModelDocument m = load_model(args);
  const Joint joint = pml::validate_model(m.prior, m.channel);
  const Mode mode = joint.mode();

  Json guarantees = Json::array();
  std::vector<std::string> deltas = delta_texts;
  if (deltas.empty()) deltas = {"0"};
  for (const auto& dt : deltas) {
    const Scalar delta = Scalar::parse(dt, mode);
    Json g{{"delta", delta.str()}};
    const pml::MinEpsResult me = pml::min_eps_for_delta_pml(joint, delta);
    g["min_epsilon_ratio"] = me.eps_ratio.str();
    g["min_epsilon_log"] = me.eps_ratio.log_value();
    if (!delta.is_zero()) {
      g["kappa_ratio"] = pml::eml_kappa(joint, delta).kappa.str();
    }
    if (!eps_text.empty()) {
      const Scalar eps = pml::parse_epsilon(eps_text, mode);
      g["pml_report"] = guarantee_json(
          joint, delta.is_zero() ? pml::check_eps_pml(joint, eps)
                                 : pml::check_eps_delta_pml(joint, eps, delta));
      g["eml_report"] =
          guarantee_json(joint, pml::check_eps_delta_eml(joint, eps, delta));
    }
    guarantees.push_back(g);
  }

  Json measures = Json::array();
  for (const std::string& n :
       {std::string("ldp"), std::string("lip"), std::string("ldi"),
        std::string("mi"), std::string("tv"), std::string("maxinfo")}) {
    measures.push_back(measure_report(joint, n, ""));
  }

  const auto stop = std::chrono::steady_clock::now();
  Json doc{{"schema_version", kSchemaVersion},
           {"command", "audit"},
           {"digest", model_digest(m)},
           {"seed", args.seed},
           {"model", pml::model_to_json(m)},
           {"leakage_distribution", distribution_json(joint)},
           {"guarantees", guarantees},
           {"measures", measures},
           {"timing_ms",
            std::chrono::duration<double, std::milli>(stop - start).count()}};
  emit(args, doc, [&] {
    std::cout << "model digest " << doc.at("digest").get<std::string>()
              << "\n";
    print_distribution_table(joint);
    for (const auto& g : guarantees) {
      std::cout << "delta " << g.at("delta").get<std::string>()
                << ": min epsilon "
                << g.at("min_epsilon_ratio").get<std::string>();
      if (g.contains("kappa_ratio")) {
        std::cout << ", kappa " << g.at("kappa_ratio").get<std::string>();
      }
      std::cout << "\n";
    }
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pointwise-maximal-leakage auditor for finite mechanisms"};
  app.require_subcommand(1);

  CommonArgs common;
  std::string eps_text, delta_text, second_path, against;
  std::vector<std::string> delta_list;

  CLI::App* c_pml = app.add_subcommand("pml", "leakage distribution");
  add_common(c_pml, &common);

  CLI::App* c_eml = app.add_subcommand("eml", "event maximal leakage");
  add_common(c_eml, &common);
  c_eml->add_option("--delta", delta_text, "event probability threshold")
      ->required();

  CLI::App* c_guar = app.add_subcommand("guarantee", "guarantee checks");
  add_common(c_guar, &common);
  c_guar->add_option("--epsilon", eps_text, "ratio \"a/b\" or \"log:x.y\"");
  c_guar->add_option("--delta", delta_text, "tail mass");

  CLI::App* c_red = app.add_subcommand("reduce", "reduced channel");
  add_common(c_red, &common);

  CLI::App* c_comp = app.add_subcommand("compose", "adaptive composition");
  add_common(c_comp, &common);
  c_comp->add_option("--second", second_path, "stage JSON file")->required();

  CLI::App* c_cmp = app.add_subcommand("compare", "cross-measure reports");
  add_common(c_cmp, &common);
  c_cmp->add_option("--against", against,
                    "comma list: ldp,lip,ldi,mi,tv,maxinfo,fdiv:kl|tv|chi2")
      ->required();
  c_cmp->add_option("--delta", delta_text, "delta for approximate measures");

  CLI::App* c_audit = app.add_subcommand("audit", "full audit report");
  add_common(c_audit, &common);
  c_audit->add_option("--epsilon", eps_text, "ratio \"a/b\" or \"log:x.y\"");
  c_audit->add_option("--delta", delta_list, "delta grid (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (c_pml->parsed()) return cmd_pml(common);
    if (c_eml->parsed()) return cmd_eml(common, delta_text);
    if (c_guar->parsed()) return cmd_guarantee(common, eps_text, delta_text);
    if (c_red->parsed()) return cmd_reduce(common);
    if (c_comp->parsed()) return cmd_compose(common, second_path);
    if (c_cmp->parsed()) return cmd_compare(common, against, delta_text);
    if (c_audit->parsed()) return cmd_audit(common, eps_text, delta_list);
  } catch (const pml::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const pml::ComputationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
