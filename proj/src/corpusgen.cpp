/*
 * Copyright (C) 2026 The DroidTrace Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "droidtrace/corpusgen.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "droidtrace/error.hpp"
#include "droidtrace/io.hpp"
#include "droidtrace/text.hpp"

namespace droidtrace {

using nlohmann::ordered_json;

namespace {

std::string padded(std::uint32_t n) {
  std::string s = std::to_string(n);
  while (s.size() < 4) s.insert(s.begin(), '0');
  return s;
}

ordered_json descriptor_json(const std::string& package) {
  return ordered_json{{"package", package},
                      {"main_activity", "Main"},
                      {"activities", ordered_json::array({"Main"})},
                      {"services", ordered_json::array()}};
}

AppDescriptor descriptor_from_json(const ordered_json& doc) {
  return parse_app_descriptor(doc.dump());
}

AppBundle assemble_bundle(const std::string& label,
                          const ordered_json& descriptor,
                          const ordered_json& script) {
  AppBundle bundle;
  bundle.label = label;
  bundle.bundle_json = ordered_json{
      {"label", label}, {"descriptor", descriptor}, {"script", script}};
  bundle.descriptor = descriptor_from_json(descriptor);
  bundle.script = sim_script_from_json(script);
  return bundle;
}

std::string api_monitor_line(std::int64_t ts, const std::string& payload) {
  return std::to_string(ts) + " ApiMonitor: " + payload;
}

std::string droidbox_line(std::int64_t ts, const ordered_json& fragment) {
  return std::to_string(ts) + " DroidBox: " + fragment.dump();
}

// A log line whose extraction lands exactly on `def`, usable both
// unconditionally (on_launch) and in conditional blocks.
std::string feature_line(const FeatureDef& def, const FeatureCatalog& catalog,
                         std::int64_t ts, std::uint32_t salt) {
  switch (def.kind) {
    case FeatureKind::kApiCall:
      return api_monitor_line(
          ts, sample_payload_for(catalog.signatures().at(def.signature_ids[0])));
    case FeatureKind::kIntentAction: {
      ordered_json fragment = ordered_json::object();
      fragment["recvaction"] = ordered_json::array(
          {ordered_json::array({"com.gen.Receiver" + std::to_string(salt),
                                "android.intent.action." + def.event_name})});
      return droidbox_line(ts, fragment);
    }
    case FeatureKind::kReportKey: {
      ordered_json fragment = ordered_json::object();
      if (def.report_key == "recvaction") {
        // A pair with an untracked action touches the section without
        // lighting any broadcast-event feature.
        fragment["recvaction"] = ordered_json::array({ordered_json::array(
            {"com.gen.Receiver" + std::to_string(salt), "com.gen.CUSTOM"})});
      } else {
        fragment[def.report_key] =
            ordered_json::array({ordered_json{{"seq", salt}}});
      }
      return droidbox_line(ts, fragment);
    }
  }
  throw ValidationError("unreachable feature kind");
}

// Adds one occurrence of `def` to an inline behavior report object.
void add_report_contribution(ordered_json& report, const FeatureDef& def,
                             std::uint32_t salt) {
  if (def.kind == FeatureKind::kIntentAction) {
    if (!report.contains("recvaction")) {
      report["recvaction"] = ordered_json::array();
    }
    report["recvaction"].push_back(
        ordered_json::array({"com.gen.Receiver" + std::to_string(salt),
                             "android.intent.action." + def.event_name}));
    return;
  }
  if (def.report_key == "recvaction") {
    if (!report.contains("recvaction")) {
      report["recvaction"] = ordered_json::array();
    }
    report["recvaction"].push_back(ordered_json::array(
        {"com.gen.Receiver" + std::to_string(salt), "com.gen.CUSTOM"}));
    return;
  }
  if (!report.contains(def.report_key)) {
    report[def.report_key] = ordered_json::array();
  }
  report[def.report_key].push_back(ordered_json{{"seq", salt}});
}

}  // namespace

std::string sample_payload_for(const ApiSignature& sig) {
  std::string out = render_field_descriptor(sig.owner);
  out += "->";
  out += sig.method;
  out += '(';
  if (sig.proto) {
    for (std::size_t i = 0; i < sig.proto->params.size(); ++i) {
      if (i > 0) out += '|';
      out += render_field_descriptor(sig.proto->params[i]);
      out += ":=x";
    }
  }
  out += ')';
  if (sig.proto && sig.proto->return_type) {
    out += render_field_descriptor(*sig.proto->return_type);
    out += ":=x";
  } else {
    out += 'V';
  }
  return out;
}

AppBundle bundle_from_json(const ordered_json& doc) {
  if (!doc.is_object() || !doc.contains("descriptor")) {
    throw ParseError("app bundle must be an object with a 'descriptor'");
  }
  AppBundle bundle;
  bundle.bundle_json = doc;
  bundle.label = doc.contains("label") ? doc["label"].get<std::string>()
                                       : std::string("unlabeled");
  if (!is_safe_identifier(bundle.label)) {
    throw ParseError("label must match [A-Za-z0-9._-]+: '" + bundle.label +
                     "'");
  }
  bundle.descriptor = descriptor_from_json(doc["descriptor"]);
  if (doc.contains("script")) {
    bundle.script = sim_script_from_json(doc["script"]);
  }
  return bundle;
}

std::vector<AppBundle> load_corpus_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw ValidationError("corpus directory does not exist: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) {
              return a.filename().string() < b.filename().string();
            });

  std::vector<AppBundle> bundles;
  std::set<std::string> packages;
  for (const auto& file : files) {
    ordered_json doc = ordered_json::parse(read_text_file(file), nullptr,
                                           /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
      throw ParseError("malformed JSON in bundle: " + file.string());
    }
    AppBundle bundle;
    try {
      bundle = bundle_from_json(doc);
    } catch (const ParseError& e) {
      throw ParseError(file.string() + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(file.string() + ": " + e.what());
    }
    if (!packages.insert(bundle.descriptor.package).second) {
      throw ValidationError("duplicate package in corpus: '" +
                            bundle.descriptor.package + "'");
    }
    bundles.push_back(std::move(bundle));
  }
  return bundles;
}

void write_corpus_dir(const std::vector<AppBundle>& bundles,
                      const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const AppBundle& bundle : bundles) {
    write_text_file(dir / (bundle.descriptor.package + ".json"),
                    bundle.bundle_json.dump(2) + "\n");
  }
}

std::vector<LabeledApp> stage_corpus(SimDevice& device,
                                     const std::vector<AppBundle>& bundles) {
  std::vector<LabeledApp> corpus;
  corpus.reserve(bundles.size());
  for (const AppBundle& bundle : bundles) {
    device.register_app(bundle.descriptor.package, bundle.script);
    corpus.push_back({bundle.descriptor, bundle.label});
  }
  return corpus;
}

std::vector<AppBundle> build_incidence_corpus(
    const std::vector<std::string>& labels, std::uint32_t apps_per_label,
    const std::vector<FeatureIncidence>& targets,
    const FeatureCatalog& catalog) {
  // Resolve and validate targets up front.
  struct Resolved {
    FeatureId id;
    std::map<std::string, std::uint32_t> per_label;
  };
  std::vector<Resolved> resolved;
  for (const FeatureIncidence& target : targets) {
    auto id = catalog.find(target.feature);
    if (!id) {
      throw ValidationError("incidence target names unknown feature '" +
                            target.feature + "'");
    }
    for (const auto& [label, count] : target.per_label) {
      if (count > apps_per_label) {
        throw ValidationError("incidence for '" + target.feature +
                              "' exceeds apps per label");
      }
      if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
        throw ValidationError("incidence target names unknown label '" +
                              label + "'");
      }
    }
    resolved.push_back({*id, target.per_label});
  }

  std::vector<AppBundle> bundles;
  bundles.reserve(static_cast<std::size_t>(apps_per_label) * labels.size());
  for (const std::string& label : labels) {
    if (!is_safe_identifier(label)) {
      throw ValidationError("label must match [A-Za-z0-9._-]+: '" + label +
                            "'");
    }
    for (std::uint32_t j = 0; j < apps_per_label; ++j) {
      const std::string package = label + ".app" + padded(j);
      ordered_json script = ordered_json::object();
      ordered_json launch_lines = ordered_json::array();
      ordered_json report = ordered_json::object();
      std::int64_t ts = 100;
      for (const Resolved& target : resolved) {
        auto it = target.per_label.find(label);
        std::uint32_t count = it == target.per_label.end() ? 0 : it->second;
        if (j >= count) continue;  // apps 0..count-1 exhibit the feature
        const FeatureDef& def = catalog.def(target.id);
        if (def.kind == FeatureKind::kApiCall) {
          launch_lines.push_back(feature_line(def, catalog, ts, j));
          ts += 10;
        } else {
          add_report_contribution(report, def, j);
        }
      }
      if (!launch_lines.empty()) script["on_launch"] = std::move(launch_lines);
      if (!report.empty()) script["behavior_report"] = std::move(report);
      bundles.push_back(assemble_bundle(label, descriptor_json(package), script));
    }
  }
  return bundles;
}

std::vector<AppBundle> build_sensitivity_corpus(
    std::uint32_t app_count, const std::vector<SensitivityIncidence>& targets,
    const FeatureCatalog& catalog, std::string_view label) {
  for (const SensitivityIncidence& target : targets) {
    if (!catalog.find(target.feature)) {
      throw ValidationError("sensitivity target names unknown feature '" +
                            target.feature + "'");
    }
    if (target.unconditional + target.conditional > app_count) {
      throw ValidationError("sensitivity counts for '" + target.feature +
                            "' exceed the app count");
    }
  }

  std::vector<AppBundle> bundles;
  bundles.reserve(app_count);
  for (std::uint32_t i = 0; i < app_count; ++i) {
    const std::string package =
        std::string(label) + ".app" + padded(i);
    ordered_json launch_lines = ordered_json::array();
    ordered_json conditional_lines = ordered_json::array();
    std::int64_t ts = 100;
    for (const SensitivityIncidence& target : targets) {
      const FeatureDef& def = catalog.def(*catalog.find(target.feature));
      if (i < target.unconditional) {
        launch_lines.push_back(feature_line(def, catalog, ts, i));
        ts += 10;
      } else if (i < target.unconditional + target.conditional) {
        conditional_lines.push_back(feature_line(def, catalog, ts, i));
        ts += 10;
      }
    }
    ordered_json script = ordered_json::object();
    if (!launch_lines.empty()) script["on_launch"] = std::move(launch_lines);
    if (!conditional_lines.empty()) {
      script["profile_conditional"] = ordered_json::array(
          {ordered_json{{"requires", std::string(kRequiresRealisticImei)},
                        {"lines", std::move(conditional_lines)}}});
    }
    bundles.push_back(assemble_bundle(std::string(label),
                                      descriptor_json(package), script));
  }
  return bundles;
}

std::vector<AppBundle> build_stress_corpus(std::uint32_t app_count,
                                           std::uint32_t calls_per_app,
                                           const FeatureCatalog& catalog,
                                           std::uint64_t seed) {
  std::vector<const FeatureDef*> api_defs;
  for (const FeatureDef& def : catalog.defs()) {
    if (def.kind == FeatureKind::kApiCall) api_defs.push_back(&def);
  }
  if (api_defs.empty()) {
    throw ValidationError("catalog has no api-call features");
  }

  std::mt19937_64 rng(seed);
  std::vector<AppBundle> bundles;
  bundles.reserve(app_count);
  for (std::uint32_t i = 0; i < app_count; ++i) {
    const std::string package = "stress.app" + padded(i);
    ordered_json launch_lines = ordered_json::array();
    std::int64_t ts = 100;
    for (std::uint32_t c = 0; c < calls_per_app; ++c) {
      const FeatureDef& def = *api_defs[rng() % api_defs.size()];
      const ApiSignature& sig = catalog.signatures().at(
          def.signature_ids[rng() % def.signature_ids.size()]);
      launch_lines.push_back(api_monitor_line(ts, sample_payload_for(sig)));
      ts += 1;
    }
    ordered_json report = ordered_json::object();
    report["servicestart"] =
        ordered_json::array({ordered_json{{"seq", i}}});
    report["recvaction"] = ordered_json::array(
        {ordered_json::array({"com.stress.Receiver",
                              "android.intent.action.BOOT_COMPLETED"})});
    ordered_json script = ordered_json::object();
    script["on_launch"] = std::move(launch_lines);
    script["behavior_report"] = std::move(report);
    bundles.push_back(assemble_bundle("stress", descriptor_json(package), script));
  }
  return bundles;
}

}  // namespace droidtrace
