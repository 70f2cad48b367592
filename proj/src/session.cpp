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

#include "droidtrace/session.hpp"

#include <chrono>
#include <sstream>

#include "droidtrace/error.hpp"
#include "droidtrace/text.hpp"

namespace droidtrace {

using nlohmann::ordered_json;

std::string_view to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::kInstallError: return "install-error";
    case FailureReason::kLaunchError: return "launch-error";
    case FailureReason::kNoOutputPolicy: return "no-output-policy";
    case FailureReason::kInternal: return "internal";
  }
  return "?";
}

FailureReason failure_reason_from_string(std::string_view text) {
  if (text == "install-error") return FailureReason::kInstallError;
  if (text == "launch-error") return FailureReason::kLaunchError;
  if (text == "no-output-policy") return FailureReason::kNoOutputPolicy;
  if (text == "internal") return FailureReason::kInternal;
  throw ParseError("unknown failure reason: '" + std::string(text) + "'");
}

namespace {

std::int64_t elapsed_ms_since(
    std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

SessionResult failed_result(std::string app_id, FailureReason reason,
                            std::int64_t duration_ms) {
  SessionResult r;
  r.app_id = std::move(app_id);
  r.completed = false;
  r.failure = reason;
  r.duration_ms = duration_ms;
  return r;
}

}  // namespace

SessionResult run_session(DeviceEndpoint& device, const AppDescriptor& app,
                          const ExercisePlan& plan, std::int64_t timeout_ms,
                          bool fail_when_silent) {
  if (timeout_ms <= 0) throw ValidationError("timeout_ms must be positive");
  const auto start = std::chrono::steady_clock::now();

  try {
    device.install(app);
  } catch (const InstallError&) {
    return failed_result(app.package, FailureReason::kInstallError,
                         elapsed_ms_since(start));
  } catch (const std::exception&) {
    return failed_result(app.package, FailureReason::kInternal,
                         elapsed_ms_since(start));
  }

  try {
    for (const std::string& component : plan.launch_order) {
      device.launch(component);
    }
  } catch (const LaunchError&) {
    return failed_result(app.package, FailureReason::kLaunchError,
                         elapsed_ms_since(start));
  } catch (const std::exception&) {
    return failed_result(app.package, FailureReason::kInternal,
                         elapsed_ms_since(start));
  }

  try {
    for (const UiEvent& event : plan.events) {
      if (elapsed_ms_since(start) >= timeout_ms) break;  // session budget spent
      device.send_event(event);
    }

    SessionArtifacts artifacts;
    artifacts.entries = device.read_log_stream();
    // Streams are expected monotonic; clamp any stray regressions so the
    // timestamp invariant holds for downstream consumers.
    for (std::size_t i = 1; i < artifacts.entries.size(); ++i) {
      if (artifacts.entries[i].timestamp_ms <
          artifacts.entries[i - 1].timestamp_ms) {
        artifacts.entries[i].timestamp_ms =
            artifacts.entries[i - 1].timestamp_ms;
      }
    }

    for (const LogEntry& entry : artifacts.entries) {
      if (entry.tag != kApiMonitorTag) continue;
      try {
        artifacts.api_calls.push_back(parse_api_call_payload(entry.payload));
      } catch (const ParseError&) {
        // Malformed payloads are skipped, not fatal.
      }
    }

    artifacts.report = device.read_behavior_report();
    for (const LogEntry& entry : artifacts.entries) {
      if (entry.tag != kDroidBoxTag) continue;
      try {
        artifacts.report.merge_fragment(parse_behavior_report(entry.payload));
      } catch (const ParseError&) {
      }
    }

    artifacts.duration_ms = elapsed_ms_since(start);

    if (fail_when_silent && artifacts.entries.empty() &&
        artifacts.report.empty()) {
      return failed_result(app.package, FailureReason::kNoOutputPolicy,
                           artifacts.duration_ms);
    }

    SessionResult result;
    result.app_id = app.package;
    result.completed = true;
    result.duration_ms = artifacts.duration_ms;
    result.artifacts = std::move(artifacts);
    return result;
  } catch (const std::exception&) {
    return failed_result(app.package, FailureReason::kInternal,
                         elapsed_ms_since(start));
  }
}

std::vector<SessionResult> run_batch(DeviceEndpoint& device,
                                     const std::vector<LabeledApp>& corpus,
                                     const BatchConfig& config) {
  if (config.profile) apply_profile(device, *config.profile);

  // All apps share one generated stream; plans differ only in launch order.
  ExercisePlan plan;
  plan.events = generate_event_stream(config.seed, config.event_count,
                                      config.screen, config.mix);
  plan.seed = config.seed;
  plan.event_count = plan.events.size();

  std::vector<SessionResult> results;
  results.reserve(corpus.size());
  for (const LabeledApp& item : corpus) {
    device.reset();
    SessionResult result;
    try {
      plan.launch_order = enumerate_components(item.app);
      result = run_session(device, item.app, plan, config.timeout_ms,
                           config.fail_when_silent);
    } catch (const std::exception&) {
      result = failed_result(item.app.package, FailureReason::kInternal, 0);
    }
    result.label = item.label;
    results.push_back(std::move(result));
  }

  if (config.catalog) attach_features(results, *config.catalog);
  return results;
}

namespace {

void attach_one(SessionResult& result, const FeatureCatalog& catalog) {
  if (!result.completed) return;
  if (result.artifacts) {
    result.features = extract_features(result.artifacts->report,
                                       result.artifacts->api_calls, catalog,
                                       result.app_id);
  } else if (!result.features) {
    throw ValidationError("completed result for '" + result.app_id +
                          "' has neither artifacts nor a feature vector");
  } else if (result.features->counts.size() != catalog.size()) {
    throw ValidationError("stored feature vector for '" + result.app_id +
                          "' does not match the catalog size");
  }
}

}  // namespace

void attach_features_serial(std::vector<SessionResult>& results,
                            const FeatureCatalog& catalog) {
  for (SessionResult& result : results) attach_one(result, catalog);
}

void attach_features(std::vector<SessionResult>& results,
                     const FeatureCatalog& catalog) {
#ifdef _OPENMP
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(results.size()); ++i) {
    try {
      attach_one(results[static_cast<std::size_t>(i)], catalog);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
#else
  attach_features_serial(results, catalog);
#endif
}

std::vector<SensitivityRow> profile_sensitivity_run(
    DeviceEndpoint& device, const std::vector<AppDescriptor>& apps,
    const DeviceProfile& default_profile, const DeviceProfile& enhanced_profile,
    const FeatureCatalog& catalog, const BatchConfig& base_config) {
  std::vector<LabeledApp> corpus;
  corpus.reserve(apps.size());
  for (const AppDescriptor& app : apps) corpus.push_back({app, "sample"});

  auto incidence = [&catalog](const std::vector<SessionResult>& results) {
    std::vector<std::uint32_t> counts(catalog.size(), 0);
    for (const SessionResult& r : results) {
      if (!r.completed || !r.features) continue;
      for (std::size_t f = 0; f < catalog.size(); ++f) {
        if (r.features->counts[f] > 0) ++counts[f];
      }
    }
    return counts;
  };

  BatchConfig config = base_config;
  config.catalog = &catalog;

  config.profile = default_profile;
  std::vector<std::uint32_t> before = incidence(run_batch(device, corpus, config));

  config.profile = enhanced_profile;
  std::vector<std::uint32_t> after = incidence(run_batch(device, corpus, config));

  std::vector<SensitivityRow> rows;
  rows.reserve(catalog.size());
  for (FeatureId id = 0; id < catalog.size(); ++id) {
    rows.push_back({catalog.def(id).name, before[id], after[id]});
  }
  return rows;
}

std::string render_sensitivity_table(const std::vector<SensitivityRow>& rows,
                                     bool nonzero_only) {
  std::size_t width = 8;
  for (const SensitivityRow& row : rows) {
    if (nonzero_only && row.before == 0 && row.after == 0) continue;
    width = std::max(width, row.feature.size());
  }
  std::ostringstream out;
  out << "feature";
  out << std::string(width - 7, ' ') << "  before  after\n";
  for (const SensitivityRow& row : rows) {
    if (nonzero_only && row.before == 0 && row.after == 0) continue;
    out << row.feature << std::string(width - row.feature.size(), ' ');
    std::string b = std::to_string(row.before);
    std::string a = std::to_string(row.after);
    out << "  " << std::string(6 - std::min<std::size_t>(6, b.size()), ' ') << b;
    out << "  " << std::string(5 - std::min<std::size_t>(5, a.size()), ' ') << a;
    out << '\n';
  }
  return std::move(out).str();
}

ordered_json session_result_to_json(const SessionResult& result) {
  ordered_json out = ordered_json::object();
  out["app_id"] = result.app_id;
  out["label"] = result.label;
  out["status"] = result.completed ? "completed" : "failed";
  if (result.failure) out["reason"] = std::string(to_string(*result.failure));
  out["duration_ms"] = result.duration_ms;
  if (result.features) {
    out["features"] = result.features->counts;
  }
  return out;
}

SessionResult session_result_from_json(const ordered_json& doc) {
  if (!doc.is_object() || !doc.contains("app_id") || !doc.contains("status")) {
    throw ParseError("result row must be an object with app_id and status");
  }
  SessionResult result;
  result.app_id = doc["app_id"].get<std::string>();
  if (doc.contains("label")) result.label = doc["label"].get<std::string>();
  std::string status = doc["status"].get<std::string>();
  if (status == "completed") {
    result.completed = true;
  } else if (status == "failed") {
    result.completed = false;
    if (doc.contains("reason")) {
      result.failure =
          failure_reason_from_string(doc["reason"].get<std::string>());
    } else {
      result.failure = FailureReason::kInternal;
    }
  } else {
    throw ParseError("unknown result status: '" + status + "'");
  }
  if (doc.contains("duration_ms")) {
    result.duration_ms = doc["duration_ms"].get<std::int64_t>();
  }
  if (doc.contains("features")) {
    if (!doc["features"].is_array()) {
      throw ParseError("result 'features' must be an array of counts");
    }
    FeatureVector v;
    v.app_id = result.app_id;
    for (const auto& c : doc["features"]) {
      v.counts.push_back(c.get<std::uint32_t>());
    }
    result.features = std::move(v);
  }
  return result;
}

std::string session_results_to_jsonl(const std::vector<SessionResult>& results) {
  std::string out;
  for (const SessionResult& result : results) {
    out += session_result_to_json(result).dump();
    out += '\n';
  }
  return out;
}

std::vector<SessionResult> session_results_from_jsonl(std::string_view text) {
  std::vector<SessionResult> results;
  int lineno = 0;
  for (std::string_view raw : split_lines(text)) {
    ++lineno;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    ordered_json doc =
        ordered_json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
      throw ParseError("results line " + std::to_string(lineno) +
                       ": malformed JSON");
    }
    results.push_back(session_result_from_json(doc));
  }
  return results;
}

}  // namespace droidtrace
