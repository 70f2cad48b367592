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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "droidtrace/api_call.hpp"
#include "droidtrace/behavior_report.hpp"
#include "droidtrace/device.hpp"
#include "droidtrace/exerciser.hpp"
#include "droidtrace/feature_catalog.hpp"
#include "droidtrace/feature_extract.hpp"
#include "droidtrace/log_entry.hpp"
#include "json.hpp"

namespace droidtrace {

inline constexpr std::int64_t kDefaultSessionTimeoutMs = 180000;

// Everything collected from one session. api_calls derive only from
// ApiMonitor-tagged entries; DroidBox-tagged JSON fragments are merged into
// the report.
struct SessionArtifacts {
  std::vector<LogEntry> entries;
  std::vector<ApiCallRecord> api_calls;
  BehaviorReport report;
  std::int64_t duration_ms = 0;
};

enum class FailureReason { kInstallError, kLaunchError, kNoOutputPolicy, kInternal };

std::string_view to_string(FailureReason reason);
FailureReason failure_reason_from_string(std::string_view text);

struct SessionResult {
  std::string app_id;
  std::string label;
  bool completed = false;
  std::optional<FailureReason> failure;    // set iff !completed
  std::optional<SessionArtifacts> artifacts;  // set iff completed
  std::optional<FeatureVector> features;
  std::int64_t duration_ms = 0;
};

// Runs one session: install, launch components in plan order, send events
// until the timeout budget elapses, then collect artifacts. Install/launch
// failures yield a Failed result instead of propagating; sessions with no
// output complete normally unless fail_when_silent is set.
SessionResult run_session(DeviceEndpoint& device, const AppDescriptor& app,
                          const ExercisePlan& plan,
                          std::int64_t timeout_ms = kDefaultSessionTimeoutMs,
                          bool fail_when_silent = false);

struct LabeledApp {
  AppDescriptor app;
  std::string label;
};

struct BatchConfig {
  std::int64_t timeout_ms = kDefaultSessionTimeoutMs;
  std::size_t event_count = kMaxEvents;
  std::uint64_t seed = 0;
  ScreenBounds screen{};
  EventMix mix{};
  std::optional<DeviceProfile> profile;   // applied once, before any session
  const FeatureCatalog* catalog = nullptr;  // features attached when set
  bool fail_when_silent = false;
};

// Runs one session per corpus entry, input order preserved, device reset
// between sessions. Per-app failures are captured in the results and never
// abort the batch. When a catalog is configured, features are extracted for
// every completed session after the (strictly serial) device loop; the
// extraction pass is data-parallel.
std::vector<SessionResult> run_batch(DeviceEndpoint& device,
                                     const std::vector<LabeledApp>& corpus,
                                     const BatchConfig& config);

// Extracts (or re-derives) feature vectors for completed results. Results
// with artifacts are recomputed from them; results carrying only a stored
// vector keep it. OpenMP-parallel across results when available;
// attach_features_serial is the reference implementation.
void attach_features(std::vector<SessionResult>& results,
                     const FeatureCatalog& catalog);
void attach_features_serial(std::vector<SessionResult>& results,
                            const FeatureCatalog& catalog);

struct SensitivityRow {
  std::string feature;
  std::uint32_t before = 0;
  std::uint32_t after = 0;
};

// Runs the app set once under each profile and reports per-feature app
// incidence (binarized) before and after, aligned to catalog order.
std::vector<SensitivityRow> profile_sensitivity_run(
    DeviceEndpoint& device, const std::vector<AppDescriptor>& apps,
    const DeviceProfile& default_profile, const DeviceProfile& enhanced_profile,
    const FeatureCatalog& catalog, const BatchConfig& base_config = {});

std::string render_sensitivity_table(const std::vector<SensitivityRow>& rows,
                                     bool nonzero_only = true);

// Stored result row (one JSON object per line). Artifacts are not stored;
// per-app report files carry the raw echoes.
nlohmann::ordered_json session_result_to_json(const SessionResult& result);
SessionResult session_result_from_json(const nlohmann::ordered_json& doc);
std::string session_results_to_jsonl(const std::vector<SessionResult>& results);
std::vector<SessionResult> session_results_from_jsonl(std::string_view text);

}  // namespace droidtrace
