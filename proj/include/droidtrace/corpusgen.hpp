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
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "droidtrace/exerciser.hpp"
#include "droidtrace/feature_catalog.hpp"
#include "droidtrace/session.hpp"
#include "droidtrace/sim_device.hpp"
#include "json.hpp"

namespace droidtrace {

// One corpus entry: app metadata plus its scripted behavior. bundle_json is
// the on-disk form {label, descriptor, script}.
struct AppBundle {
  AppDescriptor descriptor;
  SimAppScript script;
  std::string label;
  nlohmann::ordered_json bundle_json;
};

AppBundle bundle_from_json(const nlohmann::ordered_json& doc);

// Reads every *.json in `dir` (sorted by filename) as an app bundle and
// rejects duplicate package names.
std::vector<AppBundle> load_corpus_dir(const std::filesystem::path& dir);

// Writes one <package>.json per bundle.
void write_corpus_dir(const std::vector<AppBundle>& bundles,
                      const std::filesystem::path& dir);

// Registers every bundle's script on the device and returns the labeled
// descriptor list in bundle order.
std::vector<LabeledApp> stage_corpus(SimDevice& device,
                                     const std::vector<AppBundle>& bundles);

// Target per-label app counts for one feature.
struct FeatureIncidence {
  std::string feature;                          // catalog feature name
  std::map<std::string, std::uint32_t> per_label;  // label -> app count
};

// Builds `apps_per_label` scripted apps per label whose per-feature app
// incidence equals the targets exactly: within a label, apps 0..count-1
// exhibit the feature once. Counts above apps_per_label are rejected.
std::vector<AppBundle> build_incidence_corpus(
    const std::vector<std::string>& labels, std::uint32_t apps_per_label,
    const std::vector<FeatureIncidence>& targets, const FeatureCatalog& catalog);

// Per-feature targets for a profile-sensitivity corpus: `unconditional`
// apps always exhibit the feature, the next `conditional` apps exhibit it
// only when the device identity looks realistic.
struct SensitivityIncidence {
  std::string feature;
  std::uint32_t unconditional = 0;
  std::uint32_t conditional = 0;
};

std::vector<AppBundle> build_sensitivity_corpus(
    std::uint32_t app_count, const std::vector<SensitivityIncidence>& targets,
    const FeatureCatalog& catalog, std::string_view label = "sample");

// Deterministic load-test corpus: every app emits `calls_per_app` monitored
// call lines plus a small report. Used by the benchmark.
std::vector<AppBundle> build_stress_corpus(std::uint32_t app_count,
                                           std::uint32_t calls_per_app,
                                           const FeatureCatalog& catalog,
                                           std::uint64_t seed);

// A log payload that match_call resolves to this signature: wildcards get
// an empty-argument void call, exact signatures get placeholder values.
std::string sample_payload_for(const ApiSignature& sig);

}  // namespace droidtrace
