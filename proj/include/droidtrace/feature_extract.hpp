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
#include <string>
#include <vector>

#include "droidtrace/api_call.hpp"
#include "droidtrace/behavior_report.hpp"
#include "droidtrace/feature_catalog.hpp"

namespace droidtrace {

// Per-app feature counts, aligned to a catalog.
struct FeatureVector {
  std::string app_id;
  std::vector<std::uint32_t> counts;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Maps one session's parsed artifacts to a count vector: report-key
// features count section entries, intent-action features count canonical
// recvaction matches, api-call features count calls resolved to their
// signatures. Pure; safe to run in parallel across apps.
FeatureVector extract_features(const BehaviorReport& report,
                               const std::vector<ApiCallRecord>& calls,
                               const FeatureCatalog& catalog,
                               std::string app_id = {});

// Presence form: each count replaced by min(count, 1). Idempotent.
FeatureVector binarize(FeatureVector v);

}  // namespace droidtrace
