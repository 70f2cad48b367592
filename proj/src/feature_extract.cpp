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

#include "droidtrace/feature_extract.hpp"

#include <map>

#include "droidtrace/intent_actions.hpp"

namespace droidtrace {

FeatureVector extract_features(const BehaviorReport& report,
                               const std::vector<ApiCallRecord>& calls,
                               const FeatureCatalog& catalog,
                               std::string app_id) {
  FeatureVector v;
  v.app_id = std::move(app_id);
  v.counts.assign(catalog.size(), 0);

  // Canonical event tallies from recvaction.
  std::map<std::string, std::uint32_t> event_counts;
  for (const IntentAction& action : extract_intent_actions(report)) {
    if (action.canonical) ++event_counts[*action.canonical];
  }

  for (FeatureId id = 0; id < catalog.size(); ++id) {
    const FeatureDef& def = catalog.def(id);
    switch (def.kind) {
      case FeatureKind::kReportKey:
        v.counts[id] =
            static_cast<std::uint32_t>(report.entry_count(def.report_key));
        break;
      case FeatureKind::kIntentAction: {
        auto it = event_counts.find(def.event_name);
        v.counts[id] = it == event_counts.end() ? 0 : it->second;
        break;
      }
      case FeatureKind::kApiCall:
        break;  // counted per call below
    }
  }

  for (const ApiCallRecord& call : calls) {
    auto sid = match_call(catalog.signatures(), call);
    if (!sid) continue;
    for (FeatureId fid : catalog.features_for_signature(*sid)) {
      ++v.counts[fid];
    }
  }
  return v;
}

FeatureVector binarize(FeatureVector v) {
  for (std::uint32_t& c : v.counts) {
    if (c > 1) c = 1;
  }
  return v;
}

}  // namespace droidtrace
