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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "droidtrace/signature.hpp"
#include "json.hpp"

namespace droidtrace {

enum class FeatureKind { kReportKey, kIntentAction, kApiCall };

std::string_view to_string(FeatureKind kind);
FeatureKind feature_kind_from_string(std::string_view text);

// One behavioral feature. The matcher depends on the kind: a report section
// key, a broadcast event name, or one or more signature ids.
struct FeatureDef {
  std::string name;
  FeatureKind kind = FeatureKind::kReportKey;
  std::string report_key;                   // kReportKey
  std::string event_name;                   // kIntentAction
  std::vector<SignatureId> signature_ids;   // kApiCall, non-empty
};

using FeatureId = std::uint32_t;

// Immutable, ordered feature space shared by extraction, aggregation and
// export. Names are unique case-insensitively and contain no commas.
class FeatureCatalog {
 public:
  FeatureCatalog() = default;

  std::size_t size() const { return defs_.size(); }
  const FeatureDef& def(FeatureId id) const { return defs_.at(id); }
  const std::vector<FeatureDef>& defs() const { return defs_; }
  const SignatureSet& signatures() const { return signatures_; }

  // Case-insensitive name lookup.
  std::optional<FeatureId> find(std::string_view name) const;

  // Features counting calls matched to this signature id.
  std::span<const FeatureId> features_for_signature(SignatureId id) const;

  // Audit/pinning form: a JSON array of {name, kind, matcher} in catalog
  // order. Api-call matchers are rendered signature lines, which makes the
  // document self-contained.
  nlohmann::ordered_json to_json() const;

  // Rebuilds a catalog (and its backing signature set) from the audit form.
  static FeatureCatalog from_json(std::string_view doc);

  friend FeatureCatalog default_catalog(SignatureSet signature_set);

 private:
  void add(FeatureDef def);
  void finalize();  // builds indexes, validates names

  std::vector<FeatureDef> defs_;
  SignatureSet signatures_;
  std::map<std::string, FeatureId> by_lower_name_;
  std::vector<std::vector<FeatureId>> by_signature_;
};

// The built-in signature list backing the default catalog's api-call
// features. The same text parses with load_signature_list and is the
// canonical content for a --signatures file.
std::string_view default_signature_list();

// Builds the default feature space over `signature_set`: the 13 report
// section keys, every tracked broadcast event, and the built-in api-call
// features. Throws ValidationError naming every api-call feature for which
// the set has no backing signature.
FeatureCatalog default_catalog(SignatureSet signature_set);

}  // namespace droidtrace
