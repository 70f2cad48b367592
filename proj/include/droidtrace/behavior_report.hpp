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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace droidtrace {

struct PackageHashes {
  std::string md5;
  std::string sha1;
  std::string sha256;

  friend bool operator==(const PackageHashes&, const PackageHashes&) = default;
};

struct RecvActionEntry {
  std::string receiver;
  std::string action;

  friend bool operator==(const RecvActionEntry&,
                         const RecvActionEntry&) = default;
};

// Sandbox report section keys. All but recvaction hold opaque entry lists;
// recvaction holds (receiver class, broadcast action) pairs.
inline constexpr std::array<std::string_view, 13> kBehaviorSectionKeys = {
    "opennet",    "recvnet",  "sendnet",  "accessedfiles", "fdaccess",
    "servicestart", "dexclass", "dataleaks", "enfperm",     "cryptousage",
    "recvaction", "sendsms",  "phonecalls"};

bool is_behavior_section_key(std::string_view key);

// One per-session high-level behavior report. Recognized section keys are
// parsed; unknown top-level keys are preserved in `extras`, never dropped.
struct BehaviorReport {
  std::optional<PackageHashes> hashes;
  // Canonical lowercase key -> raw entries. recvaction lives separately.
  std::map<std::string, std::vector<nlohmann::ordered_json>> sections;
  bool recvaction_present = false;
  std::vector<RecvActionEntry> recvaction;
  nlohmann::ordered_json extras = nlohmann::ordered_json::object();

  // Entry count for a section key (case-insensitive); recvaction counts
  // pairs. Unrecognized or absent keys count 0.
  std::size_t entry_count(std::string_view key) const;

  bool empty() const;

  // Folds a report fragment into this one: section entries append, hashes
  // and extras from the fragment win, recvaction pairs append.
  void merge_fragment(const BehaviorReport& fragment);

  // Canonical echo: sections in catalog key order, recvaction as an array
  // of [receiver, action] pairs, extras inlined at top level.
  nlohmann::ordered_json to_json() const;
};

// Parses a report document. The document must be a single JSON object;
// recvaction accepts either {receiver: action} or [[receiver, action], ...]
// (the array form expresses duplicate receiver classes). List sections must
// be JSON arrays.
BehaviorReport parse_behavior_report(std::string_view doc);

BehaviorReport behavior_report_from_json(const nlohmann::ordered_json& doc);

}  // namespace droidtrace
