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

#include "droidtrace/behavior_report.hpp"

#include "droidtrace/error.hpp"
#include "droidtrace/text.hpp"

namespace droidtrace {

using nlohmann::ordered_json;

bool is_behavior_section_key(std::string_view key) {
  for (std::string_view k : kBehaviorSectionKeys) {
    if (iequals(k, key)) return true;
  }
  return false;
}

namespace {

PackageHashes parse_hashes(const ordered_json& value) {
  PackageHashes h;
  if (value.is_object()) {
    for (const auto& [key, v] : value.items()) {
      if (!v.is_string()) {
        throw ParseError("hashes entry '" + key + "' must be a string");
      }
      std::string lk = ascii_lower(key);
      if (lk == "md5") {
        h.md5 = v.get<std::string>();
      } else if (lk == "sha1") {
        h.sha1 = v.get<std::string>();
      } else if (lk == "sha256") {
        h.sha256 = v.get<std::string>();
      } else {
        throw ParseError("unknown hash kind '" + key + "'");
      }
    }
    return h;
  }
  if (value.is_array() && value.size() == 3) {
    for (const auto& v : value) {
      if (!v.is_string()) throw ParseError("hashes array must hold strings");
    }
    h.md5 = value[0].get<std::string>();
    h.sha1 = value[1].get<std::string>();
    h.sha256 = value[2].get<std::string>();
    return h;
  }
  throw ParseError("hashes must be an object or a [md5, sha1, sha256] array");
}

std::vector<RecvActionEntry> parse_recvaction(const ordered_json& value) {
  std::vector<RecvActionEntry> pairs;
  if (value.is_object()) {
    for (const auto& [receiver, action] : value.items()) {
      if (!action.is_string()) {
        throw ParseError("recvaction value is not an object of string to string");
      }
      pairs.push_back({receiver, action.get<std::string>()});
    }
    return pairs;
  }
  if (value.is_array()) {
    for (const auto& elem : value) {
      if (!elem.is_array() || elem.size() != 2 || !elem[0].is_string() ||
          !elem[1].is_string()) {
        throw ParseError("recvaction pair must be a [receiver, action] array");
      }
      pairs.push_back({elem[0].get<std::string>(), elem[1].get<std::string>()});
    }
    return pairs;
  }
  throw ParseError("recvaction must be an object or an array of pairs");
}

}  // namespace

BehaviorReport behavior_report_from_json(const ordered_json& doc) {
  if (!doc.is_object()) {
    throw ParseError("behavior report must be a JSON object");
  }
  BehaviorReport report;
  for (const auto& [key, value] : doc.items()) {
    std::string lk = ascii_lower(key);
    if (lk == "hashes") {
      report.hashes = parse_hashes(value);
    } else if (lk == "recvaction") {
      report.recvaction_present = true;
      auto pairs = parse_recvaction(value);
      report.recvaction.insert(report.recvaction.end(), pairs.begin(),
                               pairs.end());
    } else if (is_behavior_section_key(lk)) {
      if (!value.is_array()) {
        throw ParseError("section '" + key + "' must be a JSON array");
      }
      auto& entries = report.sections[lk];
      for (const auto& elem : value) entries.push_back(elem);
    } else {
      report.extras[key] = value;
    }
  }
  return report;
}

BehaviorReport parse_behavior_report(std::string_view doc) {
  ordered_json parsed = ordered_json::parse(doc, nullptr,
                                            /*allow_exceptions=*/false);
  if (parsed.is_discarded()) {
    throw ParseError("malformed JSON in behavior report");
  }
  return behavior_report_from_json(parsed);
}

std::size_t BehaviorReport::entry_count(std::string_view key) const {
  std::string lk = ascii_lower(key);
  if (lk == "recvaction") return recvaction.size();
  auto it = sections.find(lk);
  return it == sections.end() ? 0 : it->second.size();
}

bool BehaviorReport::empty() const {
  return !hashes && sections.empty() && !recvaction_present &&
         extras.empty();
}

void BehaviorReport::merge_fragment(const BehaviorReport& fragment) {
  if (fragment.hashes) hashes = fragment.hashes;
  for (const auto& [key, entries] : fragment.sections) {
    auto& mine = sections[key];
    mine.insert(mine.end(), entries.begin(), entries.end());
  }
  if (fragment.recvaction_present) {
    recvaction_present = true;
    recvaction.insert(recvaction.end(), fragment.recvaction.begin(),
                      fragment.recvaction.end());
  }
  for (const auto& [key, value] : fragment.extras.items()) {
    extras[key] = value;
  }
}

ordered_json BehaviorReport::to_json() const {
  ordered_json out = ordered_json::object();
  if (hashes) {
    out["hashes"] = {{"md5", hashes->md5},
                     {"sha1", hashes->sha1},
                     {"sha256", hashes->sha256}};
  }
  for (std::string_view key : kBehaviorSectionKeys) {
    std::string k(key);
    if (k == "recvaction") {
      if (recvaction_present) {
        ordered_json pairs = ordered_json::array();
        for (const RecvActionEntry& e : recvaction) {
          pairs.push_back(ordered_json::array({e.receiver, e.action}));
        }
        out[k] = std::move(pairs);
      }
      continue;
    }
    auto it = sections.find(k);
    if (it == sections.end()) continue;
    ordered_json entries = ordered_json::array();
    for (const auto& e : it->second) entries.push_back(e);
    out[k] = std::move(entries);
  }
  for (const auto& [key, value] : extras.items()) {
    out[key] = value;
  }
  return out;
}

}  // namespace droidtrace
