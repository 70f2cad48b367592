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

#include "droidtrace/feature_catalog.hpp"

#include <utility>

#include "droidtrace/behavior_report.hpp"
#include "droidtrace/error.hpp"
#include "droidtrace/intent_actions.hpp"
#include "droidtrace/text.hpp"

namespace droidtrace {

using nlohmann::ordered_json;

std::string_view to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kReportKey: return "report-key";
    case FeatureKind::kIntentAction: return "intent-action";
    case FeatureKind::kApiCall: return "api-call";
  }
  return "?";
}

FeatureKind feature_kind_from_string(std::string_view text) {
  if (text == "report-key") return FeatureKind::kReportKey;
  if (text == "intent-action") return FeatureKind::kIntentAction;
  if (text == "api-call") return FeatureKind::kApiCall;
  throw ParseError("unknown feature kind: '" + std::string(text) + "'");
}

namespace {

struct ApiFeatureBinding {
  std::string_view name;
  std::vector<std::string_view> signatures;
};

// Api-call feature bindings. The two getInstance features deliberately sit
// on distinct classes; 'start' carries a placeholder binding because no
// class is pinned for it.
const std::vector<ApiFeatureBinding>& api_feature_bindings() {
  static const std::vector<ApiFeatureBinding> bindings = {
      {"PackageManager",
       {"Landroid/content/pm/PackageManager;->getInstalledPackages",
        "Landroid/content/pm/PackageManager;->getInstalledApplications"}},
      {"Process",
       {"Landroid/os/Process;->myPid", "Landroid/os/Process;->killProcess"}},
      {"checkPermission",
       {"Landroid/content/pm/PackageManager;->checkPermission"}},
      {"getInstance#1", {"Ljavax/crypto/Cipher;->getInstance"}},
      {"deviceId", {"Landroid/telephony/TelephonyManager;->getDeviceId"}},
      {"getMethod", {"Ljava/lang/Class;->getMethod"}},
      {"parse", {"Landroid/net/Uri;->parse"}},
      {"digest", {"Ljava/security/MessageDigest;->digest"}},
      {"getClass", {"Ljava/lang/Object;->getClass"}},
      {"SubscriberId",
       {"Landroid/telephony/TelephonyManager;->getSubscriberId"}},
      {"SimSerialNumber",
       {"Landroid/telephony/TelephonyManager;->getSimSerialNumber"}},
      {"lineNumber", {"Landroid/telephony/TelephonyManager;->getLine1Number"}},
      {"start", {"Ljava/lang/Thread;->start"}},
      {"NetworkOperator",
       {"Landroid/telephony/TelephonyManager;->getNetworkOperator"}},
      {"ContentResolver", {"Landroid/content/ContentResolver;->query"}},
      {"connect", {"Ljava/net/URLConnection;->connect"}},
      {"getApplicationInfo",
       {"Landroid/content/pm/PackageManager;->getApplicationInfo"}},
      {"SimOperator", {"Landroid/telephony/TelephonyManager;->getSimOperator"}},
      {"runtime.exec", {"Ljava/lang/Runtime;->exec"}},
      {"initCipher", {"Ljavax/crypto/Cipher;->init"}},
      {"getInstance#2", {"Ljava/security/MessageDigest;->getInstance"}},
      {"SecretKey", {"Ljavax/crypto/spec/SecretKeySpec;-><init>"}},
      {"SimCountryIso",
       {"Landroid/telephony/TelephonyManager;->getSimCountryIso"}},
      {"getLastKnownLocation",
       {"Landroid/location/LocationManager;->getLastKnownLocation"}},
      {"openOrCreateDatabase",
       {"Landroid/content/Context;->openOrCreateDatabase"}},
      {"SEND_MESSAGE",
       {"Landroid/telephony/SmsManager;->sendTextMessage(Ljava/lang/String;"
        "Ljava/lang/String;Ljava/lang/String;Landroid/app/PendingIntent;"
        "Landroid/app/PendingIntent;)V",
        "Landroid/telephony/SmsManager;->sendMultipartTextMessage"}},
  };
  return bindings;
}

constexpr std::string_view kDefaultSignatureList = R"(# Default API-call signature list for the built-in feature catalog.
# One signature per line:
#   Lpkg/Class;->method                  matches every overload
#   Lpkg/Class;->method(<params>)<ret>   matches one exact overload
# This list is a reconstruction: entries were chosen to represent the
# feature names they back, not lifted from any shipped instrumentation
# list. The Thread.start binding is a placeholder (no class is pinned
# for the 'start' feature).

Landroid/content/pm/PackageManager;->getInstalledPackages
Landroid/content/pm/PackageManager;->getInstalledApplications
Landroid/os/Process;->myPid
Landroid/os/Process;->killProcess
Landroid/content/pm/PackageManager;->checkPermission
Ljavax/crypto/Cipher;->getInstance
Landroid/telephony/TelephonyManager;->getDeviceId
Ljava/lang/Class;->getMethod
Landroid/net/Uri;->parse
Ljava/security/MessageDigest;->digest
Ljava/lang/Object;->getClass
Landroid/telephony/TelephonyManager;->getSubscriberId
Landroid/telephony/TelephonyManager;->getSimSerialNumber
Landroid/telephony/TelephonyManager;->getLine1Number
Ljava/lang/Thread;->start
Landroid/telephony/TelephonyManager;->getNetworkOperator
Landroid/content/ContentResolver;->query
Ljava/net/URLConnection;->connect
Landroid/content/pm/PackageManager;->getApplicationInfo
Landroid/telephony/TelephonyManager;->getSimOperator
Ljava/lang/Runtime;->exec
Ljavax/crypto/Cipher;->init
Ljava/security/MessageDigest;->getInstance
Ljavax/crypto/spec/SecretKeySpec;-><init>
Landroid/telephony/TelephonyManager;->getSimCountryIso
Landroid/location/LocationManager;->getLastKnownLocation
Landroid/content/Context;->openOrCreateDatabase
Landroid/telephony/SmsManager;->sendTextMessage(Ljava/lang/String;Ljava/lang/String;Ljava/lang/String;Landroid/app/PendingIntent;Landroid/app/PendingIntent;)V
Landroid/telephony/SmsManager;->sendMultipartTextMessage
)";

}  // namespace

std::string_view default_signature_list() { return kDefaultSignatureList; }

void FeatureCatalog::add(FeatureDef def) { defs_.push_back(std::move(def)); }

void FeatureCatalog::finalize() {
  by_lower_name_.clear();
  by_signature_.assign(signatures_.size(), {});
  for (FeatureId id = 0; id < defs_.size(); ++id) {
    const FeatureDef& def = defs_[id];
    if (def.name.empty() || def.name.find(',') != std::string::npos) {
      throw ValidationError("invalid feature name: '" + def.name + "'");
    }
    auto [it, inserted] = by_lower_name_.emplace(ascii_lower(def.name), id);
    if (!inserted) {
      throw ValidationError("duplicate feature name: '" + def.name + "'");
    }
    if (def.kind == FeatureKind::kApiCall) {
      if (def.signature_ids.empty()) {
        throw ValidationError("api-call feature '" + def.name +
                              "' references no signatures");
      }
      for (SignatureId sid : def.signature_ids) {
        if (sid >= signatures_.size()) {
          throw ValidationError("feature '" + def.name +
                                "' references unknown signature id");
        }
        by_signature_[sid].push_back(id);
      }
    }
  }
}

std::optional<FeatureId> FeatureCatalog::find(std::string_view name) const {
  auto it = by_lower_name_.find(ascii_lower(name));
  if (it == by_lower_name_.end()) return std::nullopt;
  return it->second;
}

std::span<const FeatureId> FeatureCatalog::features_for_signature(
    SignatureId id) const {
  if (id >= by_signature_.size()) return {};
  return by_signature_[id];
}

ordered_json FeatureCatalog::to_json() const {
  ordered_json out = ordered_json::array();
  for (const FeatureDef& def : defs_) {
    ordered_json entry = ordered_json::object();
    entry["name"] = def.name;
    entry["kind"] = std::string(to_string(def.kind));
    switch (def.kind) {
      case FeatureKind::kReportKey:
        entry["matcher"] = def.report_key;
        break;
      case FeatureKind::kIntentAction:
        entry["matcher"] = def.event_name;
        break;
      case FeatureKind::kApiCall: {
        ordered_json sigs = ordered_json::array();
        for (SignatureId sid : def.signature_ids) {
          sigs.push_back(render_api_signature(signatures_.at(sid)));
        }
        entry["matcher"] = std::move(sigs);
        break;
      }
    }
    out.push_back(std::move(entry));
  }
  return out;
}

FeatureCatalog FeatureCatalog::from_json(std::string_view doc) {
  ordered_json parsed =
      ordered_json::parse(doc, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded() || !parsed.is_array()) {
    throw ParseError("catalog document must be a JSON array");
  }
  FeatureCatalog catalog;
  for (const auto& entry : parsed) {
    if (!entry.is_object() || !entry.contains("name") ||
        !entry.contains("kind") || !entry.contains("matcher")) {
      throw ParseError("catalog entry must have name, kind and matcher");
    }
    FeatureDef def;
    def.name = entry["name"].get<std::string>();
    def.kind = feature_kind_from_string(entry["kind"].get<std::string>());
    const auto& matcher = entry["matcher"];
    switch (def.kind) {
      case FeatureKind::kReportKey:
        if (!matcher.is_string()) {
          throw ParseError("report-key matcher must be a string");
        }
        def.report_key = ascii_lower(matcher.get<std::string>());
        if (!is_behavior_section_key(def.report_key)) {
          throw ParseError("unknown report section key: '" + def.report_key +
                           "'");
        }
        break;
      case FeatureKind::kIntentAction: {
        if (!matcher.is_string()) {
          throw ParseError("intent-action matcher must be a string");
        }
        auto event = find_intent_event(matcher.get<std::string>());
        if (!event) {
          throw ParseError("unknown broadcast event: '" +
                           matcher.get<std::string>() + "'");
        }
        def.event_name = std::string(event->name);
        break;
      }
      case FeatureKind::kApiCall: {
        if (!matcher.is_array() || matcher.empty()) {
          throw ParseError("api-call matcher must be a non-empty array");
        }
        for (const auto& line : matcher) {
          if (!line.is_string()) {
            throw ParseError("api-call matcher entries must be strings");
          }
          ApiSignature sig = parse_api_signature(line.get<std::string>());
          auto existing = catalog.signatures_.find(sig);
          SignatureId sid =
              existing ? *existing : catalog.signatures_.add(std::move(sig));
          def.signature_ids.push_back(sid);
        }
        break;
      }
    }
    catalog.add(std::move(def));
  }
  catalog.finalize();
  return catalog;
}

FeatureCatalog default_catalog(SignatureSet signature_set) {
  FeatureCatalog catalog;
  catalog.signatures_ = std::move(signature_set);

  for (std::string_view key : kBehaviorSectionKeys) {
    FeatureDef def;
    def.name = std::string(key);
    def.kind = FeatureKind::kReportKey;
    def.report_key = std::string(key);
    catalog.add(std::move(def));
  }
  for (const IntentEventDef& event : intent_event_table()) {
    FeatureDef def;
    def.name = std::string(event.name);
    def.kind = FeatureKind::kIntentAction;
    def.event_name = std::string(event.name);
    catalog.add(std::move(def));
  }

  std::string missing;
  for (const ApiFeatureBinding& binding : api_feature_bindings()) {
    FeatureDef def;
    def.name = std::string(binding.name);
    def.kind = FeatureKind::kApiCall;
    for (std::string_view line : binding.signatures) {
      ApiSignature sig = parse_api_signature(line);
      if (auto id = catalog.signatures_.find(sig)) {
        def.signature_ids.push_back(*id);
      }
    }
    if (def.signature_ids.empty()) {
      if (!missing.empty()) missing += ", ";
      missing += binding.name;
      continue;
    }
    catalog.add(std::move(def));
  }
  if (!missing.empty()) {
    throw ValidationError(
        "signature set is missing entries for api-call feature(s): " +
        missing);
  }
  catalog.finalize();
  return catalog;
}

}  // namespace droidtrace
