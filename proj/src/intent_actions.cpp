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

#include "droidtrace/intent_actions.hpp"

#include <array>

#include "droidtrace/text.hpp"

namespace droidtrace {

namespace {

constexpr std::array<IntentEventDef, 25> kIntentEvents = {{
    {"BOOT_COMPLETED", EventGroup::kBoot},
    {"PHONE_STATE", EventGroup::kCall},
    {"NEW_OUTGOING_CALL", EventGroup::kCall},
    {"PACKAGE_ADDED", EventGroup::kPkg},
    {"PACKAGE_REMOVED", EventGroup::kPkg},
    {"PACKAGE_CHANGED", EventGroup::kPkg},
    {"PACKAGE_REPLACED", EventGroup::kPkg},
    {"PACKAGE_RESTARTED", EventGroup::kPkg},
    {"PACKAGE_INSTALL", EventGroup::kPkg},
    {"SMS_RECEIVED", EventGroup::kSms},
    {"WAP_PUSH_RECEIVED", EventGroup::kSms},
    {"UMS_CONNECTED", EventGroup::kUsb},
    {"UMS_DISCONNECTED", EventGroup::kUsb},
    {"ACTION_POWER_CONNECTED", EventGroup::kBatt},
    {"ACTION_POWER_DISCONNECTED", EventGroup::kBatt},
    {"BATTERY_LOW", EventGroup::kBatt},
    {"BATTERY_OKAY", EventGroup::kBatt},
    {"BATTERY_CHANGED_ACTION", EventGroup::kBatt},
    {"ACTION_MAIN", EventGroup::kMain},
    {"CONNECTIVITY_CHANGE", EventGroup::kNet},
    {"PICK_WIFI_WORK", EventGroup::kNet},
    {"USER_PRESENT", EventGroup::kSys},
    {"INPUT_METHOD_CHANGED", EventGroup::kSys},
    {"SIG_STR", EventGroup::kSys},
    {"SIM_FULL", EventGroup::kSys},
}};

}  // namespace

std::string_view to_string(EventGroup group) {
  switch (group) {
    case EventGroup::kBoot: return "BOOT";
    case EventGroup::kCall: return "CALL";
    case EventGroup::kPkg: return "PKG";
    case EventGroup::kSms: return "SMS";
    case EventGroup::kUsb: return "USB";
    case EventGroup::kBatt: return "BATT";
    case EventGroup::kMain: return "MAIN";
    case EventGroup::kNet: return "NET";
    case EventGroup::kSys: return "SYS";
  }
  return "?";
}

std::span<const IntentEventDef> intent_event_table() { return kIntentEvents; }

std::optional<IntentEventDef> find_intent_event(std::string_view name) {
  for (const IntentEventDef& def : kIntentEvents) {
    if (iequals(def.name, name)) return def;
  }
  return std::nullopt;
}

IntentAction canonicalize_action(std::string_view raw) {
  IntentAction out;
  out.raw = std::string(raw);
  std::size_t dot = raw.rfind('.');
  std::string_view segment =
      dot == std::string_view::npos ? raw : raw.substr(dot + 1);
  if (auto def = find_intent_event(segment)) {
    out.canonical = std::string(def->name);
    out.group = def->group;
  }
  return out;
}

std::vector<IntentAction> extract_intent_actions(const BehaviorReport& report) {
  std::vector<IntentAction> actions;
  actions.reserve(report.recvaction.size());
  for (const RecvActionEntry& pair : report.recvaction) {
    actions.push_back(canonicalize_action(pair.action));
  }
  return actions;
}

}  // namespace droidtrace
