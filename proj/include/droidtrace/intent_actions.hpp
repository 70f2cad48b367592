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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "droidtrace/behavior_report.hpp"

namespace droidtrace {

enum class EventGroup { kBoot, kCall, kPkg, kSms, kUsb, kBatt, kMain, kNet, kSys };

std::string_view to_string(EventGroup group);

struct IntentEventDef {
  std::string_view name;  // canonical constant name
  EventGroup group;
};

// The tracked broadcast events and actions, in catalog order.
std::span<const IntentEventDef> intent_event_table();

// Case-insensitive lookup by canonical constant name.
std::optional<IntentEventDef> find_intent_event(std::string_view name);

// One broadcast action lifted from a recvaction pair. `canonical` and
// `group` are set iff the action resolves to a tracked event.
struct IntentAction {
  std::string raw;
  std::optional<std::string> canonical;
  std::optional<EventGroup> group;

  friend bool operator==(const IntentAction&, const IntentAction&) = default;
};

// Resolves a raw action string: its final dot-separated segment (or the
// whole string when it has no dots) is compared case-insensitively against
// the tracked event names. Unknown actions keep only `raw`.
IntentAction canonicalize_action(std::string_view raw);

// One IntentAction per recvaction pair, in report order.
std::vector<IntentAction> extract_intent_actions(const BehaviorReport& report);

}  // namespace droidtrace
