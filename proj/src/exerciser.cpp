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

#include "droidtrace/exerciser.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>

#include "droidtrace/error.hpp"
#include "droidtrace/text.hpp"
#include "json.hpp"

namespace droidtrace {

namespace {

// Back, dpad, volume, enter, menu: the key set a stock random exerciser
// would press.
constexpr std::array<int, 10> kKeycodes = {4, 19, 20, 21, 22, 23, 24, 25, 66, 82};

void validate_screen(const ScreenBounds& screen) {
  if (screen.width <= 0 || screen.height <= 0) {
    throw ValidationError("screen bounds must be positive");
  }
}

void validate_mix(const EventMix& mix) {
  if (mix.touch_pct < 0 || mix.swipe_pct < 0 || mix.key_pct < 0 ||
      mix.touch_pct + mix.swipe_pct + mix.key_pct != 100) {
    throw ValidationError("event mix percentages must be >= 0 and sum to 100");
  }
}

}  // namespace

std::vector<UiEvent> generate_event_stream(std::uint64_t seed, std::size_t n,
                                           ScreenBounds screen, EventMix mix) {
  if (n > kMaxEvents) {
    throw ValidationError("event count " + std::to_string(n) +
                          " exceeds the cap of " + std::to_string(kMaxEvents));
  }
  validate_screen(screen);
  validate_mix(mix);

  // mt19937_64 output is pinned by the standard; the modulo reduction keeps
  // the derived stream implementation-independent (a distribution would
  // not be).
  std::mt19937_64 rng(seed);
  auto draw = [&rng](std::uint64_t bound) {
    return static_cast<int>(rng() % bound);
  };

  std::vector<UiEvent> events;
  events.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    UiEvent e;
    e.sequence = static_cast<std::uint32_t>(i);
    int r = draw(100);
    if (r < mix.touch_pct) {
      e.kind = UiEvent::Kind::kTouch;
      e.x = draw(static_cast<std::uint64_t>(screen.width));
      e.y = draw(static_cast<std::uint64_t>(screen.height));
    } else if (r < mix.touch_pct + mix.swipe_pct) {
      e.kind = UiEvent::Kind::kSwipe;
      e.x = draw(static_cast<std::uint64_t>(screen.width));
      e.y = draw(static_cast<std::uint64_t>(screen.height));
      e.x2 = draw(static_cast<std::uint64_t>(screen.width));
      e.y2 = draw(static_cast<std::uint64_t>(screen.height));
      e.duration_ms = 1 + draw(1000);
    } else {
      e.kind = UiEvent::Kind::kKeyPress;
      e.keycode = kKeycodes[static_cast<std::size_t>(draw(kKeycodes.size()))];
    }
    events.push_back(e);
  }
  return events;
}

std::string serialize_event(const UiEvent& event) {
  switch (event.kind) {
    case UiEvent::Kind::kTouch:
      return "touch " + std::to_string(event.x) + " " + std::to_string(event.y);
    case UiEvent::Kind::kSwipe:
      return "swipe " + std::to_string(event.x) + " " + std::to_string(event.y) +
             " " + std::to_string(event.x2) + " " + std::to_string(event.y2) +
             " " + std::to_string(event.duration_ms);
    case UiEvent::Kind::kKeyPress:
      return "key " + std::to_string(event.keycode);
  }
  return "";
}

std::string serialize_event_stream(std::span<const UiEvent> events) {
  std::string out;
  for (const UiEvent& e : events) {
    out += serialize_event(e);
    out += '\n';
  }
  return out;
}

AppDescriptor parse_app_descriptor(std::string_view doc) {
  nlohmann::ordered_json parsed =
      nlohmann::ordered_json::parse(doc, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded() || !parsed.is_object()) {
    throw ParseError("app descriptor must be a JSON object");
  }
  AppDescriptor app;
  if (!parsed.contains("package") || !parsed["package"].is_string()) {
    throw ParseError("app descriptor needs a string 'package'");
  }
  app.package = parsed["package"].get<std::string>();
  auto read_names = [&parsed](const char* key) {
    std::vector<std::string> names;
    if (!parsed.contains(key)) return names;
    if (!parsed[key].is_array()) {
      throw ParseError(std::string("'") + key + "' must be an array");
    }
    for (const auto& v : parsed[key]) {
      if (!v.is_string()) {
        throw ParseError(std::string("'") + key + "' entries must be strings");
      }
      names.push_back(v.get<std::string>());
    }
    return names;
  };
  app.activities = read_names("activities");
  app.services = read_names("services");
  if (parsed.contains("main_activity") && !parsed["main_activity"].is_null()) {
    if (!parsed["main_activity"].is_string()) {
      throw ParseError("'main_activity' must be a string");
    }
    app.main_activity = parsed["main_activity"].get<std::string>();
  }
  validate_app_descriptor(app);
  return app;
}

void validate_app_descriptor(const AppDescriptor& app) {
  if (!is_safe_identifier(app.package)) {
    throw ValidationError("package must match [A-Za-z0-9._-]+: '" +
                          app.package + "'");
  }
  std::set<std::string> seen;
  for (const auto& list : {app.activities, app.services}) {
    for (const std::string& name : list) {
      if (name.empty()) throw ValidationError("empty component name");
      if (!seen.insert(name).second) {
        throw ValidationError("duplicate component name: '" + name + "'");
      }
    }
  }
  if (app.main_activity &&
      std::find(app.activities.begin(), app.activities.end(),
                *app.main_activity) == app.activities.end()) {
    throw ValidationError("main_activity '" + *app.main_activity +
                          "' is not among the activities");
  }
}

std::vector<std::string> enumerate_components(const AppDescriptor& app) {
  std::vector<std::string> order;
  if (app.main_activity) order.push_back(*app.main_activity);
  for (const std::string& activity : app.activities) {
    if (app.main_activity && activity == *app.main_activity) continue;
    order.push_back(activity);
  }
  for (const std::string& service : app.services) {
    order.push_back(service);
  }
  return order;
}

ExercisePlan build_plan(const AppDescriptor& app, std::uint64_t seed,
                        std::size_t n, ScreenBounds screen, EventMix mix) {
  ExercisePlan plan;
  plan.launch_order = enumerate_components(app);
  plan.events = generate_event_stream(seed, n, screen, mix);
  plan.seed = seed;
  plan.event_count = plan.events.size();
  return plan;
}

}  // namespace droidtrace
