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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace droidtrace {

inline constexpr std::size_t kMaxEvents = 3000;

struct ScreenBounds {
  int width = 480;
  int height = 800;
};

// Percent shares per event kind; must be non-negative and sum to 100.
struct EventMix {
  int touch_pct = 70;
  int swipe_pct = 20;
  int key_pct = 10;
};

struct UiEvent {
  enum class Kind { kTouch, kSwipe, kKeyPress };

  Kind kind = Kind::kTouch;
  std::uint32_t sequence = 0;
  int x = 0, y = 0;          // touch position / swipe start
  int x2 = 0, y2 = 0;        // swipe end
  int duration_ms = 0;       // swipe, > 0
  int keycode = 0;           // keypress

  friend bool operator==(const UiEvent&, const UiEvent&) = default;
};

// Generates exactly `n` events (n <= 3000) from a seeded mt19937_64.
// Values are derived by modulo reduction of raw engine output, so identical
// (seed, n, screen, mix) yield byte-identical streams on any conforming
// implementation. Draw order per event: one draw for the kind, then x[,y]
// draws per field in declaration order.
std::vector<UiEvent> generate_event_stream(std::uint64_t seed, std::size_t n,
                                           ScreenBounds screen = {},
                                           EventMix mix = {});

std::string serialize_event(const UiEvent& event);
std::string serialize_event_stream(std::span<const UiEvent> events);

// Declarative stand-in for app metadata.
struct AppDescriptor {
  std::string package;
  std::optional<std::string> main_activity;
  std::vector<std::string> activities;
  std::vector<std::string> services;
};

// JSON form: {package, main_activity?, activities[], services[]}.
AppDescriptor parse_app_descriptor(std::string_view doc);

// package matches [A-Za-z0-9._-]+, component names are unique across
// activities and services, and main_activity (when set) is an activity.
void validate_app_descriptor(const AppDescriptor& app);

// Main activity first (when present), then remaining activities in
// descriptor order, then services in descriptor order.
std::vector<std::string> enumerate_components(const AppDescriptor& app);

struct ExercisePlan {
  std::vector<std::string> launch_order;  // every component exactly once
  std::vector<UiEvent> events;
  std::uint64_t seed = 0;
  std::size_t event_count = 0;
};

// Launch order from enumerate_components plus a generated event stream.
// Plans are pure functions of (app, seed, n, screen, mix).
ExercisePlan build_plan(const AppDescriptor& app, std::uint64_t seed,
                        std::size_t n = kMaxEvents, ScreenBounds screen = {},
                        EventMix mix = {});

}  // namespace droidtrace
