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
#include <random>

#include "doctest.h"
#include "droidtrace/error.hpp"
#include "support/testutil.hpp"

using namespace droidtrace;

TEST_CASE("the event cap is 3000") { CHECK(kMaxEvents == 3000); }

TEST_CASE("event stream determinism") {
  auto a = generate_event_stream(42, 3000);
  auto b = generate_event_stream(42, 3000);
  REQUIRE(a.size() == 3000);
  CHECK(serialize_event_stream(a) == serialize_event_stream(b));
  CHECK(a == b);

  auto c = generate_event_stream(43, 3000);
  CHECK(serialize_event_stream(a) != serialize_event_stream(c));
}

TEST_CASE("event stream bounds and cap") {
  CHECK(generate_event_stream(1, 0).empty());
  CHECK_THROWS_AS(generate_event_stream(1, 3001), ValidationError);

  ScreenBounds screen{320, 240};
  auto events = generate_event_stream(7, 2000, screen);
  for (const UiEvent& e : events) {
    if (e.kind == UiEvent::Kind::kTouch || e.kind == UiEvent::Kind::kSwipe) {
      CHECK(e.x >= 0);
      CHECK(e.x < screen.width);
      CHECK(e.y >= 0);
      CHECK(e.y < screen.height);
    }
    if (e.kind == UiEvent::Kind::kSwipe) {
      CHECK(e.x2 < screen.width);
      CHECK(e.y2 < screen.height);
      CHECK(e.duration_ms > 0);
    }
  }
}

TEST_CASE("event mix is honored at the extremes") {
  auto touches = generate_event_stream(3, 500, {}, EventMix{100, 0, 0});
  for (const UiEvent& e : touches) CHECK(e.kind == UiEvent::Kind::kTouch);
  auto keys = generate_event_stream(3, 500, {}, EventMix{0, 0, 100});
  for (const UiEvent& e : keys) CHECK(e.kind == UiEvent::Kind::kKeyPress);

  CHECK_THROWS_AS(generate_event_stream(3, 10, {}, EventMix{50, 0, 0}),
                  ValidationError);
  CHECK_THROWS_AS(generate_event_stream(3, 10, {}, EventMix{120, -10, -10}),
                  ValidationError);
  CHECK_THROWS_AS(generate_event_stream(3, 10, {0, 0}, EventMix{}),
                  ValidationError);
}

TEST_CASE("component enumeration order") {
  AppDescriptor app;
  app.package = "com.example.app";
  app.main_activity = "A1";
  app.activities = {"A1", "A2"};
  app.services = {"S1"};
  CHECK(enumerate_components(app) ==
        std::vector<std::string>{"A1", "A2", "S1"});

  AppDescriptor no_main;
  no_main.package = "p";
  no_main.activities = {"A2"};
  CHECK(enumerate_components(no_main) == std::vector<std::string>{"A2"});

  AppDescriptor empty;
  empty.package = "p";
  CHECK(enumerate_components(empty).empty());
}

TEST_CASE("launch order covers every component exactly once") {
  std::mt19937_64 rng(61);
  for (int iter = 0; iter < 100; ++iter) {
    AppDescriptor app;
    app.package = "p";
    std::size_t nact = rng() % 5;
    std::size_t nsvc = rng() % 4;
    for (std::size_t i = 0; i < nact; ++i) {
      app.activities.push_back("A" + std::to_string(i));
    }
    for (std::size_t i = 0; i < nsvc; ++i) {
      app.services.push_back("S" + std::to_string(i));
    }
    if (nact > 0 && rng() % 2 == 0) {
      app.main_activity = app.activities[rng() % nact];
    }
    validate_app_descriptor(app);

    auto order = enumerate_components(app);
    std::vector<std::string> all = app.activities;
    all.insert(all.end(), app.services.begin(), app.services.end());
    REQUIRE(order.size() == all.size());
    auto sorted_order = order;
    std::sort(sorted_order.begin(), sorted_order.end());
    std::sort(all.begin(), all.end());
    CHECK(sorted_order == all);
    if (app.main_activity) {
      CHECK(order.front() == *app.main_activity);
    }
  }
}

TEST_CASE("app descriptor parse and validation") {
  AppDescriptor app = parse_app_descriptor(R"({
    "package": "com.example.app",
    "main_activity": "Main",
    "activities": ["Main", "Settings"],
    "services": ["Sync"]
  })");
  CHECK(app.package == "com.example.app");
  CHECK(app.main_activity == "Main");
  CHECK(app.activities.size() == 2);

  CHECK_THROWS_AS(parse_app_descriptor("{}"), ParseError);
  CHECK_THROWS_AS(parse_app_descriptor(R"({"package": "bad pkg"})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_app_descriptor(R"({
    "package": "p", "main_activity": "X", "activities": ["A"]})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_app_descriptor(R"({
    "package": "p", "activities": ["A", "A"]})"),
                  ValidationError);
}

TEST_CASE("plans are pure functions of their inputs") {
  AppDescriptor app;
  app.package = "com.example.app";
  app.main_activity = "A1";
  app.activities = {"A1", "A2"};
  app.services = {"S1"};

  ExercisePlan p1 = build_plan(app, 7, 10);
  ExercisePlan p2 = build_plan(app, 7, 10);
  CHECK(p1.launch_order.size() == 3);
  CHECK(p1.event_count == 10);
  CHECK(p1.events == p2.events);
  CHECK(p1.launch_order == p2.launch_order);

  ExercisePlan full = build_plan(app, 7);
  CHECK(full.event_count == kMaxEvents);

  CHECK_THROWS_AS(build_plan(app, 7, 3001), ValidationError);
}
