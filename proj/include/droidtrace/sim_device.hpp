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
#include <string>
#include <string_view>
#include <vector>

#include "droidtrace/device.hpp"
#include "json.hpp"

namespace droidtrace {

// Conditions a scripted behavior may require of the device.
inline constexpr std::string_view kRequiresRealisticImei = "realistic_imei";
inline constexpr std::string_view kRequiresContactsPresent = "contacts_present";

struct ConditionalBehavior {
  std::string requires_condition;   // one of the kRequires* names
  std::vector<std::string> lines;   // raw log lines
};

struct EventTrigger {
  std::uint32_t every_k = 0;  // > 0
  std::string line;
};

// Scripted behavior of one simulated app. JSON form:
//   {install: "ok"|"fail", launch?: "ok"|"fail", on_launch?: [lines],
//    on_event_every_k?: {k, line},
//    profile_conditional?: [{requires, lines}],
//    behavior_report?: {...}, event_delay_ms?: N}
// Log lines use the session log line grammar verbatim.
struct SimAppScript {
  bool install_ok = true;
  bool launch_ok = true;
  std::vector<std::string> on_launch;
  std::optional<EventTrigger> on_event;
  std::vector<ConditionalBehavior> conditional;
  std::optional<nlohmann::ordered_json> behavior_report;
  int event_delay_ms = 0;  // per-event latency; models slow or hanging apps
};

SimAppScript parse_sim_script(std::string_view doc);
SimAppScript sim_script_from_json(const nlohmann::ordered_json& doc);

// Scripted in-process device. Behaviour: install honors the script's
// install field; the first successful launch emits on_launch lines plus
// every conditional block whose requirement the current device state meets;
// every k-th event emits the trigger line. Reset clears per-session state
// but keeps identity, pushed files and registered scripts.
class SimDevice final : public DeviceEndpoint {
 public:
  SimDevice();

  void register_app(const std::string& package, SimAppScript script);

  void install(const AppDescriptor& app) override;
  void launch(const std::string& component) override;
  void send_event(const UiEvent& event) override;
  void push_file(const std::filesystem::path& local,
                 const std::string& remote) override;
  std::vector<LogEntry> read_log_stream() override;
  BehaviorReport read_behavior_report() override;
  void reset() override;
  void set_identity(const DeviceProfile& identity) override;
  DeviceProfile identity() const override;

  // Introspection for tests and oracles.
  const std::vector<std::string>& raw_log_lines() const { return lines_; }
  const std::map<std::string, std::filesystem::path>& pushed_files() const {
    return pushed_;
  }

 private:
  bool condition_met(std::string_view requirement) const;
  void emit(const std::string& line) { lines_.push_back(line); }

  std::map<std::string, SimAppScript> scripts_;
  DeviceProfile identity_;
  std::map<std::string, std::filesystem::path> pushed_;
  std::optional<AppDescriptor> installed_;
  const SimAppScript* active_ = nullptr;
  bool launched_once_ = false;
  std::uint64_t events_seen_ = 0;
  std::vector<std::string> lines_;
};

}  // namespace droidtrace
