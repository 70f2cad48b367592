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

#include "droidtrace/sim_device.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include "droidtrace/error.hpp"

namespace droidtrace {

using nlohmann::ordered_json;

namespace {

bool parse_ok_fail(const ordered_json& value, const char* field) {
  if (!value.is_string()) {
    throw ParseError(std::string("script '") + field +
                     "' must be \"ok\" or \"fail\"");
  }
  std::string s = value.get<std::string>();
  if (s == "ok") return true;
  if (s == "fail") return false;
  throw ParseError(std::string("script '") + field +
                   "' must be \"ok\" or \"fail\", got '" + s + "'");
}

std::vector<std::string> parse_lines(const ordered_json& value,
                                     const char* field) {
  if (!value.is_array()) {
    throw ParseError(std::string("script '") + field +
                     "' must be an array of log lines");
  }
  std::vector<std::string> lines;
  for (const auto& v : value) {
    if (!v.is_string()) {
      throw ParseError(std::string("script '") + field +
                       "' entries must be strings");
    }
    lines.push_back(v.get<std::string>());
  }
  return lines;
}

bool known_condition(std::string_view name) {
  return name == kRequiresRealisticImei || name == kRequiresContactsPresent;
}

}  // namespace

SimAppScript sim_script_from_json(const ordered_json& doc) {
  if (!doc.is_object()) throw ParseError("app script must be a JSON object");
  SimAppScript script;
  for (const auto& [key, value] : doc.items()) {
    if (key == "install") {
      script.install_ok = parse_ok_fail(value, "install");
    } else if (key == "launch") {
      script.launch_ok = parse_ok_fail(value, "launch");
    } else if (key == "on_launch") {
      script.on_launch = parse_lines(value, "on_launch");
    } else if (key == "on_event_every_k") {
      if (!value.is_object() || !value.contains("k") ||
          !value.contains("line") || !value["k"].is_number_unsigned() ||
          !value["line"].is_string()) {
        throw ParseError("'on_event_every_k' must be {k: uint, line: string}");
      }
      EventTrigger trigger;
      trigger.every_k = value["k"].get<std::uint32_t>();
      trigger.line = value["line"].get<std::string>();
      if (trigger.every_k == 0) {
        throw ParseError("'on_event_every_k' requires k > 0");
      }
      script.on_event = std::move(trigger);
    } else if (key == "profile_conditional") {
      if (!value.is_array()) {
        throw ParseError("'profile_conditional' must be an array");
      }
      for (const auto& entry : value) {
        if (!entry.is_object() || !entry.contains("requires") ||
            !entry.contains("lines") || !entry["requires"].is_string()) {
          throw ParseError(
              "'profile_conditional' entries must be {requires, lines}");
        }
        ConditionalBehavior cond;
        cond.requires_condition = entry["requires"].get<std::string>();
        if (!known_condition(cond.requires_condition)) {
          throw ParseError("unknown condition '" + cond.requires_condition +
                           "'");
        }
        cond.lines = parse_lines(entry["lines"], "profile_conditional.lines");
        script.conditional.push_back(std::move(cond));
      }
    } else if (key == "behavior_report") {
      if (!value.is_object()) {
        throw ParseError("'behavior_report' must be a JSON object");
      }
      behavior_report_from_json(value);  // validate eagerly
      script.behavior_report = value;
    } else if (key == "event_delay_ms") {
      if (!value.is_number_unsigned()) {
        throw ParseError("'event_delay_ms' must be a non-negative integer");
      }
      script.event_delay_ms = value.get<int>();
    } else {
      throw ParseError("unknown script key '" + key + "'");
    }
  }
  return script;
}

SimAppScript parse_sim_script(std::string_view doc) {
  ordered_json parsed =
      ordered_json::parse(doc, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) throw ParseError("malformed JSON in app script");
  return sim_script_from_json(parsed);
}

SimDevice::SimDevice() : identity_(default_emulator_profile()) {}

void SimDevice::register_app(const std::string& package, SimAppScript script) {
  scripts_[package] = std::move(script);
}

void SimDevice::install(const AppDescriptor& app) {
  validate_app_descriptor(app);
  auto it = scripts_.find(app.package);
  const SimAppScript* script = it == scripts_.end() ? nullptr : &it->second;
  if (script && !script->install_ok) {
    throw InstallError("scripted install failure for '" + app.package + "'");
  }
  installed_ = app;
  active_ = script;  // unscripted apps install fine and stay silent
  launched_once_ = false;
  events_seen_ = 0;
}

void SimDevice::launch(const std::string& component) {
  if (!installed_) throw LaunchError("no app installed");
  const auto& acts = installed_->activities;
  const auto& svcs = installed_->services;
  bool known = std::find(acts.begin(), acts.end(), component) != acts.end() ||
               std::find(svcs.begin(), svcs.end(), component) != svcs.end();
  if (!known) {
    throw LaunchError("unknown component '" + component + "' for '" +
                      installed_->package + "'");
  }
  if (active_ && !active_->launch_ok) {
    throw LaunchError("scripted launch failure for '" + installed_->package +
                      "'");
  }
  if (launched_once_ || active_ == nullptr) {
    launched_once_ = true;
    return;
  }
  launched_once_ = true;
  for (const std::string& line : active_->on_launch) emit(line);
  for (const ConditionalBehavior& cond : active_->conditional) {
    if (condition_met(cond.requires_condition)) {
      for (const std::string& line : cond.lines) emit(line);
    }
  }
}

void SimDevice::send_event(const UiEvent&) {
  if (!installed_) throw DeviceError("no app installed");
  ++events_seen_;
  if (active_ && active_->on_event &&
      events_seen_ % active_->on_event->every_k == 0) {
    emit(active_->on_event->line);
  }
  if (active_ && active_->event_delay_ms > 0) {
    std::this_thread::sleep_for(
        std::chrono::milliseconds(active_->event_delay_ms));
  }
}

void SimDevice::push_file(const std::filesystem::path& local,
                          const std::string& remote) {
  if (!std::filesystem::exists(local)) {
    throw DeviceError("cannot push missing file: " + local.string());
  }
  pushed_[remote] = local;
}

std::vector<LogEntry> SimDevice::read_log_stream() {
  std::vector<LogEntry> entries;
  entries.reserve(lines_.size());
  for (const std::string& line : lines_) {
    if (auto entry = parse_logcat_line(line)) {
      entries.push_back(std::move(*entry));
    }
  }
  return entries;
}

BehaviorReport SimDevice::read_behavior_report() {
  if (active_ && active_->behavior_report) {
    return behavior_report_from_json(*active_->behavior_report);
  }
  return BehaviorReport{};
}

void SimDevice::reset() {
  lines_.clear();
  installed_.reset();
  active_ = nullptr;
  launched_once_ = false;
  events_seen_ = 0;
}

void SimDevice::set_identity(const DeviceProfile& identity) {
  identity_ = identity;
}

DeviceProfile SimDevice::identity() const { return identity_; }

bool SimDevice::condition_met(std::string_view requirement) const {
  if (requirement == kRequiresRealisticImei) {
    return identity_.imei != kDefaultEmulatorImei;
  }
  if (requirement == kRequiresContactsPresent) {
    return pushed_.count(std::string(kContactsRemotePath)) > 0;
  }
  return false;
}

}  // namespace droidtrace
