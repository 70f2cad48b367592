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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "droidtrace/behavior_report.hpp"
#include "droidtrace/exerciser.hpp"
#include "droidtrace/log_entry.hpp"

namespace droidtrace {

// Stock emulator identity value replaced by realism profiles.
inline constexpr std::string_view kDefaultEmulatorImei = "000000000000000";

inline constexpr std::string_view kContactsRemotePath = "/sdcard/contacts.vcf";

// Device identity presented to apps under analysis. Malware is known to
// fingerprint these to detect emulators.
struct DeviceProfile {
  std::string imei;          // exactly 15 digits
  std::string imsi;          // digits, non-empty
  std::string sim_serial;    // digits, non-empty
  std::string phone_number;  // non-empty
  std::optional<std::filesystem::path> contacts_path;
};

// JSON form: {imei, imsi, sim_serial, phone_number, contacts?}.
DeviceProfile parse_device_profile(std::string_view doc);

// Throws ValidationError on a bad field (e.g. IMEI not exactly 15 digits).
void validate_profile(const DeviceProfile& profile);

// The unmodified emulator identity.
DeviceProfile default_emulator_profile();

// Abstract analysis device. One batch owns one device exclusively; sessions
// are strictly sequential on it.
class DeviceEndpoint {
 public:
  virtual ~DeviceEndpoint() = default;

  virtual void install(const AppDescriptor& app) = 0;
  virtual void launch(const std::string& component) = 0;
  virtual void send_event(const UiEvent& event) = 0;
  virtual void push_file(const std::filesystem::path& local,
                         const std::string& remote) = 0;
  virtual std::vector<LogEntry> read_log_stream() = 0;
  virtual BehaviorReport read_behavior_report() = 0;
  // Clears per-session state (log stream, report, installed app). Identity
  // and pushed files persist; a fresh device reports the stock identity.
  virtual void reset() = 0;

  virtual void set_identity(const DeviceProfile& identity) = 0;
  virtual DeviceProfile identity() const = 0;
};

// Validates the profile, installs its identity on the device, and pushes
// the contacts file (when configured) to /sdcard/contacts.vcf. Validation
// failures throw before any device interaction.
void apply_profile(DeviceEndpoint& device, const DeviceProfile& profile);

}  // namespace droidtrace
