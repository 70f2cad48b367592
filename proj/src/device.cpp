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

#include "droidtrace/device.hpp"

#include "droidtrace/error.hpp"
#include "droidtrace/text.hpp"
#include "json.hpp"

namespace droidtrace {

DeviceProfile parse_device_profile(std::string_view doc) {
  nlohmann::ordered_json parsed =
      nlohmann::ordered_json::parse(doc, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded() || !parsed.is_object()) {
    throw ParseError("device profile must be a JSON object");
  }
  DeviceProfile profile;
  auto read = [&parsed](const char* key) {
    if (!parsed.contains(key) || !parsed[key].is_string()) {
      throw ParseError(std::string("device profile needs a string '") + key +
                       "'");
    }
    return parsed[key].get<std::string>();
  };
  profile.imei = read("imei");
  profile.imsi = read("imsi");
  profile.sim_serial = read("sim_serial");
  profile.phone_number = read("phone_number");
  if (parsed.contains("contacts") && !parsed["contacts"].is_null()) {
    if (!parsed["contacts"].is_string()) {
      throw ParseError("'contacts' must be a path string");
    }
    profile.contacts_path = parsed["contacts"].get<std::string>();
  }
  validate_profile(profile);
  return profile;
}

void validate_profile(const DeviceProfile& profile) {
  if (profile.imei.size() != 15 || !all_digits(profile.imei)) {
    throw ValidationError("invalid IMEI: expected exactly 15 digits, got '" +
                          profile.imei + "'");
  }
  if (!all_digits(profile.imsi)) {
    throw ValidationError("IMSI must be a non-empty digit string");
  }
  if (!all_digits(profile.sim_serial)) {
    throw ValidationError("SIM serial must be a non-empty digit string");
  }
  if (profile.phone_number.empty()) {
    throw ValidationError("phone number must be non-empty");
  }
}

DeviceProfile default_emulator_profile() {
  DeviceProfile profile;
  profile.imei = std::string(kDefaultEmulatorImei);
  profile.imsi = "310260000000000";
  profile.sim_serial = "89014103211118510720";
  profile.phone_number = "15555215554";
  return profile;
}

void apply_profile(DeviceEndpoint& device, const DeviceProfile& profile) {
  validate_profile(profile);
  device.set_identity(profile);
  if (profile.contacts_path) {
    device.push_file(*profile.contacts_path, std::string(kContactsRemotePath));
  }
}

}  // namespace droidtrace
