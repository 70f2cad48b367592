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
#include <string>
#include <string_view>

namespace droidtrace {

// One parsed device log line. Timestamps are milliseconds since session
// start and are non-decreasing within one session stream.
struct LogEntry {
  std::int64_t timestamp_ms = 0;
  std::string tag;
  std::string payload;

  friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

// Reserved tags: ApiMonitor lines carry API-call payloads, DroidBox lines
// carry JSON fragments merged into the session's behavior report.
inline constexpr std::string_view kApiMonitorTag = "ApiMonitor";
inline constexpr std::string_view kDroidBoxTag = "DroidBox";

// Line grammar: `<t_ms> <TAG>: <payload>` with single-space separators and
// one optional space after the colon. Returns nullopt for anything else;
// stream readers skip non-matching lines.
std::optional<LogEntry> parse_logcat_line(std::string_view line);

std::string render_logcat_line(const LogEntry& entry);

}  // namespace droidtrace
