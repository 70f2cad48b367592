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

#include "droidtrace/log_entry.hpp"

#include <charconv>

#include "droidtrace/text.hpp"

namespace droidtrace {

std::optional<LogEntry> parse_logcat_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

  std::size_t sp = line.find(' ');
  if (sp == std::string_view::npos || sp == 0) return std::nullopt;
  std::string_view ts = line.substr(0, sp);
  if (!all_digits(ts)) return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), value);
  if (ec != std::errc{} || ptr != ts.data() + ts.size()) return std::nullopt;

  std::string_view rest = line.substr(sp + 1);
  std::size_t colon = rest.find(':');
  if (colon == std::string_view::npos || colon == 0) return std::nullopt;
  std::string_view tag = rest.substr(0, colon);
  if (tag.find(' ') != std::string_view::npos) return std::nullopt;

  std::string_view payload = rest.substr(colon + 1);
  if (!payload.empty() && payload.front() == ' ') payload.remove_prefix(1);

  return LogEntry{value, std::string(tag), std::string(payload)};
}

std::string render_logcat_line(const LogEntry& entry) {
  return std::to_string(entry.timestamp_ms) + " " + entry.tag + ": " +
         entry.payload;
}

}  // namespace droidtrace
