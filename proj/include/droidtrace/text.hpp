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

#include <string>
#include <string_view>
#include <vector>

namespace droidtrace {

std::string_view trim(std::string_view s);

// Removes every ASCII whitespace character. Descriptor and payload grammars
// admit no internal whitespace; use this to canonicalize text copied from
// spaced renderings before parsing.
std::string strip_whitespace(std::string_view s);

std::string ascii_lower(std::string_view s);

// Case-insensitive (ASCII) equality.
bool iequals(std::string_view a, std::string_view b);

bool all_digits(std::string_view s);

// Splits on '\n'; a trailing '\r' on each line is kept (callers that care
// strip it themselves).
std::vector<std::string_view> split_lines(std::string_view text);

// True when every character is in [A-Za-z0-9._-]; the id alphabet used for
// app ids and corpus labels.
bool is_safe_identifier(std::string_view s);

}  // namespace droidtrace
