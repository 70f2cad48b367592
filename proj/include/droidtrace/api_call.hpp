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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "droidtrace/descriptor.hpp"
#include "droidtrace/signature.hpp"

namespace droidtrace {

struct ApiCallArg {
  FieldDescriptor descriptor;
  std::string value;  // rendered text, verbatim ("null" stays literal)

  friend bool operator==(const ApiCallArg&, const ApiCallArg&) = default;
};

// One structured API-call log payload from an instrumented app.
struct ApiCallRecord {
  FieldDescriptor owner;  // class-kind descriptor
  std::string method;
  std::vector<ApiCallArg> args;
  std::optional<FieldDescriptor> return_descriptor;  // nullopt = void
  std::optional<std::string> return_value;

  // Descriptor view used for signature matching.
  MethodProto proto() const;

  friend bool operator==(const ApiCallRecord&, const ApiCallRecord&) = default;
};

// Payload grammar:
//   <classFD>-><method>(<FD>:=<value> ('|' <FD>:=<value>)*)<retFD|V>[:=<value>]
// Whitespace is tolerated around tokens; argument values are split on
// top-level '|' only (separators nested in (), [] or {} do not split) and
// are otherwise preserved verbatim, surrounding whitespace trimmed. Errors:
// malformed descriptor, missing '->', unbalanced parentheses.
ApiCallRecord parse_api_call_payload(std::string_view payload);

// Canonical text form; round-trips through parse_api_call_payload for
// records whose values contain no top-level '|'.
std::string render_api_call_payload(const ApiCallRecord& record);

}  // namespace droidtrace
