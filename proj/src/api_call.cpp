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

#include "droidtrace/api_call.hpp"

#include <cctype>

#include "droidtrace/error.hpp"
#include "droidtrace/text.hpp"

namespace droidtrace {

namespace {

void skip_ws(std::string_view text, std::size_t& pos) {
  while (pos < text.size() &&
         std::isspace(static_cast<unsigned char>(text[pos]))) {
    ++pos;
  }
}

bool is_method_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '$' || c == '<' || c == '>';
}

// A raw value runs to the next top-level '|' or ')'. Brackets of any shape
// nest; stray closers inside a value do not underflow the depth.
std::string scan_value(std::string_view text, std::size_t& pos) {
  std::size_t start = pos;
  int depth = 0;
  while (pos < text.size()) {
    char c = text[pos];
    if (depth == 0 && (c == '|' || c == ')')) break;
    if (c == '(' || c == '[' || c == '{') {
      ++depth;
    } else if ((c == ')' || c == ']' || c == '}') && depth > 0) {
      --depth;
    }
    ++pos;
  }
  if (pos >= text.size()) {
    throw ParseError("unbalanced parentheses in payload");
  }
  return std::string(trim(text.substr(start, pos - start)));
}

}  // namespace

MethodProto ApiCallRecord::proto() const {
  MethodProto p;
  p.params.reserve(args.size());
  for (const ApiCallArg& a : args) p.params.push_back(a.descriptor);
  p.return_type = return_descriptor;
  return p;
}

ApiCallRecord parse_api_call_payload(std::string_view payload) {
  ApiCallRecord record;
  std::size_t pos = 0;

  skip_ws(payload, pos);
  {
    FieldDescriptor owner = parse_field_descriptor_prefix(payload, pos);
    if (!owner.is_class()) {
      throw ParseError("payload class must be a plain class descriptor");
    }
    record.owner = std::move(owner);
  }
  skip_ws(payload, pos);
  if (payload.substr(pos, 2) != "->") {
    throw ParseError("missing '->' in payload");
  }
  pos += 2;
  skip_ws(payload, pos);
  {
    std::size_t start = pos;
    while (pos < payload.size() && is_method_char(payload[pos])) ++pos;
    if (pos == start) throw ParseError("empty method name in payload");
    record.method = std::string(payload.substr(start, pos - start));
  }
  skip_ws(payload, pos);
  if (pos >= payload.size() || payload[pos] != '(') {
    throw ParseError("unbalanced parentheses: missing '(' in payload");
  }
  ++pos;
  skip_ws(payload, pos);
  if (pos < payload.size() && payload[pos] == ')') {
    ++pos;  // empty argument list
  } else {
    while (true) {
      ApiCallArg arg;
      arg.descriptor = parse_field_descriptor_prefix(payload, pos);
      skip_ws(payload, pos);
      if (payload.substr(pos, 2) != ":=") {
        throw ParseError("expected ':=' after argument descriptor");
      }
      pos += 2;
      arg.value = scan_value(payload, pos);
      record.args.push_back(std::move(arg));
      if (payload[pos] == '|') {
        ++pos;
        skip_ws(payload, pos);
        continue;
      }
      ++pos;  // ')'
      break;
    }
  }
  skip_ws(payload, pos);
  if (pos >= payload.size()) throw ParseError("missing return descriptor");
  if (payload[pos] == 'V') {
    ++pos;
    skip_ws(payload, pos);
    if (pos != payload.size()) {
      if (payload.substr(pos, 2) == ":=") {
        throw ParseError("void return cannot carry a value");
      }
      throw ParseError("trailing characters after return descriptor");
    }
    return record;
  }
  record.return_descriptor = parse_field_descriptor_prefix(payload, pos);
  skip_ws(payload, pos);
  if (pos == payload.size()) return record;
  if (payload.substr(pos, 2) != ":=") {
    throw ParseError("trailing characters after return descriptor");
  }
  pos += 2;
  record.return_value = std::string(trim(payload.substr(pos)));
  return record;
}

std::string render_api_call_payload(const ApiCallRecord& record) {
  std::string out = render_field_descriptor(record.owner);
  out += "->";
  out += record.method;
  out += '(';
  for (std::size_t i = 0; i < record.args.size(); ++i) {
    if (i > 0) out += '|';
    out += render_field_descriptor(record.args[i].descriptor);
    out += ":=";
    out += record.args[i].value;
  }
  out += ')';
  if (record.return_descriptor) {
    out += render_field_descriptor(*record.return_descriptor);
    if (record.return_value) {
      out += ":=";
      out += *record.return_value;
    }
  } else {
    out += 'V';
  }
  return out;
}

}  // namespace droidtrace
