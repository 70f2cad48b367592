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

#include "droidtrace/signature.hpp"

#include <utility>

#include "droidtrace/api_call.hpp"
#include "droidtrace/error.hpp"
#include "droidtrace/text.hpp"

namespace droidtrace {

namespace {

bool is_method_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '$' || c == '<' || c == '>';
}

std::string parse_method_name(std::string_view text, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < text.size() && is_method_char(text[pos])) ++pos;
  if (pos == start) throw ParseError("empty method name");
  return std::string(text.substr(start, pos - start));
}

FieldDescriptor parse_owner(std::string_view text, std::size_t& pos) {
  FieldDescriptor owner = parse_field_descriptor_prefix(text, pos);
  if (!owner.is_class()) {
    throw ParseError("signature class must be a plain class descriptor");
  }
  return owner;
}

}  // namespace

ApiSignature parse_api_signature(std::string_view line) {
  std::size_t pos = 0;
  ApiSignature sig;
  sig.owner = parse_owner(line, pos);
  if (line.substr(pos, 2) != "->") {
    throw ParseError("missing '->' after class descriptor");
  }
  pos += 2;
  sig.method = parse_method_name(line, pos);
  if (pos == line.size()) return sig;  // wildcard

  if (line[pos] != '(') {
    throw ParseError("unexpected character in signature: '" +
                     std::string(1, line[pos]) + "'");
  }
  ++pos;
  MethodProto proto;
  while (pos < line.size() && line[pos] != ')') {
    proto.params.push_back(parse_field_descriptor_prefix(line, pos));
  }
  if (pos >= line.size()) throw ParseError("unterminated parameter list");
  ++pos;  // ')'
  if (pos >= line.size()) throw ParseError("missing return descriptor");
  if (line[pos] == 'V') {
    ++pos;
  } else {
    proto.return_type = parse_field_descriptor_prefix(line, pos);
  }
  if (pos != line.size()) {
    throw ParseError("trailing characters after signature: '" +
                     std::string(line.substr(pos)) + "'");
  }
  sig.proto = std::move(proto);
  return sig;
}

std::string render_api_signature(const ApiSignature& sig) {
  std::string out = render_field_descriptor(sig.owner);
  out += "->";
  out += sig.method;
  if (!sig.proto) return out;
  out += '(';
  for (const FieldDescriptor& p : sig.proto->params) {
    out += render_field_descriptor(p);
  }
  out += ')';
  out += sig.proto->return_type
             ? render_field_descriptor(*sig.proto->return_type)
             : std::string("V");
  return out;
}

SignatureId SignatureSet::add(ApiSignature sig) {
  if (find(sig)) {
    throw ValidationError("duplicate signature: " + render_api_signature(sig));
  }
  SignatureId id = static_cast<SignatureId>(entries_.size());
  by_class_method_[{sig.owner.class_name(), sig.method}].push_back(id);
  entries_.push_back(std::move(sig));
  return id;
}

std::optional<SignatureId> SignatureSet::find(const ApiSignature& sig) const {
  auto it = by_class_method_.find({sig.owner.class_name(), sig.method});
  if (it == by_class_method_.end()) return std::nullopt;
  for (SignatureId id : it->second) {
    if (entries_[id] == sig) return id;
  }
  return std::nullopt;
}

std::vector<SignatureId> SignatureSet::candidates(std::string_view class_name,
                                                  std::string_view method) const {
  auto it = by_class_method_.find(
      {std::string(class_name), std::string(method)});
  if (it == by_class_method_.end()) return {};
  return it->second;
}

SignatureSet load_signature_list(std::string_view text) {
  SignatureSet set;
  std::map<std::string, int> first_line;
  int lineno = 0;
  for (std::string_view raw : split_lines(text)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    ApiSignature sig;
    try {
      sig = parse_api_signature(line);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
    std::string key = render_api_signature(sig);
    auto [it, inserted] = first_line.emplace(key, lineno);
    if (!inserted) {
      throw ParseError("line " + std::to_string(lineno) +
                       ": duplicate signature (first at line " +
                       std::to_string(it->second) + "): " + key);
    }
    set.add(std::move(sig));
  }
  return set;
}

bool signature_matches(const ApiSignature& sig, const ApiCallRecord& call) {
  if (!call.owner.is_class() || !sig.owner.is_class()) return false;
  if (sig.owner.class_name() != call.owner.class_name()) return false;
  if (sig.method != call.method) return false;
  if (sig.is_wildcard()) return true;
  return *sig.proto == call.proto();
}

std::optional<SignatureId> match_call(const SignatureSet& set,
                                      const ApiCallRecord& call) {
  if (!call.owner.is_class()) return std::nullopt;
  MethodProto call_proto = call.proto();
  std::optional<SignatureId> wildcard;
  for (SignatureId id : set.candidates(call.owner.class_name(), call.method)) {
    const ApiSignature& sig = set.at(id);
    if (sig.is_wildcard()) {
      if (!wildcard) wildcard = id;  // first-listed wildcard wins
    } else if (*sig.proto == call_proto) {
      return id;  // exact match is preferred
    }
  }
  return wildcard;
}

}  // namespace droidtrace
