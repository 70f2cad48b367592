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
#include <utility>
#include <vector>

#include "droidtrace/descriptor.hpp"

namespace droidtrace {

struct ApiCallRecord;  // see droidtrace/api_call.hpp

// Parameter and return descriptors of one method overload. A nullopt return
// type means void.
struct MethodProto {
  std::vector<FieldDescriptor> params;
  std::optional<FieldDescriptor> return_type;

  friend bool operator==(const MethodProto&, const MethodProto&) = default;
};

// One monitored API signature. Without a proto the signature is a wildcard
// that matches every overload of (owner, method); with a proto it matches
// only calls with identical parameter and return descriptors.
struct ApiSignature {
  FieldDescriptor owner;  // class-kind descriptor
  std::string method;
  std::optional<MethodProto> proto;

  bool is_wildcard() const { return !proto.has_value(); }

  friend bool operator==(const ApiSignature&, const ApiSignature&) = default;
};

// Line grammar: `<classFD>-><method>` optionally followed by
// `(<FD>*)<FD|V>`. Errors: missing '->', malformed descriptor, empty or
// invalid method name, trailing characters.
ApiSignature parse_api_signature(std::string_view line);

// Canonical text form; parse_api_signature(render_api_signature(s)) == s.
std::string render_api_signature(const ApiSignature& sig);

using SignatureId = std::uint32_t;

// Ordered, duplicate-free signature list. Ids are dense and assigned in
// insertion order.
class SignatureSet {
 public:
  SignatureSet() = default;

  // Throws ValidationError when a structurally identical entry exists.
  SignatureId add(ApiSignature sig);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const ApiSignature& at(SignatureId id) const { return entries_.at(id); }
  const std::vector<ApiSignature>& entries() const { return entries_; }

  std::optional<SignatureId> find(const ApiSignature& sig) const;

  // Ids of entries on (class, method), in insertion order.
  std::vector<SignatureId> candidates(std::string_view class_name,
                                      std::string_view method) const;

 private:
  std::vector<ApiSignature> entries_;
  std::map<std::pair<std::string, std::string>, std::vector<SignatureId>>
      by_class_method_;
};

// Loads a signature list document: one signature per line, '#'-prefixed
// lines and blank lines ignored, LF or CRLF endings. Parse errors and
// duplicates are reported with their line numbers.
SignatureSet load_signature_list(std::string_view text);

// True when `sig` matches `call`: wildcards compare (class, method) only,
// exact signatures additionally require identical parameter and return
// descriptors.
bool signature_matches(const ApiSignature& sig, const ApiCallRecord& call);

// Resolves `call` to at most one entry. An exact match is preferred over a
// wildcard; among several matching wildcards the first-listed wins.
std::optional<SignatureId> match_call(const SignatureSet& set,
                                      const ApiCallRecord& call);

}  // namespace droidtrace
