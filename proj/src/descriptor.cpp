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

#include "droidtrace/descriptor.hpp"

#include <cctype>

#include "droidtrace/error.hpp"

namespace droidtrace {

namespace {

bool valid_class_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (c == ';' || c == '(' || c == ')') return false;
    if (std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

bool is_primitive_code(char c) {
  switch (c) {
    case 'Z':
    case 'B':
    case 'S':
    case 'C':
    case 'I':
    case 'J':
    case 'F':
    case 'D':
      return true;
    default:
      return false;
  }
}

FieldDescriptor FieldDescriptor::primitive(char code, int array_depth) {
  if (!is_primitive_code(code)) {
    throw ValidationError(std::string("invalid primitive code '") + code + "'");
  }
  if (array_depth < 0) throw ValidationError("negative array depth");
  FieldDescriptor fd;
  fd.base_ = Kind::kPrimitive;
  fd.code_ = code;
  fd.depth_ = array_depth;
  return fd;
}

FieldDescriptor FieldDescriptor::of_class(std::string binary_name,
                                          int array_depth) {
  if (!valid_class_name(binary_name)) {
    throw ValidationError("invalid class binary name: '" + binary_name + "'");
  }
  if (array_depth < 0) throw ValidationError("negative array depth");
  FieldDescriptor fd;
  fd.base_ = Kind::kClass;
  fd.code_ = 0;
  fd.name_ = std::move(binary_name);
  fd.depth_ = array_depth;
  return fd;
}

FieldDescriptor parse_field_descriptor_prefix(std::string_view text,
                                              std::size_t& pos) {
  int depth = 0;
  const std::size_t n = text.size();
  while (pos < n && text[pos] == '[') {
    ++depth;
    ++pos;
  }
  if (pos >= n) {
    throw ParseError(depth > 0 ? "array descriptor missing element type"
                               : "empty descriptor");
  }
  char c = text[pos];
  if (is_primitive_code(c)) {
    ++pos;
    return FieldDescriptor::primitive(c, depth);
  }
  if (c == 'L') {
    std::size_t semi = text.find(';', pos + 1);
    if (semi == std::string_view::npos) {
      throw ParseError("unterminated class descriptor (missing ';')");
    }
    std::string_view name = text.substr(pos + 1, semi - pos - 1);
    if (!valid_class_name(name)) {
      throw ParseError("invalid class name in descriptor: '" +
                       std::string(name) + "'");
    }
    pos = semi + 1;
    return FieldDescriptor::of_class(std::string(name), depth);
  }
  throw ParseError(std::string("unknown primitive code '") + c + "'");
}

FieldDescriptor parse_field_descriptor(std::string_view text) {
  std::size_t pos = 0;
  FieldDescriptor fd = parse_field_descriptor_prefix(text, pos);
  if (pos != text.size()) {
    throw ParseError("trailing characters after descriptor: '" +
                     std::string(text.substr(pos)) + "'");
  }
  return fd;
}

std::string render_field_descriptor(const FieldDescriptor& fd) {
  std::string out(static_cast<std::size_t>(fd.array_depth()), '[');
  if (fd.element_kind() == FieldDescriptor::Kind::kClass) {
    out += 'L';
    out += fd.class_name();
    out += ';';
  } else {
    out += fd.primitive_code();
  }
  return out;
}

}  // namespace droidtrace
