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

namespace droidtrace {

// One Dalvik-style field descriptor. Array dimensionality is flattened into
// a depth counter, so the element of an array is always a primitive or a
// class and structural equality is O(1).
class FieldDescriptor {
 public:
  enum class Kind { kPrimitive, kClass, kArray };

  FieldDescriptor() = default;

  // `code` must be one of Z B S C I J F D.
  static FieldDescriptor primitive(char code, int array_depth = 0);
  // `binary_name` is slash-separated, non-empty, and free of ';', '(', ')'
  // and whitespace.
  static FieldDescriptor of_class(std::string binary_name, int array_depth = 0);

  Kind kind() const { return depth_ > 0 ? Kind::kArray : base_; }
  // Kind of the array element (or of the descriptor itself when depth is 0).
  Kind element_kind() const { return base_; }
  bool is_class() const { return base_ == Kind::kClass && depth_ == 0; }
  int array_depth() const { return depth_; }
  char primitive_code() const { return code_; }
  const std::string& class_name() const { return name_; }

  friend bool operator==(const FieldDescriptor&,
                         const FieldDescriptor&) = default;

 private:
  Kind base_ = Kind::kPrimitive;
  char code_ = 'I';
  std::string name_;
  int depth_ = 0;
};

bool is_primitive_code(char c);

// Grammar: FD := 'Z'|'B'|'S'|'C'|'I'|'J'|'F'|'D' | 'L' name ';' | '[' FD
// The whole input must be exactly one descriptor; leftover characters are a
// ParseError, as are an empty input, an unknown primitive code, and a class
// descriptor with no terminating ';'.
FieldDescriptor parse_field_descriptor(std::string_view text);

// Parses one descriptor starting at `pos` and advances `pos` past it.
FieldDescriptor parse_field_descriptor_prefix(std::string_view text,
                                              std::size_t& pos);

std::string render_field_descriptor(const FieldDescriptor& fd);

}  // namespace droidtrace
