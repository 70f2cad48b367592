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
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "droidtrace/descriptor.hpp"
#include "droidtrace/signature.hpp"

namespace testutil {

// --- random grammar generators -------------------------------------------

inline std::string random_class_name(std::mt19937_64& rng) {
  static constexpr char kFirst[] =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_$";
  static constexpr char kRest[] =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_$";
  std::string name;
  std::size_t segments = 1 + rng() % 4;
  for (std::size_t s = 0; s < segments; ++s) {
    if (s > 0) name += '/';
    std::size_t len = 1 + rng() % 8;
    name += kFirst[rng() % (sizeof(kFirst) - 1)];
    for (std::size_t i = 1; i < len; ++i) {
      name += kRest[rng() % (sizeof(kRest) - 1)];
    }
    if (name.size() >= 55) break;
  }
  return name.substr(0, 60);
}

inline droidtrace::FieldDescriptor random_descriptor(std::mt19937_64& rng,
                                                     int max_depth = 3) {
  static constexpr char kCodes[] = "ZBSCIJFD";
  int depth = static_cast<int>(rng() % static_cast<std::uint64_t>(max_depth + 1));
  if (rng() % 2 == 0) {
    return droidtrace::FieldDescriptor::primitive(kCodes[rng() % 8], depth);
  }
  return droidtrace::FieldDescriptor::of_class(random_class_name(rng), depth);
}

inline std::string random_method(std::mt19937_64& rng) {
  if (rng() % 10 == 0) return rng() % 2 == 0 ? "<init>" : "<clinit>";
  static constexpr char kChars[] =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_$";
  std::string m;
  std::size_t len = 1 + rng() % 12;
  for (std::size_t i = 0; i < len; ++i) m += kChars[rng() % (sizeof(kChars) - 1)];
  return m;
}

inline droidtrace::ApiSignature random_signature(std::mt19937_64& rng) {
  droidtrace::ApiSignature sig;
  sig.owner = droidtrace::FieldDescriptor::of_class(random_class_name(rng));
  sig.method = random_method(rng);
  if (rng() % 2 == 0) {
    droidtrace::MethodProto proto;
    std::size_t nparams = rng() % 6;
    for (std::size_t i = 0; i < nparams; ++i) {
      proto.params.push_back(random_descriptor(rng));
    }
    if (rng() % 3 != 0) proto.return_type = random_descriptor(rng);
    sig.proto = std::move(proto);
  }
  return sig;
}

inline std::string random_bytes(std::mt19937_64& rng, std::size_t max_len) {
  std::string s;
  std::size_t len = rng() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    s += static_cast<char>(rng() % 256);
  }
  return s;
}

// --- process + filesystem helpers ----------------------------------------

struct CommandResult {
  int status = -1;
  std::string output;
};

inline CommandResult run_command(const std::string& command) {
  CommandResult result;
  std::string full = command + " 2>&1";
  FILE* pipe = ::popen(full.c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
    result.output.append(buf, n);
  }
  int rc = ::pclose(pipe);
  result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return result;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("droidtrace_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter_++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

}  // namespace testutil
