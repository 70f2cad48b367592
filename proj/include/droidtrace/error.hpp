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

#include <stdexcept>
#include <string>

namespace droidtrace {

// Structured parse failure. Every parser in this library reports malformed
// input through this type; arbitrary bytes never crash a parser.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration or a contract violation detected before any device
// interaction (bad profile, bad descriptor, catalog mismatch).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what)
      : std::runtime_error(what) {}
};

// Thrown by DeviceEndpoint implementations when an app install fails.
class InstallError : public std::runtime_error {
 public:
  explicit InstallError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by DeviceEndpoint implementations when a component launch fails.
class LaunchError : public std::runtime_error {
 public:
  explicit LaunchError(const std::string& what) : std::runtime_error(what) {}
};

// Any other device-side failure (push to a missing path, I/O).
class DeviceError : public std::runtime_error {
 public:
  explicit DeviceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace droidtrace
