// Copyright 2026 The qmix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace qmix {

enum class ErrorKind {
  DimensionMismatch,
  InvalidArgument,
  NotInChiImage,
  NotHermitian,
  NotAntiHermitian,
  PairingFailure,
  NotPositive,
  TraceNotOne,
  NotOrthogonal,
  NotNormalized,
  RankOutOfRange,
  RankOne,
  NotPurifiable,
  NotUnitary,
  NotProjectorFamily,
  DriftExceeded,
  WitnessNotFound,
  PropositionViolated,
  SchemaError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by qmix carries a kind so callers (the CLI, the
/// python bindings) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Schema violations point at the offending JSON node.
class SchemaError : public Error {
 public:
  SchemaError(std::string pointer, const std::string& message)
      : Error(ErrorKind::SchemaError, (pointer.empty() ? "/" : pointer) + ": " + message),
        pointer_(std::move(pointer)),
        detail_(message) {}

  const std::string& pointer() const noexcept { return pointer_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string pointer_;
  std::string detail_;
};

}  // namespace qmix
