// Copyright 2026 The qmarkov Authors
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

namespace qmc {

enum class ErrorKind {
  DimensionMismatch,
  NonFiniteEntry,
  NotIsometry,
  NoiseDimMismatch,
  DegenerateFixedSpace,
  NotAState,
  NotPrimitive,
  NotInDomain,
  SizeGuardExceeded,
  AmbiguousPeripheral,
  NotCentered,
  NotHermitian,
  NotNormalized,
  NotPSD,
  SizeMismatch,
  NegativeFisher,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorKind::NotIsometry: return "NotIsometry";
    case ErrorKind::NoiseDimMismatch: return "NoiseDimMismatch";
    case ErrorKind::DegenerateFixedSpace: return "DegenerateFixedSpace";
    case ErrorKind::NotAState: return "NotAState";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::NotInDomain: return "NotInDomain";
    case ErrorKind::SizeGuardExceeded: return "SizeGuardExceeded";
    case ErrorKind::AmbiguousPeripheral: return "AmbiguousPeripheral";
    case ErrorKind::NotCentered: return "NotCentered";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::NegativeFisher: return "NegativeFisher";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Domain error raised by every qmc operation. The kind is stable and is what
/// the command line tool reports; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return to_string(kind_); }

 private:
  ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw Error(kind, message);
}

}  // namespace qmc
