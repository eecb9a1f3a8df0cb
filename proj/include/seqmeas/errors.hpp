// Copyright 2026 The seqmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
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

namespace seqmeas {

enum class ErrorKind {
  kDimension,
  kNotHermitian,
  kNotPositive,
  kNotEffect,
  kNotState,
  kWeight,
  kConditioningOnNull,
  kNotSubunital,
  kNotPerp,
  kNotProjection,
  kNotOrthogonal,
  kNotChannel,
  kNotSurjective,
  kNotObservable,
  kUnknownLaw,
  kConvergence,
  kInvalidArgument,
};

constexpr std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimension: return "DimensionError";
    case ErrorKind::kNotHermitian: return "NotHermitian";
    case ErrorKind::kNotPositive: return "NotPositive";
    case ErrorKind::kNotEffect: return "NotEffect";
    case ErrorKind::kNotState: return "NotState";
    case ErrorKind::kWeight: return "WeightError";
    case ErrorKind::kConditioningOnNull: return "ConditioningOnNull";
    case ErrorKind::kNotSubunital: return "NotSubunital";
    case ErrorKind::kNotPerp: return "NotPerp";
    case ErrorKind::kNotProjection: return "NotProjection";
    case ErrorKind::kNotOrthogonal: return "NotOrthogonal";
    case ErrorKind::kNotChannel: return "NotChannel";
    case ErrorKind::kNotSurjective: return "NotSurjective";
    case ErrorKind::kNotObservable: return "NotObservable";
    case ErrorKind::kUnknownLaw: return "UnknownLaw";
    case ErrorKind::kConvergence: return "ConvergenceError";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

/// Every failure raised by the library. The kind is stable and is what the
/// CLI reports; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view kind_name() const noexcept { return error_kind_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

inline void require_same_dim(std::size_t a, std::size_t b, std::string_view where) {
  if (a != b) {
    fail(ErrorKind::kDimension, std::string(where) + ": dimension " + std::to_string(a) + " vs " +
                                    std::to_string(b));
  }
}

}  // namespace seqmeas
