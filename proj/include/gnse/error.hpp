// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace gnse {

enum class ErrorKind {
  kDimensionTooSmall,
  kAlphaOutOfRange,
  kSOutOfRange,
  kCriticalAlpha,
  kInvalidGrid,
  kSizeMismatch,
  kGridMismatch,
  kNegativeTime,
  kNonzeroMean,
  kWeightNotIntegrable,
  kWindowUnresolved,
  kHypothesisViolation,
  kNodeMismatch,
  kDiverged,
  kBlowUp,
  kOverlapNotSampled,
  kEmptyWindow,
  kNonpositiveValues,
  kUndefinedRatio,
  kInvalidArgument,
  kInvalidConfig,
  kHeaderMismatch,
  kCorruptCheckpoint,
  kIo,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gnse
