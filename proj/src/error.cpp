// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include "gnse/error.hpp"

namespace gnse {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimensionTooSmall: return "dimension-too-small";
    case ErrorKind::kAlphaOutOfRange: return "alpha-out-of-range";
    case ErrorKind::kSOutOfRange: return "s-out-of-range";
    case ErrorKind::kCriticalAlpha: return "critical-alpha";
    case ErrorKind::kInvalidGrid: return "invalid-grid";
    case ErrorKind::kSizeMismatch: return "size-mismatch";
    case ErrorKind::kGridMismatch: return "grid-mismatch";
    case ErrorKind::kNegativeTime: return "negative-time";
    case ErrorKind::kNonzeroMean: return "nonzero-mean";
    case ErrorKind::kWeightNotIntegrable: return "weight-not-integrable";
    case ErrorKind::kWindowUnresolved: return "window-unresolved";
    case ErrorKind::kHypothesisViolation: return "hypothesis-violation";
    case ErrorKind::kNodeMismatch: return "node-mismatch";
    case ErrorKind::kDiverged: return "diverged";
    case ErrorKind::kBlowUp: return "blow-up";
    case ErrorKind::kOverlapNotSampled: return "overlap-not-sampled";
    case ErrorKind::kEmptyWindow: return "empty-window";
    case ErrorKind::kNonpositiveValues: return "nonpositive-values";
    case ErrorKind::kUndefinedRatio: return "undefined-ratio";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kInvalidConfig: return "invalid-config";
    case ErrorKind::kHeaderMismatch: return "header-mismatch";
    case ErrorKind::kCorruptCheckpoint: return "corrupt-checkpoint";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

}  // namespace gnse
