// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gnse/grid.hpp"

namespace gnse {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct CheckpointHeader {
  std::uint32_t d = 0;
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  double alpha = 0.0;
  double s = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t member = 0;
  double time = 0.0;

  bool operator==(const CheckpointHeader&) const = default;
};

struct Checkpoint {
  CheckpointHeader header;
  SpectralField field;
};

/// Record layout, little-endian: "GNSE", u32 version, u32 d, n, m, f64 alpha,
/// f64 s, u64 seed, u64 member, f64 time, then d arrays of n^d (re, im) f64
/// pairs in lattice order, then the CRC32 of everything before it.
std::vector<unsigned char> encode_checkpoint(const CheckpointHeader& header, const SpectralField& field);
/// Decodes one record starting at `offset`; advances `offset` past it.
Checkpoint decode_checkpoint(const std::vector<unsigned char>& bytes, std::size_t& offset);

/// Single-record file, written to a temporary name and renamed.
void write_checkpoint(const std::string& path, const CheckpointHeader& header, const SpectralField& field);
Checkpoint read_checkpoint(const std::string& path);

/// Trajectory file: consecutive records, one per node (header.time = node time).
void write_trajectory(const std::string& path, const CheckpointHeader& header, const Trajectory& traj);
Trajectory read_trajectory(const std::string& path, CheckpointHeader* header = nullptr);

/// Throws kHeaderMismatch unless (d, n, m, alpha, s) agree.
void require_compatible(const CheckpointHeader& a, const CheckpointHeader& b);

std::vector<unsigned char> read_file(const std::string& path);
/// Writes `path + ".tmp"` and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& contents);
void write_file_atomic(const std::string& path, const std::vector<unsigned char>& contents);

}  // namespace gnse
