// Copyright 2026 The gnse Authors
// SPDX-License-Identifier: Apache-2.0

#include "gnse/checkpoint.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gnse/error.hpp"

namespace gnse {
namespace {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

constexpr char kMagic[4] = {'G', 'N', 'S', 'E'};

template <class T>
void put(std::vector<unsigned char>& out, T value) {
  unsigned char raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  out.insert(out.end(), raw, raw + sizeof(T));
}

template <class T>
T take(const std::vector<unsigned char>& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw Error(ErrorKind::kCorruptCheckpoint, "checkpoint truncated");
  T value;
  std::memcpy(&value, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return value;
}

std::uint32_t crc(const unsigned char* data, std::size_t size) {
  uLong c = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks.
  while (size > 0) {
    const uInt chunk = static_cast<uInt>(std::min<std::size_t>(size, 1u << 30));
    c = crc32(c, data, chunk);
    data += chunk;
    size -= chunk;
  }
  return static_cast<std::uint32_t>(c);
}

}  // namespace

std::vector<unsigned char> encode_checkpoint(const CheckpointHeader& h, const SpectralField& field) {
  const Grid& grid = field.grid();
  if (h.d != static_cast<std::uint32_t>(grid.dim()) || h.n != static_cast<std::uint32_t>(grid.modes()) ||
      h.m != static_cast<std::uint32_t>(grid.box_multiplier()))
    throw Error(ErrorKind::kHeaderMismatch, "checkpoint header does not describe the field's grid");
  std::vector<unsigned char> out;
  out.reserve(64 + field.data().size() * 16 + 4);
  out.insert(out.end(), kMagic, kMagic + 4);
  put(out, kCheckpointVersion);
  put(out, h.d);
  put(out, h.n);
  put(out, h.m);
  put(out, h.alpha);
  put(out, h.s);
  put(out, h.seed);
  put(out, h.member);
  put(out, h.time);
  for (const Complex& v : field.data()) {
    put(out, v.real());
    put(out, v.imag());
  }
  put(out, crc(out.data(), out.size()));
  return out;
}

Checkpoint decode_checkpoint(const std::vector<unsigned char>& bytes, std::size_t& offset) {
  const std::size_t begin = offset;
  std::size_t pos = offset;
  if (pos + 4 > bytes.size() || std::memcmp(bytes.data() + pos, kMagic, 4) != 0)
    throw Error(ErrorKind::kCorruptCheckpoint, "bad checkpoint magic");
  pos += 4;
  const auto version = take<std::uint32_t>(bytes, pos);
  if (version != kCheckpointVersion) {
    throw Error(ErrorKind::kCorruptCheckpoint, "unsupported checkpoint version " + std::to_string(version));
  }
  Checkpoint cp;
  cp.header.d = take<std::uint32_t>(bytes, pos);
  cp.header.n = take<std::uint32_t>(bytes, pos);
  cp.header.m = take<std::uint32_t>(bytes, pos);
  cp.header.alpha = take<double>(bytes, pos);
  cp.header.s = take<double>(bytes, pos);
  cp.header.seed = take<std::uint64_t>(bytes, pos);
  cp.header.member = take<std::uint64_t>(bytes, pos);
  cp.header.time = take<double>(bytes, pos);
  Grid grid;
  try {
    grid = Grid(static_cast<int>(cp.header.d), static_cast<int>(cp.header.n), static_cast<int>(cp.header.m));
  } catch (const Error& e) {
    throw Error(ErrorKind::kCorruptCheckpoint, std::string("checkpoint grid invalid: ") + e.what());
  }
  const std::size_t count = static_cast<std::size_t>(grid.dim()) * grid.size();
  if (pos + count * 16 + 4 > bytes.size()) throw Error(ErrorKind::kCorruptCheckpoint, "checkpoint truncated");
  const std::uint32_t expected = crc(bytes.data() + begin, pos + count * 16 - begin);
  cp.field = SpectralField(grid);
  auto data = cp.field.data();
  for (std::size_t i = 0; i < count; ++i) {
    const double re = take<double>(bytes, pos);
    const double im = take<double>(bytes, pos);
    data[i] = Complex(re, im);
  }
  if (take<std::uint32_t>(bytes, pos) != expected)
    throw Error(ErrorKind::kCorruptCheckpoint, "checkpoint CRC mismatch");
  offset = pos;
  return cp;
}

std::vector<unsigned char> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in), {});
}

void write_file_atomic(const std::string& path, const std::vector<unsigned char>& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot write '" + tmp + "'");
    out.write(reinterpret_cast<const char*>(contents.data()), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorKind::kIo, "short write to '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot rename '" + tmp + "': " + ec.message());
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  write_file_atomic(path, std::vector<unsigned char>(contents.begin(), contents.end()));
}

void write_checkpoint(const std::string& path, const CheckpointHeader& header, const SpectralField& field) {
  write_file_atomic(path, encode_checkpoint(header, field));
}

Checkpoint read_checkpoint(const std::string& path) {
  const auto bytes = read_file(path);
  std::size_t offset = 0;
  Checkpoint cp = decode_checkpoint(bytes, offset);
  if (offset != bytes.size()) throw Error(ErrorKind::kCorruptCheckpoint, "trailing bytes after checkpoint");
  return cp;
}

void write_trajectory(const std::string& path, const CheckpointHeader& header, const Trajectory& traj) {
  std::vector<unsigned char> out;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    CheckpointHeader h = header;
    h.time = traj.times[i];
    const auto rec = encode_checkpoint(h, traj.fields[i]);
    out.insert(out.end(), rec.begin(), rec.end());
  }
  write_file_atomic(path, out);
}

Trajectory read_trajectory(const std::string& path, CheckpointHeader* header) {
  const auto bytes = read_file(path);
  Trajectory traj;
  std::size_t offset = 0;
  while (offset < bytes.size()) {
    Checkpoint cp = decode_checkpoint(bytes, offset);
    if (traj.empty() && header) *header = cp.header;
    if (header) require_compatible(*header, cp.header);
    traj.push(cp.header.time, std::move(cp.field));
  }
  if (traj.empty()) throw Error(ErrorKind::kCorruptCheckpoint, "empty trajectory file '" + path + "'");
  traj.validate();
  return traj;
}

void require_compatible(const CheckpointHeader& a, const CheckpointHeader& b) {
  if (a.d != b.d || a.n != b.n || a.m != b.m || a.alpha != b.alpha || a.s != b.s) {
    std::ostringstream os;
    os.precision(17);
    os << "header mismatch: (d=" << a.d << ", n=" << a.n << ", m=" << a.m << ", alpha=" << a.alpha
       << ", s=" << a.s << ") vs (d=" << b.d << ", n=" << b.n << ", m=" << b.m << ", alpha=" << b.alpha
       << ", s=" << b.s << ")";
    throw Error(ErrorKind::kHeaderMismatch, os.str());
  }
}

}  // namespace gnse
