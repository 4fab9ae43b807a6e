// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include "omnitok/evs_io.hpp"

#include <array>
#include <bit>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "omnitok/error.hpp"

namespace omnitok::evs {

namespace {

constexpr std::array<char, 4> kTensorMagic = {'E', 'V', 'S', 'T'};
constexpr std::array<char, 4> kMaskMagic = {'E', 'V', 'S', 'M'};

void put_u32(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                         static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
  out.write(bytes, 4);
}

std::uint32_t get_u32(std::istream& in, const char* what) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  require(in.gcount() == 4, ErrorCode::Parse, std::string("truncated input reading ") + what);
  return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
         (static_cast<std::uint32_t>(bytes[2]) << 16) | (static_cast<std::uint32_t>(bytes[3]) << 24);
}

void expect_header(std::istream& in, const std::array<char, 4>& magic, const char* kind) {
  std::array<char, 4> got{};
  in.read(got.data(), 4);
  require(in.gcount() == 4 && got == magic, ErrorCode::Parse,
          std::string("not an ") + kind + " file (bad magic)");
  const std::uint32_t version = get_u32(in, "version");
  require(version == kFormatVersion, ErrorCode::Parse,
          std::string("unsupported ") + kind + " version " + std::to_string(version));
}

std::uint32_t checked_u32(std::int64_t v, const char* what) {
  require(v >= 0 && v <= std::numeric_limits<std::uint32_t>::max(), ErrorCode::InvalidInput,
          std::string(what) + " does not fit in u32");
  return static_cast<std::uint32_t>(v);
}

template <typename Fn>
auto with_file(const std::filesystem::path& path, std::ios::openmode mode, Fn fn) {
  std::fstream file(path, mode | std::ios::binary);
  require(file.is_open(), ErrorCode::Io, "cannot open " + path.string());
  return fn(file);
}

}  // namespace

void write_tensor(std::ostream& out, const FeatureTensor& tensor) {
  validate(tensor);
  out.write(kTensorMagic.data(), 4);
  put_u32(out, kFormatVersion);
  put_u32(out, checked_u32(tensor.tubelets, "tubelets"));
  put_u32(out, checked_u32(tensor.spatial, "spatial"));
  put_u32(out, checked_u32(tensor.dim, "dim"));
  for (const float v : tensor.data) put_u32(out, std::bit_cast<std::uint32_t>(v));
  require(out.good(), ErrorCode::Io, "failed writing tensor");
}

FeatureTensor read_tensor(std::istream& in) {
  expect_header(in, kTensorMagic, "EVST");
  FeatureTensor tensor;
  tensor.tubelets = get_u32(in, "tubelets");
  tensor.spatial = get_u32(in, "spatial");
  tensor.dim = get_u32(in, "dim");
  require(tensor.tubelets >= 1 && tensor.spatial >= 1 && tensor.dim >= 1, ErrorCode::Parse,
          "EVST dimensions must all be at least 1");
  // u32 dims can multiply past any sane allocation; cap before resizing.
  constexpr std::int64_t kMaxValues = std::int64_t{1} << 30;
  require(tensor.tubelets <= kMaxValues / tensor.spatial &&
              tensor.dim <= kMaxValues / (tensor.tubelets * tensor.spatial),
          ErrorCode::Parse, "EVST shape exceeds 2^30 values");
  const auto count = static_cast<std::size_t>(tensor.tubelets * tensor.spatial * tensor.dim);
  tensor.data.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    tensor.data[i] = std::bit_cast<float>(get_u32(in, "tensor payload"));
  }
  validate(tensor);
  return tensor;
}

void write_mask(std::ostream& out, const RetentionMask& mask) {
  out.write(kMaskMagic.data(), 4);
  put_u32(out, kFormatVersion);
  put_u32(out, checked_u32(mask.tubelets, "tubelets"));
  put_u32(out, checked_u32(mask.spatial, "spatial"));
  for (const std::uint8_t k : mask.keep) out.put(k != 0 ? '\x01' : '\x00');
  require(out.good(), ErrorCode::Io, "failed writing mask");
}

RetentionMask read_mask(std::istream& in) {
  expect_header(in, kMaskMagic, "EVSM");
  RetentionMask mask;
  mask.tubelets = get_u32(in, "tubelets");
  mask.spatial = get_u32(in, "spatial");
  require(mask.tubelets >= 1 && mask.spatial >= 1 &&
              mask.tubelets <= (std::int64_t{1} << 30) / mask.spatial,
          ErrorCode::Parse, "EVSM shape must be positive and under 2^30 tokens");
  const auto count = static_cast<std::size_t>(mask.tubelets * mask.spatial);
  mask.keep.resize(count);
  in.read(reinterpret_cast<char*>(mask.keep.data()), static_cast<std::streamsize>(count));
  require(static_cast<std::size_t>(in.gcount()) == count, ErrorCode::Parse,
          "truncated EVSM payload");
  for (const std::uint8_t k : mask.keep) {
    require(k <= 1, ErrorCode::Parse, "EVSM payload bytes must be 0 or 1");
    mask.retained += k;
  }
  return mask;
}

void save_tensor(const std::filesystem::path& path, const FeatureTensor& tensor) {
  with_file(path, std::ios::out | std::ios::trunc, [&](std::fstream& f) { write_tensor(f, tensor); });
}

FeatureTensor load_tensor(const std::filesystem::path& path) {
  return with_file(path, std::ios::in, [](std::fstream& f) { return read_tensor(f); });
}

void save_mask(const std::filesystem::path& path, const RetentionMask& mask) {
  with_file(path, std::ios::out | std::ios::trunc, [&](std::fstream& f) { write_mask(f, mask); });
}

RetentionMask load_mask(const std::filesystem::path& path) {
  return with_file(path, std::ios::in, [](std::fstream& f) { return read_mask(f); });
}

}  // namespace omnitok::evs
