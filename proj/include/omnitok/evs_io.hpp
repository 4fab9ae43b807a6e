// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>

#include "omnitok/evs.hpp"

namespace omnitok::evs {

// Binary formats, all integers little-endian:
//   tensor: "EVST" u32 version=1, u32 T, u32 S, u32 D, T*S*D IEEE-754 binary32
//   mask:   "EVSM" u32 version=1, u32 T, u32 S, T*S bytes of 0/1
inline constexpr std::uint32_t kFormatVersion = 1;

void write_tensor(std::ostream& out, const FeatureTensor& tensor);
FeatureTensor read_tensor(std::istream& in);
void write_mask(std::ostream& out, const RetentionMask& mask);
/// Restores keep/retained; budget_q is not stored and reads back as 0.
RetentionMask read_mask(std::istream& in);

void save_tensor(const std::filesystem::path& path, const FeatureTensor& tensor);
FeatureTensor load_tensor(const std::filesystem::path& path);
void save_mask(const std::filesystem::path& path, const RetentionMask& mask);
RetentionMask load_mask(const std::filesystem::path& path);

}  // namespace omnitok::evs
