/*
Copyright 2026 The chunkfuzz authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef CHUNKFUZZ_CRC32_HPP
#define CHUNKFUZZ_CRC32_HPP

#include <array>
#include <cstdint>

#include "chunkfuzz/bytes.hpp"

namespace chunkfuzz {

// CRC-32/ISO-HDLC (reflected 0xEDB88320, init/xorout 0xFFFFFFFF), table-driven.
namespace detail {
inline const std::array<uint32_t, 256>& crc32_table() {
  static const std::array<uint32_t, 256> table = [] {
    std::array<uint32_t, 256> t{};
    for (uint32_t n = 0; n < 256; ++n) {
      uint32_t c = n;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[n] = c;
    }
    return t;
  }();
  return table;
}
}  // namespace detail

inline uint32_t crc32(ByteView data) {
  const auto& table = detail::crc32_table();
  uint32_t c = 0xFFFFFFFFu;
  for (uint8_t b : data) c = table[(c ^ b) & 0xFF] ^ (c >> 8);
  return c ^ 0xFFFFFFFFu;
}

}  // namespace chunkfuzz

#endif  // CHUNKFUZZ_CRC32_HPP
