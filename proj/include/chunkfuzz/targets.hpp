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

// Reference targets. Each parses a small binary format and reports edges,
// comparisons, and comparator calls through the Harness. Crashes are
// signalled by returning RunStatus::Crash; parse rejection is a normal Ok.

#ifndef CHUNKFUZZ_TARGETS_HPP
#define CHUNKFUZZ_TARGETS_HPP

#include <memory>
#include <string_view>
#include <vector>

#include "chunkfuzz/bytes.hpp"
#include "chunkfuzz/crc32.hpp"
#include "chunkfuzz/harness.hpp"

namespace chunkfuzz {

// ---------------------------------------------------------------------------
// running_example: [id:2][size:2][data:size][checksum:2], little-endian.
// The checksum is a 16-bit fold of the first 4+size bytes:
//   ck ^= byte[i] << (i % 8)
// ---------------------------------------------------------------------------

namespace running_example_ids {
inline constexpr Addr kCmpA = 0x1A01;  // id upper bound
inline constexpr Addr kCmpB = 0x1B02;  // size vs available bytes
inline constexpr Addr kCmpC = 0x1C03;  // fold-loop condition
inline constexpr Addr kCmpD = 0x1D04;  // checksum guard

enum Block : BlockId {
  kEntry = 1,
  kRejectShort,
  kAbortA,
  kAfterA,
  kAbortB,
  kAfterB,
  kLoopHead,
  kLoopBody,
  kAfterLoop,
  kAbortD,
  kProcess,
};

inline uint16_t fold(ByteView bytes, size_t count) {
  uint16_t ck = 0;
  for (size_t i = 0; i < count; ++i)
    ck = static_cast<uint16_t>(ck ^ (static_cast<uint16_t>(bytes[i]) << (i % 8)));
  return ck;
}
}  // namespace running_example_ids

class RunningExampleTarget final : public TargetAdapter {
 public:
  std::string_view name() const override { return "running_example"; }

  RunStatus run(Harness& h, ByteView in) const override {
    using namespace running_example_ids;
    h.block(kEntry);
    if (in.size() < 6) {
      h.block(kRejectShort);
      return RunStatus::Ok;
    }
    const uint16_t id = read_le16(in, 0);
    const uint16_t size = read_le16(in, 2);

    h.cmp(kCmpA, 2, id, 0xAAAA);
    if (id >= 0xAAAA) {
      h.block(kAbortA);
      return RunStatus::Ok;
    }
    h.block(kAfterA);

    const uint32_t avail = static_cast<uint32_t>(in.size() - 6);
    h.cmp(kCmpB, 4, size, avail);
    if (size > avail) {
      h.block(kAbortB);
      return RunStatus::Ok;
    }
    h.block(kAfterB);

    const uint32_t offset = 4 + size;
    uint16_t ck = 0;
    for (uint32_t i = 0;; ++i) {
      h.block(kLoopHead);
      h.cmp(kCmpC, 4, i, offset);
      if (!(i < offset)) break;
      h.block(kLoopBody);
      ck = static_cast<uint16_t>(ck ^ (static_cast<uint16_t>(in[i]) << (i % 8)));
    }
    h.block(kAfterLoop);

    const uint16_t expected = read_le16(in, offset);
    if (!h.guard_eq(kCmpD, 2, ck, expected)) {
      h.block(kAbortD);
      return RunStatus::Ok;
    }
    h.block(kProcess);  // process id and data
    return RunStatus::Ok;
  }
};

// ---------------------------------------------------------------------------
// bytewise_magic: expects "IHDR" at offsets 4..7, checked one byte per
// comparison (short-circuit chain), then folds the remaining bytes.
// ---------------------------------------------------------------------------

namespace bytewise_magic_ids {
inline constexpr Addr kCmpM0 = 0x2A01;
inline constexpr Addr kCmpM1 = 0x2A02;
inline constexpr Addr kCmpM2 = 0x2A03;
inline constexpr Addr kCmpM3 = 0x2A04;
inline constexpr Addr kCmpSum = 0x2B01;

enum Block : BlockId {
  kEntry = 1,
  kRejectShort,
  kFailMagic,
  kPass0,
  kPass1,
  kPass2,
  kPass3,
  kMagicOk,
  kSumLoop,
  kSumZero,
  kSumNonZero,
};
}  // namespace bytewise_magic_ids

class BytewiseMagicTarget final : public TargetAdapter {
 public:
  std::string_view name() const override { return "bytewise_magic"; }

  RunStatus run(Harness& h, ByteView in) const override {
    using namespace bytewise_magic_ids;
    h.block(kEntry);
    if (in.size() < 8) {
      h.block(kRejectShort);
      return RunStatus::Ok;
    }
    static constexpr uint8_t kType[4] = {'I', 'H', 'D', 'R'};
    static constexpr Addr kSites[4] = {kCmpM0, kCmpM1, kCmpM2, kCmpM3};
    static constexpr BlockId kPassBlocks[4] = {kPass0, kPass1, kPass2, kPass3};
    for (int i = 0; i < 4; ++i) {
      h.cmp(kSites[i], 1, in[4 + i], kType[i]);
      if (in[4 + i] != kType[i]) {
        h.block(kFailMagic);
        return RunStatus::Ok;
      }
      h.block(kPassBlocks[i]);
    }
    h.block(kMagicOk);

    uint32_t sum = 0;
    for (size_t i = 8; i < in.size(); ++i) {
      h.block(kSumLoop);
      sum += in[i];
    }
    h.cmp(kCmpSum, 4, sum, 0);
    h.block(sum == 0 ? kSumZero : kSumNonZero);
    return RunStatus::Ok;
  }
};

// ---------------------------------------------------------------------------
// minipng: [8-byte magic][chunks...]. Chunk: length (big-endian u32), type
// (4 ASCII bytes), data (length bytes), CRC-32/ISO-HDLC over type+data
// (big-endian u32). Types: HDRX (first chunk, data[0] is a version byte that
// must be 1), DATA (scanned byte-wise; "WZ" runs extra processing; adjacent
// DE AD crashes), TEXT (skipped), IEND (stops the walk; anything after it is
// never read).
// ---------------------------------------------------------------------------

namespace minipng_ids {
inline constexpr Addr kCallMagic = 0x3001;
inline constexpr Addr kCmpLen = 0x3101;
inline constexpr Addr kCmpTypeHdrx = 0x3201;
inline constexpr Addr kCmpTypeData = 0x3202;
inline constexpr Addr kCmpTypeText = 0x3203;
inline constexpr Addr kCmpTypeIend = 0x3204;
inline constexpr Addr kCmpCrc = 0x3301;
inline constexpr Addr kCmpVersion = 0x3401;
inline constexpr Addr kCmpDataW = 0x3501;
inline constexpr Addr kCmpDataZ = 0x3502;
inline constexpr Addr kCmpCrashHi = 0x3503;
inline constexpr Addr kCmpCrashLo = 0x3504;

enum Block : BlockId {
  kEntry = 1,
  kRejectShort,
  kBadMagic,
  kMagicOk,
  kChunkHead,
  kBadLength,
  kBadCrc,
  kCrcOk,
  kHdrx,
  kBadVersion,
  kHdrxOk,
  kNotFirstHdrx,
  kData,
  kDataLoop,
  kDataW,
  kDataWZ,
  kText,
  kIend,
  kUnknownType,
  kMissingHdrx,
  kDone,
};

inline constexpr uint8_t kMagic[8] = {0x89, 'M', 'P', 'G', 0x0D, 0x0A, 0x1A, 0x0A};

inline uint32_t type_word(const char* t) {
  const uint8_t* p = reinterpret_cast<const uint8_t*>(t);
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

// Seed-building helper; keeps tests and corpus generation honest about the
// on-disk layout.
inline void append_chunk(Bytes& out, const char* type, ByteView data) {
  Bytes body;
  body.insert(body.end(), type, type + 4);
  body.insert(body.end(), data.begin(), data.end());
  const uint32_t crc = crc32(body);
  Bytes len(4);
  write_be32(len, 0, static_cast<uint32_t>(data.size()));
  out.insert(out.end(), len.begin(), len.end());
  out.insert(out.end(), body.begin(), body.end());
  Bytes crc_bytes(4);
  write_be32(crc_bytes, 0, crc);
  out.insert(out.end(), crc_bytes.begin(), crc_bytes.end());
}

inline Bytes magic_bytes() { return Bytes(kMagic, kMagic + 8); }
}  // namespace minipng_ids

class MinipngTarget final : public TargetAdapter {
 public:
  std::string_view name() const override { return "minipng"; }

  RunStatus run(Harness& h, ByteView in) const override {
    using namespace minipng_ids;
    h.block(kEntry);
    if (in.size() < 8 + 12) {
      h.block(kRejectShort);
      return RunStatus::Ok;
    }
    if (!h.guard_blob_eq(kCallMagic, in.subspan(0, 8), ByteView(kMagic, 8))) {
      h.block(kBadMagic);
      return RunStatus::Ok;
    }
    h.block(kMagicOk);

    size_t off = 8;
    bool first = true;
    bool saw_hdrx = false;
    while (off + 12 <= in.size() && !h.exhausted()) {
      h.block(kChunkHead);
      const uint32_t length = read_be32(in, off);
      const uint32_t room = static_cast<uint32_t>(in.size() - off - 12);
      h.cmp(kCmpLen, 4, length, room);
      if (length > room) {
        h.block(kBadLength);
        return RunStatus::Ok;
      }
      const uint32_t type = read_le32(in, off + 4);
      ByteView covered = in.subspan(off + 4, 4 + length);
      ByteView data = in.subspan(off + 8, length);
      const uint32_t computed = crc32(covered);
      const uint32_t stored = read_be32(in, off + 8 + length);
      if (!h.guard_eq(kCmpCrc, 4, computed, stored)) {
        h.block(kBadCrc);
        return RunStatus::Ok;
      }
      h.block(kCrcOk);

      h.cmp(kCmpTypeHdrx, 4, type, type_word("HDRX"));
      if (type == type_word("HDRX")) {
        h.block(kHdrx);
        if (!first) {
          h.block(kNotFirstHdrx);
          return RunStatus::Ok;
        }
        if (length < 1) {
          h.block(kBadVersion);
          return RunStatus::Ok;
        }
        h.cmp(kCmpVersion, 1, data[0], 1);
        if (data[0] != 1) {
          h.block(kBadVersion);
          return RunStatus::Ok;
        }
        h.block(kHdrxOk);
        saw_hdrx = true;
      } else if (!saw_hdrx) {
        h.block(kMissingHdrx);
        return RunStatus::Ok;
      } else {
        h.cmp(kCmpTypeData, 4, type, type_word("DATA"));
        if (type == type_word("DATA")) {
          h.block(kData);
          for (size_t i = 0; i < data.size() && !h.exhausted(); ++i) {
            h.block(kDataLoop);
            h.cmp(kCmpDataW, 1, data[i], 'W');
            if (data[i] == 'W') {
              h.block(kDataW);
              if (i + 1 < data.size()) {
                h.cmp(kCmpDataZ, 1, data[i + 1], 'Z');
                if (data[i + 1] == 'Z') h.block(kDataWZ);
              }
            }
            if (i + 1 < data.size()) {
              h.cmp(kCmpCrashHi, 1, data[i], 0xDE);
              if (data[i] == 0xDE) {
                h.cmp(kCmpCrashLo, 1, data[i + 1], 0xAD);
                if (data[i + 1] == 0xAD) return RunStatus::Crash;
              }
            }
          }
        } else {
          h.cmp(kCmpTypeText, 4, type, type_word("TEXT"));
          if (type == type_word("TEXT")) {
            h.block(kText);
          } else {
            h.cmp(kCmpTypeIend, 4, type, type_word("IEND"));
            if (type == type_word("IEND")) {
              h.block(kIend);
              break;  // trailing bytes are never inspected
            }
            h.block(kUnknownType);
            return RunStatus::Ok;
          }
        }
      }
      first = false;
      off += 12 + length;
    }
    h.block(kDone);
    return RunStatus::Ok;
  }
};

// ---------------------------------------------------------------------------
// multiformat: dispatcher over three parsers. A leading "GET " token (checked
// via a comparator call) selects the token parser; otherwise byte 0 selects
// format X or Y. X and Y validate the same two header fields through the same
// two comparison instructions but in swapped order, then check a 16-bit magic
// through a shared helper (distinct calling contexts, same instruction).
// ---------------------------------------------------------------------------

namespace multiformat_ids {
inline constexpr Addr kCallGet = 0x4001;
inline constexpr Addr kCmpFieldA = 0x4101;
inline constexpr Addr kCmpFieldB = 0x4102;
inline constexpr Addr kCmpMagic = 0x4201;  // shared helper instruction
inline constexpr Addr kRetX = 0x4301;
inline constexpr Addr kRetY = 0x4302;

enum Block : BlockId {
  kEntry = 1,
  kRejectShort,
  kHttp,
  kDispX,
  kDispY,
  kRejectUnknown,
  kFieldFail,
  kMagicCheck,
  kMagicFail,
  kXDone,
  kYDone,
};
}  // namespace multiformat_ids

class MultiformatTarget final : public TargetAdapter {
 public:
  std::string_view name() const override { return "multiformat"; }

  RunStatus run(Harness& h, ByteView in) const override {
    using namespace multiformat_ids;
    h.block(kEntry);
    if (in.size() < 6) {
      h.block(kRejectShort);
      return RunStatus::Ok;
    }
    static constexpr uint8_t kGet[4] = {'G', 'E', 'T', ' '};
    if (h.guard_blob_eq(kCallGet, in.subspan(0, 4), ByteView(kGet, 4))) {
      h.block(kHttp);
      return RunStatus::Ok;
    }
    if (in[0] == 'X') {
      h.block(kDispX);
      h.cmp(kCmpFieldA, 1, in[1], 0x10);
      if (in[1] != 0x10) {
        h.block(kFieldFail);
        return RunStatus::Ok;
      }
      h.cmp(kCmpFieldB, 1, in[2], 0x20);
      if (in[2] != 0x20) {
        h.block(kFieldFail);
        return RunStatus::Ok;
      }
      bool ok;
      {
        CallScope scope(h, kRetX);
        ok = check_magic(h, read_le16(in, 3), 0xBEEF);
      }
      h.block(ok ? kXDone : kMagicFail);
      return RunStatus::Ok;
    }
    if (in[0] == 'Y') {
      h.block(kDispY);
      h.cmp(kCmpFieldB, 1, in[2], 0x20);
      if (in[2] != 0x20) {
        h.block(kFieldFail);
        return RunStatus::Ok;
      }
      h.cmp(kCmpFieldA, 1, in[1], 0x10);
      if (in[1] != 0x10) {
        h.block(kFieldFail);
        return RunStatus::Ok;
      }
      bool ok;
      {
        CallScope scope(h, kRetY);
        ok = check_magic(h, read_le16(in, 3), 0xCAFE);
      }
      h.block(ok ? kYDone : kMagicFail);
      return RunStatus::Ok;
    }
    h.block(kRejectUnknown);
    return RunStatus::Ok;
  }

 private:
  static bool check_magic(Harness& h, uint16_t have, uint16_t want) {
    using namespace multiformat_ids;
    h.block(kMagicCheck);
    h.cmp(kCmpMagic, 2, have, want);
    return have == want;
  }
};

// ---------------------------------------------------------------------------
// nested_checksum: ['N','C'][n:1][payload:n][inner:2][outer:2]. inner is a
// 16-bit fold of the payload; outer folds everything before it, including the
// inner checksum bytes. The outer guard runs first.
// ---------------------------------------------------------------------------

namespace nested_checksum_ids {
inline constexpr Addr kCmpMagic = 0x5001;
inline constexpr Addr kCmpLen = 0x5101;
inline constexpr Addr kCmpOuter = 0x5201;
inline constexpr Addr kCmpInner = 0x5202;

enum Block : BlockId {
  kEntry = 1,
  kRejectShort,
  kBadMagic,
  kBadLength,
  kAbortOuter,
  kAfterOuter,
  kAbortInner,
  kProcess,
};

inline uint16_t fold(ByteView bytes) {
  uint16_t ck = 0;
  for (size_t i = 0; i < bytes.size(); ++i)
    ck = static_cast<uint16_t>(ck ^ (static_cast<uint16_t>(bytes[i]) << (i % 8)));
  return ck;
}

inline Bytes build(ByteView payload) {
  Bytes out{'N', 'C', static_cast<uint8_t>(payload.size())};
  out.insert(out.end(), payload.begin(), payload.end());
  const uint16_t inner = fold(payload);
  out.push_back(static_cast<uint8_t>(inner));
  out.push_back(static_cast<uint8_t>(inner >> 8));
  const uint16_t outer = fold(ByteView(out.data(), out.size()));
  out.push_back(static_cast<uint8_t>(outer));
  out.push_back(static_cast<uint8_t>(outer >> 8));
  return out;
}
}  // namespace nested_checksum_ids

class NestedChecksumTarget final : public TargetAdapter {
 public:
  std::string_view name() const override { return "nested_checksum"; }

  RunStatus run(Harness& h, ByteView in) const override {
    using namespace nested_checksum_ids;
    h.block(kEntry);
    if (in.size() < 7) {
      h.block(kRejectShort);
      return RunStatus::Ok;
    }
    const uint16_t magic = read_le16(in, 0);
    h.cmp(kCmpMagic, 2, magic, 0x434E);  // "NC"
    if (magic != 0x434E) {
      h.block(kBadMagic);
      return RunStatus::Ok;
    }
    const uint32_t n = in[2];
    const uint32_t need = 3 + n + 4;
    h.cmp(kCmpLen, 4, need, static_cast<uint32_t>(in.size()));
    if (need != in.size()) {
      h.block(kBadLength);
      return RunStatus::Ok;
    }
    const uint16_t outer_computed = fold(in.subspan(0, 3 + n + 2));
    const uint16_t outer_stored = read_le16(in, 3 + n + 2);
    if (!h.guard_eq(kCmpOuter, 2, outer_computed, outer_stored)) {
      h.block(kAbortOuter);
      return RunStatus::Ok;
    }
    h.block(kAfterOuter);
    const uint16_t inner_computed = fold(in.subspan(3, n));
    const uint16_t inner_stored = read_le16(in, 3 + n);
    if (!h.guard_eq(kCmpInner, 2, inner_computed, inner_stored)) {
      h.block(kAbortInner);
      return RunStatus::Ok;
    }
    h.block(kProcess);
    return RunStatus::Ok;
  }
};

// ---------------------------------------------------------------------------

inline std::vector<std::unique_ptr<TargetAdapter>> register_reference_targets() {
  std::vector<std::unique_ptr<TargetAdapter>> targets;
  targets.push_back(std::make_unique<RunningExampleTarget>());
  targets.push_back(std::make_unique<BytewiseMagicTarget>());
  targets.push_back(std::make_unique<MinipngTarget>());
  targets.push_back(std::make_unique<MultiformatTarget>());
  targets.push_back(std::make_unique<NestedChecksumTarget>());
  return targets;
}

inline const TargetAdapter* find_target(
    const std::vector<std::unique_ptr<TargetAdapter>>& targets, std::string_view name) {
  for (const auto& t : targets)
    if (t->name() == name) return t.get();
  return nullptr;
}

}  // namespace chunkfuzz

#endif  // CHUNKFUZZ_TARGETS_HPP
