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

// In-process instrumentation contract. Targets are ordinary functions that
// cooperate with the fuzzer by reporting basic-block transfers, comparison
// operands, comparator-like calls, and call-stack context through a Harness
// handle. Checksum-style guards go through the guard helpers so the fuzzer
// can force their pass branch ("patching") while still observing the true
// operand values.

#ifndef CHUNKFUZZ_HARNESS_HPP
#define CHUNKFUZZ_HARNESS_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <memory>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "chunkfuzz/bytes.hpp"

namespace chunkfuzz {

using Addr = uint32_t;     // comparison-instruction label, unique per target
using BlockId = uint32_t;  // basic-block label, unique per target
using CtxHash = uint64_t;  // one-word call-stack hash

// Comparison site: instruction address XORed with the calling context,
// truncated to 16 bits.
using SiteId = uint16_t;

inline uint16_t fold16(uint64_t x) {
  return static_cast<uint16_t>(x ^ (x >> 16) ^ (x >> 32) ^ (x >> 48));
}

inline SiteId make_site(Addr addr, CtxHash ctx) {
  return static_cast<SiteId>(fold16(addr) ^ fold16(ctx));
}

enum class CmpKind : uint8_t { Compare, ComparatorCall };

// Comparator-call operands are dumped up to 32 bytes each.
inline constexpr size_t kMaxOperandBytes = 32;

struct CmpEvent {
  Addr addr = 0;
  CtxHash ctx = 0;
  uint8_t size = 0;
  CmpKind kind = CmpKind::Compare;
  std::array<uint8_t, kMaxOperandBytes> op1{};
  std::array<uint8_t, kMaxOperandBytes> op2{};

  SiteId site() const { return make_site(addr, ctx); }
  ByteView op1_bytes() const { return ByteView(op1.data(), size); }
  ByteView op2_bytes() const { return ByteView(op2.data(), size); }
};

struct EdgeEvent {
  BlockId src = 0;
  BlockId dst = 0;
  CtxHash ctx = 0;
};

// Addresses whose guard comparison is forced to report "check passed".
// Keyed by instruction address, not SiteId.
class PatchSet {
 public:
  PatchSet() = default;
  explicit PatchSet(std::set<Addr> addrs) : addrs_(std::move(addrs)) {}

  bool contains(Addr a) const { return addrs_.count(a) != 0; }
  void add(Addr a) { addrs_.insert(a); }
  void remove(Addr a) { addrs_.erase(a); }
  bool empty() const { return addrs_.empty(); }
  const std::set<Addr>& addrs() const { return addrs_; }

 private:
  std::set<Addr> addrs_;
};

enum class RunStatus : uint8_t { Ok, Crash, Timeout };

enum class InstrMode : uint8_t { Full, Light };

struct ExecutionTrace {
  std::vector<CmpEvent> cmps;   // empty in light mode
  std::vector<EdgeEvent> edges;
  RunStatus status = RunStatus::Ok;
};

// Event collector handed to a running target. Maintains the calling-context
// hash as a reversible XOR-rotate over return-site labels.
class Harness {
 public:
  Harness(ExecutionTrace& out, const PatchSet& patches, InstrMode mode,
          size_t event_budget = 1u << 22)
      : out_(out), patches_(patches), mode_(mode), budget_(event_budget) {}

  // --- control-flow ---

  // Marks entry into block b; emits an edge from the previous block.
  void block(BlockId b) {
    if (have_block_) emit_edge(cur_block_, b);
    cur_block_ = b;
    have_block_ = true;
  }

  void call_enter(Addr return_site) {
    ctx_ = std::rotl(ctx_, 7) ^ mix64(return_site);
  }

  void call_exit(Addr return_site) {
    ctx_ = std::rotr(ctx_ ^ mix64(return_site), 7);
  }

  CtxHash ctx() const { return ctx_; }

  // --- comparisons ---

  // Log-only comparison over scalar operands of width 1/2/4/8.
  void cmp(Addr a, uint8_t width, uint64_t op1, uint64_t op2) {
    if (mode_ == InstrMode::Full) emit_cmp(a, width, CmpKind::Compare, op1, op2);
    spend();
  }

  // Equality guard: logs the true operands and returns whether the check
  // passes. A patched address always passes.
  bool guard_eq(Addr a, uint8_t width, uint64_t op1, uint64_t op2) {
    cmp(a, width, op1, op2);
    return op1 == op2 || patches_.contains(a);
  }

  // Comparator call (memcmp-like): dumps up to 32 bytes per operand.
  bool guard_blob_eq(Addr a, ByteView op1, ByteView op2) {
    size_t w = std::min({op1.size(), op2.size(), kMaxOperandBytes});
    if (mode_ == InstrMode::Full) {
      CmpEvent e;
      e.addr = a;
      e.ctx = ctx_;
      e.size = static_cast<uint8_t>(w);
      e.kind = CmpKind::ComparatorCall;
      std::memcpy(e.op1.data(), op1.data(), w);
      std::memcpy(e.op2.data(), op2.data(), w);
      out_.cmps.push_back(e);
    }
    spend();
    bool eq = op1.size() == op2.size() &&
              std::memcmp(op1.data(), op2.data(), op1.size()) == 0;
    return eq || patches_.contains(a);
  }

  // Targets with input-independent loops consult this to honor timeouts.
  bool exhausted() const { return spent_ >= budget_; }

 private:
  void emit_edge(BlockId src, BlockId dst) {
    out_.edges.push_back(EdgeEvent{src, dst, ctx_});
    spend();
  }

  void emit_cmp(Addr a, uint8_t width, CmpKind kind, uint64_t op1, uint64_t op2) {
    CmpEvent e;
    e.addr = a;
    e.ctx = ctx_;
    e.size = width;
    e.kind = kind;
    write_le_array(e.op1, op1, width);
    write_le_array(e.op2, op2, width);
    out_.cmps.push_back(e);
  }

  static void write_le_array(std::array<uint8_t, kMaxOperandBytes>& dst, uint64_t v,
                             uint8_t width) {
    for (uint8_t i = 0; i < width; ++i) dst[i] = static_cast<uint8_t>(v >> (8 * i));
  }

  void spend() { ++spent_; }

  ExecutionTrace& out_;
  const PatchSet& patches_;
  InstrMode mode_;
  size_t budget_;
  size_t spent_ = 0;
  CtxHash ctx_ = 0;
  BlockId cur_block_ = 0;
  bool have_block_ = false;
};

// RAII guard pairing call_enter/call_exit.
class CallScope {
 public:
  CallScope(Harness& h, Addr return_site) : h_(h), site_(return_site) {
    h_.call_enter(site_);
  }
  ~CallScope() { h_.call_exit(site_); }
  CallScope(const CallScope&) = delete;
  CallScope& operator=(const CallScope&) = delete;

 private:
  Harness& h_;
  Addr site_;
};

// A registered target. Adapters hold no mutable state between runs, so
// independent executions may proceed on separate threads against separate
// trace buffers.
class TargetAdapter {
 public:
  virtual ~TargetAdapter() = default;
  virtual std::string_view name() const = 0;
  virtual RunStatus run(Harness& h, ByteView input) const = 0;
};

// Executes the target once. Deterministic for fixed (input, patches).
inline ExecutionTrace run_target(const TargetAdapter& target, ByteView input,
                                 const PatchSet& patches, InstrMode mode,
                                 size_t event_budget = 1u << 22) {
  ExecutionTrace trace;
  Harness h(trace, patches, mode, event_budget);
  RunStatus st = target.run(h, input);
  trace.status = h.exhausted() ? RunStatus::Timeout : st;
  return trace;
}

}  // namespace chunkfuzz

#endif  // CHUNKFUZZ_HARNESS_HPP
