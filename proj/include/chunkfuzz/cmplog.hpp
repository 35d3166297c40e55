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

// Comparison table: per-site instance ring of operand values, first-seen
// timestamps and hit counts. Stored sparsely; desk-scale targets touch few
// of the 2^16 possible sites.

#ifndef CHUNKFUZZ_CMPLOG_HPP
#define CHUNKFUZZ_CMPLOG_HPP

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "chunkfuzz/bytes.hpp"
#include "chunkfuzz/harness.hpp"

namespace chunkfuzz {

// Ring capacity per site: the most recent |J| = 256 observations.
inline constexpr size_t kMaxInstances = 256;

struct CmpInstance {
  std::array<uint8_t, kMaxOperandBytes> op1{};
  std::array<uint8_t, kMaxOperandBytes> op2{};
  uint8_t size = 0;
  CmpKind kind = CmpKind::Compare;

  ByteView op(int which) const {
    return ByteView(which == 0 ? op1.data() : op2.data(), size);
  }
  uint64_t value(int which) const { return read_le(op(which), 0, std::min<size_t>(size, 8)); }
  bool same_op(int which, const CmpInstance& other) const {
    return size == other.size && kind == other.kind &&
           std::equal(op(which).begin(), op(which).end(), other.op(which).begin());
  }
};

struct SiteRecord {
  Addr addr = 0;
  uint32_t first_seen_ts = 0;  // 0-based ordinal of first observation
  uint32_t hits = 0;           // total observations, not capped by the ring
  std::vector<CmpInstance> instances;  // most recent <= kMaxInstances, in order
};

class ComparisonTable {
 public:
  bool contains(SiteId s) const { return entries_.count(s) != 0; }
  const SiteRecord& at(SiteId s) const { return entries_.at(s); }
  const std::map<SiteId, SiteRecord>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }

  void add(SiteId s, Addr addr, uint32_t ts, const CmpEvent& e) {
    auto [it, inserted] = entries_.try_emplace(s);
    SiteRecord& rec = it->second;
    if (inserted) {
      rec.addr = addr;
      rec.first_seen_ts = ts;
    }
    rec.hits++;
    CmpInstance inst;
    inst.op1 = e.op1;
    inst.op2 = e.op2;
    inst.size = e.size;
    inst.kind = e.kind;
    if (rec.instances.size() == kMaxInstances)
      rec.instances.erase(rec.instances.begin());
    rec.instances.push_back(inst);
  }

 private:
  std::map<SiteId, SiteRecord> entries_;
};

// Pure fold over the comparison-event stream.
inline ComparisonTable build_ct(const std::vector<CmpEvent>& cmps) {
  ComparisonTable ct;
  uint32_t ts = 0;
  for (const auto& e : cmps) ct.add(e.site(), e.addr, ts++, e);
  return ct;
}

inline ComparisonTable build_ct(const ExecutionTrace& trace) { return build_ct(trace.cmps); }

// Sites ascending by first-seen timestamp.
inline std::vector<SiteId> sites_by_exec_order(const ComparisonTable& ct) {
  std::vector<SiteId> sites;
  sites.reserve(ct.size());
  for (const auto& [s, rec] : ct.entries()) sites.push_back(s);
  std::sort(sites.begin(), sites.end(), [&](SiteId a, SiteId b) {
    return ct.at(a).first_seen_ts < ct.at(b).first_seen_ts;
  });
  return sites;
}

// One line per site: siteid, addr, firstSeenTs, hits, first/last operands.
inline std::string dump_ct(const ComparisonTable& ct) {
  std::ostringstream out;
  for (SiteId s : sites_by_exec_order(ct)) {
    const SiteRecord& rec = ct.at(s);
    out << std::hex << "site=" << s << " addr=" << rec.addr << std::dec
        << " ts=" << rec.first_seen_ts << " hits=" << rec.hits;
    if (!rec.instances.empty()) {
      const CmpInstance& f = rec.instances.front();
      const CmpInstance& l = rec.instances.back();
      out << " first=" << to_hex(f.op(0)) << "," << to_hex(f.op(1))
          << " last=" << to_hex(l.op(0)) << "," << to_hex(l.op(1));
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace chunkfuzz

#endif  // CHUNKFUZZ_CMPLOG_HPP
