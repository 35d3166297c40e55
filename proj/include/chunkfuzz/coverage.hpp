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

// Context-sensitive edge coverage over 2^18 buckets with AFL-style hit-count
// normalization. Two novelty rules: the structural stage accepts new edges
// and new hit-count buckets; the byte-analysis (surgical) stage additionally
// accepts any new per-edge hit-count maximum (loop bucketization).

#ifndef CHUNKFUZZ_COVERAGE_HPP
#define CHUNKFUZZ_COVERAGE_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "chunkfuzz/bytes.hpp"
#include "chunkfuzz/harness.hpp"

namespace chunkfuzz {

inline constexpr uint32_t kCoverageMapBits = 18;
inline constexpr uint32_t kCoverageMapSize = 1u << kCoverageMapBits;

inline uint32_t edge_index(const EdgeEvent& e) {
  uint64_t x = (static_cast<uint64_t>(e.src) << 32) ^ e.dst;
  return static_cast<uint32_t>(mix64(x ^ mix64(e.ctx)) & (kCoverageMapSize - 1));
}

// Normalizes a raw hit count into the class bit for
// {1, 2, 3, 4-7, 8-15, 16-31, 32-127, 128+}.
inline uint8_t bucket_mask(uint32_t count) {
  if (count == 0) return 0;
  if (count == 1) return 1;
  if (count == 2) return 2;
  if (count == 3) return 4;
  if (count < 8) return 8;
  if (count < 16) return 16;
  if (count < 32) return 32;
  if (count < 128) return 64;
  return 128;
}

// Smallest count in a bucket class; bucket_mask(bucket_floor(m)) == m.
inline uint32_t bucket_floor(uint8_t mask) {
  switch (mask) {
    case 1: return 1;
    case 2: return 2;
    case 4: return 3;
    case 8: return 4;
    case 16: return 8;
    case 32: return 16;
    case 64: return 32;
    case 128: return 128;
    default: return 0;
  }
}

// Raw per-index hit counts of one execution, sorted by index.
struct ExecFootprint {
  std::vector<std::pair<uint32_t, uint32_t>> counts;  // (index, raw count)
};

// Folds an edge stream into per-index raw counts. Colliding indices share a
// counter.
inline ExecFootprint record(const std::vector<EdgeEvent>& edges) {
  ExecFootprint fp;
  fp.counts.reserve(edges.size());
  for (const auto& e : edges) fp.counts.emplace_back(edge_index(e), 1);
  std::sort(fp.counts.begin(), fp.counts.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  size_t out = 0;
  for (size_t i = 0; i < fp.counts.size();) {
    uint32_t idx = fp.counts[i].first;
    uint32_t total = 0;
    while (i < fp.counts.size() && fp.counts[i].first == idx) {
      total += fp.counts[i].second;
      ++i;
    }
    fp.counts[out++] = {idx, total};
  }
  fp.counts.resize(out);
  return fp;
}

inline ExecFootprint record(const ExecutionTrace& trace) { return record(trace.edges); }

// 64-bit digest of the bucketized counts. Counts that stay inside one bucket
// hash identically, so benign loop jitter does not read as divergence.
struct PathHash {
  uint64_t h = 0;
  bool operator==(const PathHash&) const = default;
};

inline PathHash path_hash(const ExecFootprint& fp) {
  uint64_t h = 0x243F6A8885A308D3ULL;
  for (const auto& [idx, count] : fp.counts)
    h = mix64(h ^ mix64((static_cast<uint64_t>(idx) << 8) | bucket_mask(count)));
  return PathHash{h};
}

inline PathHash path_hash(const ExecutionTrace& trace) { return path_hash(record(trace)); }

enum class Stage : uint8_t { Surgical, Structure };

struct Novelty {
  bool interesting = false;
  bool new_edge = false;
  bool new_bucket = false;
  bool new_loop_max = false;
};

class CoverageMap {
 public:
  CoverageMap() : virgin_(kCoverageMapSize, 0) {}

  // Starts a byte-analysis stage for one input: loop maxima are stage-scoped
  // and re-seeded from the stage's baseline execution.
  void begin_surgical_stage(const ExecFootprint& baseline) {
    stage_max_.clear();
    for (const auto& [idx, count] : baseline.counts) stage_max_[idx] = count;
  }

  // Decides whether the execution is interesting and, if so, consumes the
  // novelty (the same footprint replayed afterwards reports false).
  Novelty is_interesting(const ExecFootprint& fp, Stage stage) {
    Novelty n;
    for (const auto& [idx, count] : fp.counts) {
      const uint8_t mask = bucket_mask(count);
      const uint8_t seen = virgin_[idx];
      if (seen == 0) n.new_edge = true;
      if (mask & ~seen) n.new_bucket = true;
      if (stage == Stage::Surgical) {
        auto it = stage_max_.find(idx);
        if (it == stage_max_.end() || count > it->second) n.new_loop_max = true;
      }
    }
    n.interesting = n.new_edge || n.new_bucket || n.new_loop_max;
    if (n.interesting) {
      for (const auto& [idx, count] : fp.counts) {
        virgin_[idx] |= bucket_mask(count);
        if (stage == Stage::Surgical) {
          auto& m = stage_max_[idx];
          m = std::max(m, count);
        }
      }
    }
    return n;
  }

  size_t edges_seen() const {
    size_t n = 0;
    for (uint8_t v : virgin_)
      if (v) ++n;
    return n;
  }

  size_t buckets_seen() const {
    size_t n = 0;
    for (uint8_t v : virgin_) n += static_cast<size_t>(std::popcount(v));
    return n;
  }

 private:
  std::vector<uint8_t> virgin_;              // seen bucket bits per index
  std::map<uint32_t, uint32_t> stage_max_;   // per-edge maxima, stage scoped
};

}  // namespace chunkfuzz

#endif  // CHUNKFUZZ_COVERAGE_HPP
