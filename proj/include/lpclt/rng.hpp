// Copyright 2026 The lpclt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

// Counter-based random streams.
//
// Every random quantity in the library is drawn from a stream addressed by
// (seed, domain, replication, component). Streams are Philox4x32-10 blocks
// keyed by a hash of that address, so replications can be evaluated in any
// order or on any thread and still reproduce the same numbers.

#include <array>
#include <cstdint>

namespace lpclt {

// splitmix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  return mix64(mix64(seed) ^ (salt * 0xD1B54A32D192ED03ULL + 1));
}

enum class StreamDomain : std::uint64_t {
  kDriver = 1,
  kLimitField = 2,
  kNormIntegral = 3,
  kScratch = 4,
};

struct StreamId {
  StreamDomain domain = StreamDomain::kScratch;
  std::uint64_t replication = 0;
  std::uint64_t component = 0;
};

class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(Key key) : key_(key) {}

  // Ten rounds over the 128-bit counter.
  Block operator()(Block counter) const;

 private:
  Key key_;
};

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, StreamId id);

  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  // Standard normal via Box-Muller; consumes two uniforms per pair.
  double normal();
  // +1 or -1 with probability 1/2, one bit per draw.
  double rademacher();

 private:
  void refill();

  Philox4x32 engine_;
  std::uint64_t counter_ = 0;
  Philox4x32::Block buffer_{};
  int buffered_words_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
  std::uint64_t bits_ = 0;
  int bits_left_ = 0;
};

}  // namespace lpclt
