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


#include "lpclt/rng.hpp"

#include <cmath>
#include <numbers>

namespace lpclt {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

Philox4x32::Key stream_key(std::uint64_t seed, const StreamId& id) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ static_cast<std::uint64_t>(id.domain));
  h = mix64(h ^ id.replication);
  h = mix64(h ^ (id.component + 0x632BE59BD9B4E019ULL));
  return {static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
}

}  // namespace

Philox4x32::Block Philox4x32::operator()(Block ctr) const {
  Key key = key_;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

RandomStream::RandomStream(std::uint64_t seed, StreamId id)
    : engine_(stream_key(seed, id)) {}

void RandomStream::refill() {
  buffer_ = engine_({static_cast<std::uint32_t>(counter_),
                     static_cast<std::uint32_t>(counter_ >> 32), 0u, 0u});
  ++counter_;
  buffered_words_ = 4;
}

std::uint64_t RandomStream::next_u64() {
  if (buffered_words_ < 2) refill();
  const int at = 4 - buffered_words_;
  buffered_words_ -= 2;
  return static_cast<std::uint64_t>(buffer_[at]) |
         (static_cast<std::uint64_t>(buffer_[at + 1]) << 32);
}

double RandomStream::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_normal_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

double RandomStream::rademacher() {
  if (bits_left_ == 0) {
    bits_ = next_u64();
    bits_left_ = 64;
  }
  const double value = (bits_ & 1u) ? 1.0 : -1.0;
  bits_ >>= 1;
  --bits_left_;
  return value;
}

}  // namespace lpclt
