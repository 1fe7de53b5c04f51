#pragma once

#include <array>
#include <cstdint>

namespace asymwalk {

// Identifier recorded in every artifact so runs can be reproduced bit for bit.
inline constexpr const char* kRngId = "philox4x32-10/asymwalk-1";

// Philox4x32 with 10 rounds (Salmon et al., SC'11). Stateless: the output is a
// pure function of (counter, key).
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block generate(Block ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }
};

// Named sub-streams of one trial. Forward and backward walk steps are separate
// streams so that extending a path in one direction never perturbs the other.
enum class Stream : std::uint32_t {
  forward = 0,
  backward = 1,
  candidates = 2,
  sampler = 3,
  calibration = 4,
  aux = 5,
};

// Counter-based uniform stream keyed by (seed, trial, stream); draw i is a pure
// function of those and i, so results never depend on scheduling.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial, Stream stream) noexcept
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32) ^
                 (static_cast<std::uint32_t>(stream) * 0x85EBCA6Bu)},
        trial_(trial) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform(std::uint64_t index) const noexcept {
    const std::uint64_t block = index >> 1;
    const Philox4x32::Block out = Philox4x32::generate(
        {static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
         static_cast<std::uint32_t>(trial_), static_cast<std::uint32_t>(trial_ >> 32)},
        key_);
    const std::size_t k = (index & 1u) * 2;
    const std::uint64_t bits = (std::uint64_t{out[k]} << 32) | out[k + 1];
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

  std::uint64_t below(std::uint64_t index, std::uint64_t bound) const noexcept {
    return static_cast<std::uint64_t>(uniform(index) * static_cast<double>(bound)) % bound;
  }

 private:
  Philox4x32::Key key_;
  std::uint64_t trial_;
};

// Sequential convenience wrapper over TrialRng.
class DrawSequence {
 public:
  DrawSequence(std::uint64_t seed, std::uint64_t trial, Stream stream) noexcept
      : rng_(seed, trial, stream) {}
  double uniform() noexcept { return rng_.uniform(next_++); }
  std::uint64_t below(std::uint64_t bound) noexcept { return rng_.below(next_++, bound); }

 private:
  TrialRng rng_;
  std::uint64_t next_ = 0;
};

}  // namespace asymwalk
