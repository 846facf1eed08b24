#pragma once

#include <cstdint>

namespace sparsecsp {

// Counter-based generator: the value of draw i depends only on (seed, stream,
// i), so any partition of the draws reproduces the same sequence.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

  CounterRng split(std::uint64_t stream) const noexcept {
    CounterRng child(0);
    child.key_ = mix(key_ ^ mix(stream ^ 0xd1b54a32d192ed03ULL));
    return child;
  }

  std::uint64_t operator()(std::uint64_t counter) const noexcept {
    return mix(key_ + mix(counter + 0x9e3779b97f4a7c15ULL));
  }

  // Multiply-high reduction into [0, bound); bias below bound / 2^64.
  std::uint64_t below(std::uint64_t counter, std::uint64_t bound) const noexcept {
    unsigned __int128 x = static_cast<unsigned __int128>((*this)(counter)) * bound;
    return static_cast<std::uint64_t>(x >> 64);
  }

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t key_;
};

} // namespace sparsecsp
