#pragma once

#include <cstdint>
#include <random>

namespace qet {

// One independent substream per shot: the state depends only on
// (master_seed, stream_index), never on which thread draws first.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : engine_(mix(master_seed, stream_index)) {}

  // Uniform in [0, 1).
  double next_unit() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  }

  std::mt19937_64 engine_;
};

}  // namespace qet
