#pragma once

#include <cstdint>

namespace sslab {

// splitmix64: counter-based, trivially splittable. Every Monte Carlo
// routine in this project derives its substreams from (master seed,
// stream tag, chunk index) so results do not depend on thread schedule.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform on the open interval (0,1)
  double next_double() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Stateless mixing of a seed with a tag and chunk index. The tag keeps
// different modules from sharing a stream even with the same master seed.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t tag,
                                    std::uint64_t chunk) {
  SplitMix64 mix(master ^ (tag * 0xd6e8feb86659fd93ULL) ^
                 (chunk * 0xa0761d6478bd642fULL));
  mix.next_u64();
  return mix.next_u64();
}

}  // namespace sslab
