#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "core/util.hpp"

namespace persim {

// All randomness in the pipeline flows from one root seed through named
// substreams, so partial reruns of any stage see the same draws. A substream
// is identified by (stage name, item index).
inline uint64_t substream_seed(uint64_t root, std::string_view stage, uint64_t item = 0) {
  uint64_t h = splitmix64(root ^ fnv1a64(stage));
  return splitmix64(h ^ (item * 0x9e3779b97f4a7c15ULL + 1));
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  // Uniform integer in [lo, hi] inclusive.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    std::uniform_int_distribution<int64_t> d(lo, hi);
    return d(engine_);
  }

  double uniform(double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(engine_);
  }

  double normal(double mean = 0.0, double sd = 1.0) {
    std::normal_distribution<double> d(mean, sd);
    return d(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// 26-character Crockford base32 identifier (ULID layout). The bits come from
// the seeded substream rather than the wall clock so that reruns of the same
// configuration produce identical ids and identical artifacts.
inline std::string make_ulid(uint64_t seed, uint64_t item) {
  static const char kAlphabet[] = "0123456789ABCDEFGHJKMNPQRSTVWXYZ";
  uint64_t hi = splitmix64(seed ^ splitmix64(item + 0x51ed270b7a2cca05ULL));
  uint64_t lo = splitmix64(hi ^ item);
  std::string out(26, '0');
  // 130 bits of alphabet capacity for 128 bits of state; top two bits unused.
  uint64_t bits[2] = {hi, lo};
  for (int i = 25; i >= 0; --i) {
    int word = (i >= 13) ? 1 : 0;
    out[static_cast<size_t>(i)] = kAlphabet[bits[word] & 31u];
    bits[word] >>= 5;
  }
  return out;
}

}  // namespace persim
