#ifndef HTMDOC_RNG_HPP
#define HTMDOC_RNG_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace htmdoc {

// Deterministic random source. std::uniform_*_distribution output is
// implementation-defined, so every draw here is built directly from the
// mt19937_64 bit stream; identical seeds give identical sequences on any
// platform.
class Rng {
public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Derive a child seed from (seed, tag); used for per-category splits etc.
  static uint64_t derive(uint64_t seed, const std::string& tag) {
    uint64_t h = 14695981039346656037ull ^ seed;
    for (unsigned char c : tag) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return h;
  }

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, bound) by rejection; bound > 0.
  uint64_t uniform_int(uint64_t bound) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Standard normal via Box-Muller.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(uniform_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Sample `count` distinct elements from [0, n), returned sorted.
  std::vector<uint32_t> sample_without_replacement(uint32_t n, uint32_t count);

private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline std::vector<uint32_t> Rng::sample_without_replacement(uint32_t n,
                                                             uint32_t count) {
  std::vector<uint32_t> pool(n);
  for (uint32_t i = 0; i < n; ++i) pool[i] = i;
  for (uint32_t i = 0; i < count; ++i) {
    uint32_t j = i + static_cast<uint32_t>(uniform_int(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace htmdoc

#endif
