#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace sandkit {

// Seeded generator with platform-stable draws (std::uniform_int_distribution
// is implementation-defined, which would break byte-identical outputs).
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [lo, hi], inclusive. Modulo bias is irrelevant at 64 bits.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double real01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(uniform(0, static_cast<std::int64_t>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct values from [lo, hi], sorted.
  std::vector<int> sample(int lo, int hi, int k) {
    std::vector<int> pool;
    pool.reserve(hi - lo + 1);
    for (int v = lo; v <= hi; ++v) pool.push_back(v);
    std::vector<int> out;
    for (int i = 0; i < k; ++i) {
      size_t j = static_cast<size_t>(uniform(i, static_cast<std::int64_t>(pool.size()) - 1));
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sandkit
