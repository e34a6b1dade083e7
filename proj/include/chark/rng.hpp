#pragma once

#include <cstdint>

namespace chark {

/* Deterministic splitmix64 stream. Oracle sample i always draws from
 * fork(i), so results are independent of evaluation order and thread
 * count, and identical across platforms. */
struct Rng {
  uint64_t state;

  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // unbiased uniform draw from [0, n), n >= 1
  uint64_t below(uint64_t n) {
    uint64_t lim = ~0ull - ~0ull % n;
    uint64_t x;
    do {
      x = next();
    } while (x >= lim);
    return x % n;
  }

  // uniform draw from [lo, hi], inclusive
  int64_t range(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo) + 1));
  }

  bool coin() { return next() & 1u; }

  // child stream for sample i; does not advance this stream
  Rng fork(uint64_t i) const {
    Rng r(state ^ (0x632be59bd9b4e019ull * (i + 1)));
    r.next();
    return r;
  }
};

}  // namespace chark
