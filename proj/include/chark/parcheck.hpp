#pragma once

#include "chark/rng.hpp"

namespace chark::detail {

/* Returns the least failing sample index, or n when all samples agree.
 * The parallel path computes the same index as the serial one because each
 * sample draws from its own forked stream. */
template <class F, class SampleFn, class TestFn>
int first_failure(int n, uint64_t seed, bool parallel, const SampleFn& make, const TestFn& ok) {
  int bad = n;
  if (parallel) {
#pragma omp parallel for schedule(static) reduction(min : bad)
    for (int i = 0; i < n; ++i) {
      if (i < bad) {
        Rng g = Rng(seed).fork(static_cast<uint64_t>(i));
        auto s = make(g);
        if (!ok(s) && i < bad) bad = i;
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      Rng g = Rng(seed).fork(static_cast<uint64_t>(i));
      auto s = make(g);
      if (!ok(s)) return i;
    }
  }
  return bad;
}

}  // namespace chark::detail
