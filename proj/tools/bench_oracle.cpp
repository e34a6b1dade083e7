// Benchmark of the equality oracle: serial reference vs the OpenMP path.
// Builds a batch of derived identities, times both execution policies on
// the same seeds, and checks that every report agrees.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "chark/oracle.hpp"

using namespace chark;

namespace {

Word random_reduced_word(Rng& g, int gens, int len) {
  Word w;
  while (static_cast<int>(w.size()) < len) {
    Gen n{static_cast<uint16_t>(g.below(gens)), g.coin()};
    if (!w.empty() && w.back() == Gen{n.idx, !n.inv}) continue;
    w.push_back(n);
  }
  return w;
}

struct Case {
  CharPoly lhs, rhs;
};

std::vector<Case> make_cases(const GAPresentation& P, int count, int wordlen, uint64_t seed) {
  std::vector<Case> cs;
  Rng g(seed);
  for (int i = 0; i < count; ++i) {
    Word a = random_reduced_word(g, P.gens, wordlen);
    Word b = random_reduced_word(g, P.gens, wordlen);
    Word c = random_reduced_word(g, P.gens, wordlen);
    CharPoly f = symbol_loop(a, P) * symbol_loop(b, P) * symbol_loop(c, P);
    cs.push_back({f, reduce_heuristic(f, P)});
  }
  return cs;
}

double run(const std::vector<Case>& cs, const GAPresentation& P, OracleConfig cfg,
           std::vector<EqReport>& out) {
  out.clear();
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& c : cs) out.push_back(eq_oracle(c.lhs, c.rhs, P, cfg));
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int count = 24, wordlen = 6, samples = 64;
  uint64_t seed = 1;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    auto next = [&]() { return std::stoll(argv[++i]); };
    if (a == "--cases" && i + 1 < argc)
      count = static_cast<int>(next());
    else if (a == "--word-len" && i + 1 < argc)
      wordlen = static_cast<int>(next());
    else if (a == "--samples" && i + 1 < argc)
      samples = static_cast<int>(next());
    else if (a == "--seed" && i + 1 < argc)
      seed = static_cast<uint64_t>(next());
    else {
      std::fprintf(stderr, "usage: %s [--cases N] [--word-len L] [--samples S] [--seed K]\n",
                   argv[0]);
      return 2;
    }
  }

  GAPresentation P = GAPresentation::free_action(3, 0);
  std::vector<Case> cs = make_cases(P, count, wordlen, seed);

  OracleConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;

  std::vector<EqReport> serial, parallel;
  cfg.policy = ExecPolicy::Serial;
  double ts = run(cs, P, cfg, serial);
  cfg.policy = ExecPolicy::Parallel;
  double tp = run(cs, P, cfg, parallel);

  int mismatches = 0;
  for (size_t i = 0; i < cs.size(); ++i) {
    if (serial[i].equal != parallel[i].equal ||
        serial[i].witness_index != parallel[i].witness_index)
      ++mismatches;
    if (!serial[i].equal) {
      std::fprintf(stderr, "case %zu unexpectedly refuted (reducer bug?)\n", i);
      ++mismatches;
    }
  }

  std::printf("cases=%d word_len=%d samples=%d seed=%llu\n", count, wordlen, samples,
              (unsigned long long)seed);
  std::printf("serial:   %.3f s\n", ts);
  std::printf("parallel: %.3f s\n", tp);
  std::printf("speedup:  %.2fx\n", tp > 0 ? ts / tp : 0.0);
  std::printf("verdicts: %s\n", mismatches == 0 ? "identical" : "MISMATCH");
  return mismatches == 0 ? 0 : 1;
}
