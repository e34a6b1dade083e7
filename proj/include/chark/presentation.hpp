#pragma once

#include <string>
#include <vector>

#include "chark/word.hpp"

namespace chark {

/* A finitely generated group action (G, M): G given by generators and
 * relators, M by orbit count plus per-orbit stabilizer generators. The
 * fully symbolic regime is the free one (no relators, no stabilizers);
 * everything else routes equality through the evaluation oracle. */
struct GAPresentation {
  int gens = 0;
  std::vector<Word> relators;
  int orbits = 0;
  std::vector<std::vector<Word>> stabilizers;  // one list per orbit

  bool free_form() const {
    if (!relators.empty()) return false;
    for (const auto& st : stabilizers)
      if (!st.empty()) return false;
    return true;
  }

  void validate() const {
    if (gens < 0 || orbits < 0) throw error("negative generator or orbit count");
    if (!stabilizers.empty() && static_cast<int>(stabilizers.size()) != orbits)
      throw error("stabilizer list must have one entry per orbit");
    auto check_word = [this](const Word& w) {
      for (Gen g : w)
        if (static_cast<int>(g.idx) >= gens) throw error("word letter outside generator range");
    };
    for (const auto& r : relators) {
      check_word(r);
      if (reduced(r).empty()) throw error("trivial relator");
    }
    for (const auto& st : stabilizers)
      for (const auto& w : st) check_word(w);
  }

  void check_point(const MarkedPoint& p) const {
    if (p.orbit < 0 || p.orbit >= orbits) throw error("orbit index out of range");
    for (Gen g : p.prefix)
      if (static_cast<int>(g.idx) >= gens) throw error("point prefix letter outside generator range");
  }

  static GAPresentation free_action(int gens, int orbits) {
    GAPresentation p;
    p.gens = gens;
    p.orbits = orbits;
    p.stabilizers.assign(orbits, {});
    return p;
  }
};

}  // namespace chark
