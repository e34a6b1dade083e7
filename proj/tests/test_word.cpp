#include <doctest.h>

#include "chark/word.hpp"

using namespace chark;

namespace {

const NameTable kNames = NameTable::standard(3);

Word W(const std::string& s) { return parse_word(s, kNames); }

Word random_reduced_word(Rng& g, int gens, int len) {
  Word w;
  while (static_cast<int>(w.size()) < len) {
    Gen cand{static_cast<uint16_t>(g.below(gens)), g.coin()};
    if (!w.empty() && w.back().idx == cand.idx && w.back().inv != cand.inv) continue;
    w.push_back(cand);
  }
  return w;
}

}  // namespace

TEST_CASE("word parsing and printing") {
  CHECK(word_str(W("g1 g2^-1"), kNames) == "g1 g2^-1");
  CHECK(W("e").empty());
  CHECK(word_str(Word{}, kNames) == "e");
  CHECK(W("g1 e g2") == W("g1 g2"));
  CHECK(W("g1 g1^-1").empty());  // parse reduces
  CHECK_THROWS_AS(W("h1"), error);
  CHECK_THROWS_AS(W("e^-1"), error);
}

TEST_CASE("free reduction") {
  CHECK(reduced(W("g1") ) == W("g1"));
  Word w{{0, false}, {1, false}, {1, true}, {0, false}};
  CHECK(reduced(w) == Word{{0, false}, {0, false}});
  CHECK(is_reduced(reduced(w)));
  CHECK_FALSE(is_reduced(w));
}

TEST_CASE("inverse, concat, power") {
  CHECK(inverse(W("g1 g2")) == W("g2^-1 g1^-1"));
  CHECK(concat(W("g1 g2"), W("g2^-1 g3")) == W("g1 g3"));
  CHECK(power(W("g1"), 3) == W("g1 g1 g1"));
  CHECK(power(W("g1"), -2) == W("g1^-1 g1^-1"));
  CHECK(power(W("g1 g2"), 0).empty());
  // interior cancellation under powers of a conjugate
  CHECK(power(W("g1 g2 g1^-1"), 2) == W("g1 g2 g2 g1^-1"));
}

TEST_CASE("cyclic reduction") {
  CHECK(cyclic_reduced(W("g1 g2 g1^-1")) == W("g2"));
  CHECK(cyclic_reduced(W("g1 g2 g2^-1 g1^-1")).empty());
  CHECK(cyclic_reduced(W("g1 g2")) == W("g1 g2"));
}

TEST_CASE("length-lex word order") {
  CHECK(cmp_words(W("g2"), W("g1 g1")) < 0);   // shorter first
  CHECK(cmp_words(W("g1"), W("g1^-1")) < 0);   // plain before inverse
  CHECK(cmp_words(W("g1^-1"), W("g2")) < 0);
  CHECK(cmp_words(W("g1 g2"), W("g1 g2")) == 0);
}

TEST_CASE("loop canonical form") {
  CHECK(loop_canon(W("g1^-1")) == W("g1"));
  CHECK(loop_canon(W("g2 g1")) == W("g1 g2"));
  CHECK(loop_canon(W("g1 g2 g1^-1")) == W("g2"));
  CHECK(loop_canon(W("g2^-1 g1^-1")) == W("g1 g2"));
  CHECK(loop_canon(W("g1 g1^-1")).empty());

  Rng g(99);
  for (int i = 0; i < 200; ++i) {
    Word w = random_reduced_word(g, 3, 1 + static_cast<int>(g.below(6)));
    Word c = loop_canon(w);
    CHECK(loop_canon(inverse(w)) == c);
    // conjugation invariance
    Word h = random_reduced_word(g, 3, 1 + static_cast<int>(g.below(3)));
    CHECK(loop_canon(concat(concat(h, w), inverse(h))) == c);
    // the canonical form is minimal in its class
    CHECK(cmp_words(c, cyclic_reduced(w)) <= 0);
  }
}

TEST_CASE("word root extraction") {
  auto [u1, n1] = word_root(W("g1 g2 g1 g2"));
  CHECK(u1 == W("g1 g2"));
  CHECK(n1 == 2);
  auto [u2, n2] = word_root(W("g1 g1 g1"));
  CHECK(u2 == W("g1"));
  CHECK(n2 == 3);
  auto [u3, n3] = word_root(W("g1 g2"));
  CHECK(u3 == W("g1 g2"));
  CHECK(n3 == 1);
}

TEST_CASE("action on marked points") {
  MarkedPoint p{W("g2"), 1};
  MarkedPoint q = act(W("g1"), p);
  CHECK(q.prefix == W("g1 g2"));
  CHECK(q.orbit == 1);
  CHECK(act(W("g2^-1"), p).prefix.empty());
}
