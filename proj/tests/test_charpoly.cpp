#include <doctest.h>

#include "chark/charpoly.hpp"
#include "testutil.hpp"

using namespace chark;

namespace {

const GAPresentation P = GAPresentation::free_action(2, 3);
const NameTable kNames = NameTable::standard(2);

Word W(const std::string& s) { return parse_word(s, kNames); }

}  // namespace

TEST_CASE("loop symbol canonicalization") {
  CHECK(symbol_loop(Word{}, P) == CharPoly::constant(Rational(2)));
  CHECK(symbol_loop(W("g1 g1^-1"), P) == CharPoly::constant(Rational(2)));
  CHECK(symbol_loop(W("g1^-1"), P) == symbol_loop(W("g1"), P));
  CHECK(symbol_loop(W("g2 g1"), P) == symbol_loop(W("g1 g2"), P));
  CHECK(symbol_loop(W("g1 g2 g1^-1"), P) == symbol_loop(W("g2"), P));
}

TEST_CASE("arc symbol canonicalization") {
  MarkedPoint p{{}, 0}, q{{}, 1};
  CHECK(symbol_arc(p, p, P).is_zero());
  CHECK(symbol_arc(p, q, P) == -symbol_arc(q, p, P));

  // translation: [g p, g q] = [p, q]
  MarkedPoint gp{W("g1"), 0}, gq{W("g1"), 1};
  CHECK(symbol_arc(gp, gq, P) == symbol_arc(p, q, P));

  // the stored form translates the first point to its orbit representative
  MarkedPoint a{W("g1"), 0}, b{W("g1 g2"), 1};
  CHECK(symbol_arc(a, b, P) == symbol_arc({{}, 0}, {W("g2"), 1}, P));

  // same orbit, nontrivial translate: [p, g p] = -[p, g^-1 p] after orienting
  MarkedPoint p0{{}, 0};
  MarkedPoint gp0{W("g1"), 0};
  CHECK(symbol_arc(p0, gp0, P) == -symbol_arc(gp0, p0, P));
  CHECK_FALSE(symbol_arc(p0, gp0, P).is_zero());

  CHECK_THROWS_AS(symbol_arc({{}, 0}, {{}, 5}, P), error);
}

TEST_CASE("polynomial ring operations") {
  CharPoly f = symbol_loop(W("g1"), P);
  CharPoly g = symbol_loop(W("g2"), P);
  CharPoly h = symbol_arc({{}, 0}, {{}, 1}, P);

  CHECK((f + g) * h == f * h + g * h);
  CHECK(f * g == g * f);
  CHECK(f - f == CharPoly{});
  CHECK(Rational(3) * f + Rational(-3) * f == CharPoly{});
  CHECK((f * g) * h == f * (g * h));
  CHECK(CharPoly::constant(Rational(1)) * f == f);
  CHECK(CharPoly::constant(Rational(0)).is_zero());
}

TEST_CASE("degree bound") {
  CHECK(degree_bound(CharPoly::constant(Rational(5))) == 0);
  CHECK(degree_bound(symbol_loop(W("g1 g2"), P)) == 3);
  CHECK(degree_bound(symbol_arc({{}, 0}, {W("g2"), 1}, P)) == 3);
  CHECK(degree_bound(symbol_arc({{}, 0}, {{}, 1}, P)) == 2);
  CharPoly prod = symbol_loop(W("g1"), P) * symbol_arc({{}, 0}, {{}, 1}, P);
  CHECK(degree_bound(prod) == 4);
  CharPoly sum = prod + symbol_loop(W("g2"), P);
  CHECK(degree_bound(sum) == 6);
}

TEST_CASE("printing") {
  CHECK(to_string(CharPoly{}, P) == "0");
  CHECK(to_string(CharPoly::constant(Rational(2)), P) == "2");
  CHECK(to_string(symbol_loop(W("g1"), P), P) == "loop(g1)");
  CHECK(to_string(-symbol_loop(W("g1"), P), P) == "-loop(g1)");
  CHECK(to_string(symbol_arc({{}, 0}, {W("g2"), 1}, P), P) == "arc(e.p1, g2.p2)");
  CharPoly mix = CharPoly::constant(Rational(2)) - Rational(3) * symbol_loop(W("g1"), P);
  CHECK(to_string(mix, P) == "2 - 3*loop(g1)");
}
