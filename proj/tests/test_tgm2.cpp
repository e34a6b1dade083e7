#include <doctest.h>

#include "chark/oracle.hpp"
#include "chark/tgm2.hpp"
#include "testutil.hpp"

using namespace chark;
using testutil::random_point;
using testutil::random_word_upto;

namespace {

const GAPresentation P2 = GAPresentation::free_action(2, 2);
const NameTable kNames = NameTable::standard(2);
const FieldCtx<Fp> Kp{kDefaultPrime};

Word W(const std::string& s) { return parse_word(s, kNames); }

TgWord theta(const MarkedPoint& p, const MarkedPoint& q) {
  TgWord w;
  w.thetas.emplace_back(p, q);
  return w;
}

TgWord random_tgword(Rng& g, const GAPresentation& P, int len) {
  std::vector<TgLetter> ls;
  for (int i = 0; i < len; ++i) {
    if (g.coin())
      ls.push_back(TgLetter::group(random_word_upto(g, P.gens, 2)));
    else
      ls.push_back(TgLetter::theta(random_point(g, P, 2), random_point(g, P, 2)));
  }
  return tg_normalize(ls);
}

}  // namespace

TEST_CASE("absorption normal form") {
  MarkedPoint p{{}, 0}, q{W("g2"), 1};
  SUBCASE("group letter absorbs into the next tensor") {
    TgWord w = tg_normalize({TgLetter::group(W("g1")), TgLetter::theta(p, q)});
    CHECK(w.thetas.size() == 1);
    CHECK(w.thetas[0].first == MarkedPoint{W("g1"), 0});
    CHECK(w.thetas[0].second == q);
  }
  SUBCASE("trailing group letter enters the last tensor inverted") {
    TgWord w = tg_normalize({TgLetter::theta(p, q), TgLetter::group(W("g1"))});
    CHECK(w.thetas.size() == 1);
    CHECK(w.thetas[0].first == p);
    CHECK(w.thetas[0].second == MarkedPoint{W("g1^-1 g2"), 1});
  }
  SUBCASE("adjacent group letters merge and cancel") {
    TgWord w = tg_normalize({TgLetter::group(W("g1")), TgLetter::group(W("g1^-1 g2"))});
    CHECK(w.pure_x());
    CHECK(w.x == W("g2"));
    CHECK(tg_normalize({TgLetter::group(W("g1")), TgLetter::group(W("g1^-1"))}).is_identity());
  }
  SUBCASE("normalization preserves evaluation") {
    Rng g(3);
    for (int t = 0; t < 40; ++t) {
      std::vector<TgLetter> ls;
      int len = 1 + (int)g.below(4);
      for (int i = 0; i < len; ++i) {
        if (g.coin())
          ls.push_back(TgLetter::group(random_word_upto(g, 2, 2)));
        else
          ls.push_back(TgLetter::theta(random_point(g, P2, 2), random_point(g, P2, 2)));
      }
      Rep<Fp> r = sample_rep(P2, Kp, g);
      Mat2<Fp> direct = identity(Kp);
      for (const TgLetter& l : ls)
        direct = direct * (l.is_theta
                               ? outer(rho_point(r, l.p, Kp), rho_point(r, l.q, Kp))
                               : eval_word(r, l.x, Kp));
      CHECK(eval_tgword(tg_normalize(ls), r, Kp) == direct);
    }
  }
}

TEST_CASE("adjoint on tensor words") {
  MarkedPoint p{{}, 0}, q{W("g1"), 1};
  auto [s1, w1] = iota_tg(TgWord{W("g1 g2"), {}});
  CHECK(s1 == 1);
  CHECK(w1.x == W("g2^-1 g1^-1"));
  auto [s2, w2] = iota_tg(theta(p, q));
  CHECK(s2 == -1);
  CHECK(w2.thetas[0].first == q);
  CHECK(w2.thetas[0].second == p);

  Rng g(7);
  for (int t = 0; t < 30; ++t) {
    TgWord w = random_tgword(g, P2, 1 + (int)g.below(4));
    auto [s, wi] = iota_tg(w);
    Rep<Fp> r = sample_rep(P2, Kp, g);
    CHECK(Kp.from_int(s) * eval_tgword(wi, r, Kp) == iota(eval_tgword(w, r, Kp)));
    // tau is adjoint-invariant, symbolically
    CHECK(tau_word(w, P2) == Rational(s) * tau_word(wi, P2));
  }
}

TEST_CASE("tau is cyclic and splits off traces") {
  Rng g(11);
  for (int t = 0; t < 30; ++t) {
    TgWord a = random_tgword(g, P2, 1 + (int)g.below(3));
    TgWord b = random_tgword(g, P2, 1 + (int)g.below(3));
    CHECK(tau_word(tg_mul(a, b), P2) == tau_word(tg_mul(b, a), P2));
    CHECK(tau_map(tg_tr(a, P2) * TgExpr::word(b), P2) == tau_word(a, P2) * tau_word(b, P2));
  }
}

TEST_CASE("round trips between characters and traces") {
  SUBCASE("tau of chi doubles, exactly") {
    CHECK(tau_map(chi_map(symbol_loop(W("g1 g2"), P2), P2), P2) ==
          Rational(2) * symbol_loop(W("g1 g2"), P2));
    Rng g(13);
    for (int t = 0; t < 30; ++t) {
      CharPoly f;
      int monos = 1 + (int)g.below(3);
      for (int i = 0; i < monos; ++i) {
        CharPoly term = CharPoly::constant(Rational((long)g.range(-3, 3)));
        if (term.is_zero()) continue;
        int deg = (int)g.below(3);
        for (int d = 0; d < deg; ++d) {
          if (g.coin())
            term *= symbol_loop(random_word_upto(g, 2, 3), P2);
          else
            term *= symbol_arc(random_point(g, P2, 2), random_point(g, P2, 2), P2);
        }
        f += term;
      }
      CHECK(tau_map(chi_map(f, P2), P2) == Rational(2) * f);
    }
  }
  SUBCASE("frozen tau values") {
    MarkedPoint p1{{}, 0}, q1{W("g1"), 1}, p2{W("g2"), 1}, q2{{}, 0};
    TgWord w;
    w.thetas.emplace_back(p1, q1);
    w.thetas.emplace_back(p2, q2);
    CHECK(tau_word(w, P2) == symbol_arc(q1, p2, P2) * symbol_arc(q2, p1, P2));
    CHECK(tau_word(TgWord{}, P2) == CharPoly::constant(Rational(2)));
  }
  SUBCASE("chi of tau projects onto the trace, pointwise") {
    Rng g(17);
    for (int t = 0; t < 25; ++t) {
      TgWord w = random_tgword(g, P2, 1 + (int)g.below(4));
      Rep<Fp> r = sample_rep(P2, Kp, g);
      Mat2<Fp> lhs = eval_tg(chi_map(tau_word(w, P2), P2), r, Kp);
      Fp tw = trace(eval_tgword(w, r, Kp));
      CHECK(lhs == tw * identity(Kp));
    }
  }
  SUBCASE("chi agrees with the character evaluation") {
    Rng g(19);
    for (int t = 0; t < 25; ++t) {
      CharPoly f = symbol_loop(random_word_upto(g, 2, 3), P2) *
                   symbol_arc(random_point(g, P2, 2), random_point(g, P2, 2), P2);
      Rep<Fp> r = sample_rep(P2, Kp, g);
      CHECK(eval_tg(chi_map(f, P2), r, Kp) ==
            detail::eval_poly(f, r, Kp) * identity(Kp));
    }
  }
}

TEST_CASE("defining relations of the matrix character algebra") {
  Rng g(23);
  for (int t = 0; t < 20; ++t) {
    TgWord A = random_tgword(g, P2, 1 + (int)g.below(3));
    TgWord B = random_tgword(g, P2, 1 + (int)g.below(3));
    CHECK(check_zero_tg(rel_tr_central(A, B), P2, Kp, 16, 400 + t) == -1);
    MarkedPoint p = random_point(g, P2, 2), q = random_point(g, P2, 2);
    MarkedPoint p2 = random_point(g, P2, 2), q2 = random_point(g, P2, 2);
    CHECK(check_zero_tg(rel_theta_contract(p, q, p2, q2, P2), P2, Kp, 16, 600 + t) == -1);
  }
  // a blatant non-relation is refuted, identically in serial and parallel
  TgExpr bad = TgExpr::word(TgWord{W("g1"), {}}) - TgExpr::word(TgWord{});
  int s = check_zero_tg(bad, P2, Kp, 24, 9, false);
  int p = check_zero_tg(bad, P2, Kp, 24, 9, true);
  CHECK(s == p);
  CHECK(s >= 0);
}

TEST_CASE("stabilizer relation on honest stabilized representations") {
  GAPresentation P;
  P.gens = 1;
  P.orbits = 2;
  P.stabilizers = {{parse_word("g1", NameTable::standard(1))}, {}};
  REQUIRE_NOTHROW(P.validate());

  // shear fixes (1,0); decorations chosen on that line for orbit 0
  Rep<Fp> r;
  r.mats = {Mat2<Fp>{Kp.one(), Kp.from_int(3), Kp.zero(), Kp.one()}};
  r.decs = {Vec2<Fp>{Kp.from_int(2), Kp.zero()}, Vec2<Fp>{Kp.from_int(1), Kp.from_int(4)}};
  REQUIRE(validate(r, P, Kp).empty());

  Word s = parse_word("g1", NameTable::standard(1));
  for (const MarkedPoint& p2 : {MarkedPoint{{}, 1}, MarkedPoint{s, 0}, MarkedPoint{s, 1}}) {
    TgExpr rel = rel_stabilizer(P, 0, s, p2);
    Fp z = Kp.zero();
    CHECK(eval_tg(rel, r, Kp) == Mat2<Fp>{z, z, z, z});
  }
  CHECK_THROWS_AS(rel_stabilizer(P, 5, s, MarkedPoint{{}, 0}), error);
}
