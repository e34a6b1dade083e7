#include <doctest.h>

#include "chark/twisted.hpp"
#include "testutil.hpp"

using namespace chark;
using testutil::random_point;
using testutil::random_word_upto;

namespace {

CentralExtSpec z2_ext(int sign) {
  return {GAPresentation::free_action(2, 1), {{"z", 2, sign}}};
}

CharPoly random_ext_poly(Rng& g, const CentralExtSpec& E) {
  GAPresentation ext = E.extended_free();
  CharPoly f;
  int terms = 1 + static_cast<int>(g.below(3));
  for (int t = 0; t < terms; ++t) {
    CharPoly term = CharPoly::constant(Rational(g.range(-3, 3)));
    int fac = 1 + static_cast<int>(g.below(2));
    for (int k = 0; k < fac; ++k) {
      if (g.coin())
        term *= symbol_loop(random_word_upto(g, ext.gens, 3), ext);
      else
        term *= symbol_arc(random_point(g, ext, 2), random_point(g, ext, 2), ext);
    }
    f += term;
  }
  return f;
}

}  // namespace

TEST_CASE("central extension validation") {
  CHECK_NOTHROW(z2_ext(-1).validate());
  CHECK_NOTHROW(z2_ext(1).validate());

  CentralExtSpec dup = z2_ext(1);
  dup.central.push_back({"g1", 2, 1});
  CHECK_THROWS_AS(dup.validate(), error);

  CentralExtSpec odd = z2_ext(-1);
  odd.central[0].order = 3;
  CHECK_THROWS_AS(odd.validate(), error);

  CentralExtSpec bad_sign = z2_ext(1);
  bad_sign.central[0].sign = 3;
  CHECK_THROWS_AS(bad_sign.validate(), error);

  CentralExtSpec bad_order = z2_ext(1);
  bad_order.central[0].order = 0;
  CHECK_THROWS_AS(bad_order.validate(), error);

  CentralExtSpec bad_name = z2_ext(1);
  bad_name.central[0].name = "e";
  CHECK_THROWS_AS(bad_name.validate(), error);

  CHECK(z2_ext(1).total_gens() == 3);
  CHECK(z2_ext(1).names().names == std::vector<std::string>{"g1", "g2", "z"});
  CHECK(z2_ext(1).extended_free().gens == 3);
  CHECK(z2_ext(1).extended_free().free_form());
}

TEST_CASE("central letters strip to their sign") {
  CentralExtSpec E = z2_ext(-1);
  NameTable t = E.names();
  auto W = [&t](const std::string& s) { return parse_word(s, t); };

  CHECK(strip_central(W("z g1"), E) == std::pair<int, Word>{-1, W("g1")});
  CHECK(strip_central(W("z^-1 g1"), E) == std::pair<int, Word>{-1, W("g1")});
  CHECK(strip_central(W("z z g1"), E) == std::pair<int, Word>{1, W("g1")});
  CHECK(strip_central(W("g1 z g1^-1"), E) == std::pair<int, Word>{-1, Word{}});

  Word oob{{static_cast<uint16_t>(3), false}};
  CHECK_THROWS_AS(strip_central(oob, E), error);
}

TEST_CASE("twist normalization applies the sign character") {
  CentralExtSpec E = z2_ext(-1);
  GAPresentation ext = E.extended_free();
  const GAPresentation& B = E.base;
  NameTable t = E.names();
  auto W = [&t](const std::string& s) { return parse_word(s, t); };

  CHECK(twist_normalize(symbol_loop(W("z g1"), ext), E) == -symbol_loop(W("g1"), B));
  CHECK(twist_normalize(symbol_arc({W("z"), 0}, {W("g1"), 0}, ext), E) ==
        -symbol_arc({{}, 0}, {W("g1"), 0}, B));
  CHECK(twist_normalize(symbol_loop(W("z z g1"), ext), E) == symbol_loop(W("g1"), B));
  CHECK(twist_normalize(symbol_loop(W("z"), ext), E) == CharPoly::constant(Rational(-2)));

  CentralExtSpec Ep = z2_ext(1);
  CHECK(twist_normalize(symbol_loop(W("z g1"), Ep.extended_free()), Ep) ==
        symbol_loop(W("g1"), B));

  Rng g(909);
  for (int it = 0; it < 30; ++it) {
    CharPoly f = random_ext_poly(g, E);
    CharPoly h = random_ext_poly(g, E);
    CHECK(twist_normalize(f + h, E) == twist_normalize(f, E) + twist_normalize(h, E));
    CHECK(twist_normalize(f * h, E) == twist_normalize(f, E) * twist_normalize(h, E));
    CHECK(twist_normalize(twist_normalize(f, E), E) == twist_normalize(f, E));
  }
}

TEST_CASE("twisted sampling pins central letters") {
  CentralExtSpec E = z2_ext(-1);
  OracleConfig cfg;
  FieldCtx<Fp> K = make_ctx_p(cfg);

  Rng g(17);
  Rep<Fp> r = sample_twisted_rep(E, K, g);
  REQUIRE(r.mats.size() == 3);
  CHECK(r.mats[2] == Mat2<Fp>{K.from_int(-1), K.zero(), K.zero(), K.from_int(-1)});
  CHECK(det(r.mats[2]) == K.one());
  CHECK(validate(Rep<Fp>{{r.mats[0], r.mats[1]}, r.decs}, E.base, K).empty());

  // with trivial signs the random stream matches the untwisted sampler
  CentralExtSpec Ep = z2_ext(1);
  Rng g1(17), g2(17);
  Rep<Fp> plain = sample_rep(E.base, K, g1);
  Rep<Fp> tw = sample_twisted_rep(Ep, K, g2);
  CHECK(g1.state == g2.state);
  CHECK(tw.mats[0] == plain.mats[0]);
  CHECK(tw.mats[1] == plain.mats[1]);
  CHECK(tw.mats[2] == identity(K));
  REQUIRE(tw.decs.size() == plain.decs.size());
  CHECK(tw.decs[0] == plain.decs[0]);

  CentralExtSpec nonfree = z2_ext(-1);
  nonfree.base.relators.push_back(parse_word("g1 g1", NameTable::standard(2)));
  Rng g3(17);
  CHECK_THROWS_AS(sample_twisted_rep(nonfree, K, g3), error);
}

TEST_CASE("twisted oracle: normalization preserves evaluation") {
  CentralExtSpec E = z2_ext(-1);
  NameTable t = E.names();
  auto W = [&t](const std::string& s) { return parse_word(s, t); };
  GAPresentation ext = E.extended_free();
  OracleConfig cfg;
  cfg.samples = 12;
  cfg.seed = 404;

  Rng g(555);
  for (int it = 0; it < 10; ++it) {
    CharPoly f = random_ext_poly(g, E);
    EqReport rep = eq_oracle_twisted(f, twist_normalize(f, E), E, cfg);
    CHECK(rep.equal);
  }

  // the kernel relation itself, on both sign characters
  EqReport neg = eq_oracle_twisted(symbol_loop(W("z g1"), ext),
                                   -symbol_loop(W("g1"), ext), E, cfg);
  CHECK(neg.equal);
  CHECK(neg.degree == 5);
  CHECK(neg.samples == 12);

  EqReport wrong = eq_oracle_twisted(symbol_loop(W("z g1"), ext),
                                     symbol_loop(W("g1"), ext), E, cfg);
  CHECK(!wrong.equal);
  CHECK(wrong.witness_index == 0);

  OracleConfig serial = cfg;
  serial.policy = ExecPolicy::Serial;
  EqReport wrong2 = eq_oracle_twisted(symbol_loop(W("z g1"), ext),
                                      symbol_loop(W("g1"), ext), E, serial);
  CHECK(wrong2.witness_index == wrong.witness_index);
  CHECK(wrong2.witness == wrong.witness);

  CentralExtSpec Ep = z2_ext(1);
  EqReport triv = eq_oracle_twisted(symbol_loop(W("z g1"), ext),
                                    symbol_loop(W("g1"), ext), Ep, cfg);
  CHECK(triv.equal);

  cfg.kind = FieldKind::Rationals;
  EqReport overq = eq_oracle_twisted(symbol_loop(W("z g1"), ext),
                                     -symbol_loop(W("g1"), ext), E, cfg);
  CHECK(overq.equal);
  CHECK(overq.field == "Q");
}

TEST_CASE("extension files") {
  GAPresentation B = GAPresentation::free_action(2, 1);
  CentralExtSpec E = extension_from_json(
      json::parse(R"({"central": [{"name": "z", "order": 2, "sign": -1}]})"), B);
  REQUIRE(E.central.size() == 1);
  CHECK(E.central[0].name == "z");
  CHECK(E.central[0].order == 2);
  CHECK(E.central[0].sign == -1);

  CentralExtSpec D = extension_from_json(json::parse(R"({"central": [{"name": "w"}]})"), B);
  CHECK(D.central[0].order == 2);
  CHECK(D.central[0].sign == 1);

  CHECK_THROWS_AS(extension_from_json(
                      json::parse(R"({"central": [{"name": "z", "order": 3, "sign": -1}]})"), B),
                  error);
}
