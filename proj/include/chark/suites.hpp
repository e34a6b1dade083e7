#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "chark/oracle.hpp"
#include "chark/rewrite.hpp"
#include "chark/tgm2.hpp"
#include "chark/tracealg.hpp"

namespace chark {

/* Randomized verification battery over every relation schema the kernel
 * knows: the loop/arc relations of the character algebra (R1-R10), the
 * matrix-invariant and concomitant schemas (F, G, INV2, INV3, CON1,
 * CON2A/B), the substitution kernel generators (KER1, KER2) with the
 * substitution naturality check (NU), and the trace-algebra round trip
 * (TGM-CENTRAL, TGM-CONTRACT, TAUCHI, CHITAU).
 *
 * Arc schemas run whenever the presentation has marked orbits, loop
 * schemas whenever it has generators; with no generators only the pure
 * arc (Pluecker) schemas remain. `mutate` names a schema whose right-hand
 * side gets one sign flipped; the battery is expected to refute it. */
struct SuiteConfig {
  OracleConfig oracle;
  int instances = 8;     // randomized sites per schema
  int max_word_len = 4;
  int points = 50;       // sample points for the matrix-invariant schemas
  int inv_m = 2;         // matrix arity of the invariant schemas
  int inv_n = 2;         // vector arity of the invariant schemas
  std::string mutate;
  std::vector<std::string> only;  // restrict to these schema ids (empty runs all)
};

struct SchemaReport {
  std::string id;
  int instances = 0;
  int failures = 0;
  std::string detail;  // first failure, human-readable
  bool ok() const { return failures == 0; }
};

namespace detail {

inline Word rand_word(Rng& g, int gens, int maxlen) {
  Word w;
  if (gens < 1) return w;
  int len = static_cast<int>(g.below(maxlen + 1));
  while (static_cast<int>(w.size()) < len) {
    Gen cand{static_cast<uint16_t>(g.below(gens)), g.coin()};
    if (!w.empty() && w.back().idx == cand.idx && w.back().inv != cand.inv) continue;
    w.push_back(cand);
  }
  return w;
}

inline MarkedPoint rand_pt(Rng& g, const GAPresentation& P, int maxlen) {
  return {rand_word(g, P.gens, maxlen), static_cast<int>(g.below(P.orbits))};
}

inline TWord rand_tword(Rng& g, int m, int maxlen) {
  TWord w;
  if (m < 1) return w;
  int len = static_cast<int>(g.below(maxlen + 1));
  for (int i = 0; i < len; ++i) {
    int a = 1 + static_cast<int>(g.below(m));
    w.push_back(g.coin() ? TLetter::x(a) : TLetter::xi(a));
  }
  return w;
}

inline TgWord rand_tgword(Rng& g, const GAPresentation& P, int maxlen) {
  std::vector<TgLetter> ls;
  int len = 1 + static_cast<int>(g.below(maxlen));
  for (int i = 0; i < len; ++i) {
    if (P.orbits >= 1 && g.coin())
      ls.push_back(TgLetter::theta(rand_pt(g, P, 2), rand_pt(g, P, 2)));
    else
      ls.push_back(TgLetter::group(rand_word(g, P.gens, 2)));
  }
  return tg_normalize(ls);
}

/* Mutation helpers. A flipped sign must actually change the function, so
 * the target term is chosen to dodge factors that vanish identically by
 * skew-symmetry (an omega factor closing on its own slot). Character
 * polynomial monomials are never identically zero, so there the first
 * term always works; when no effective term exists a constant is injected
 * instead, which is detectable everywhere. */
inline CharPoly flip_first(const CharPoly& f) {
  if (f.terms.empty()) return CharPoly::constant(Rational(2));
  CharPoly r = f;
  auto it = f.terms.begin();
  r.add_term(it->first, Rational(-2) * it->second);
  return r;
}

/* True when the product's trace (cyclic) or the product itself contains
 * two outer-product letters meeting with no matrix between them and a
 * shared slot: the omega factor is then identically zero. */
inline bool closes_on_self(const TWord& w, bool cyclic) {
  std::vector<size_t> th;
  for (size_t i = 0; i < w.size(); ++i)
    if (w[i].kind == TLetter::Kind::Th) th.push_back(i);
  if (th.empty()) return false;
  size_t npairs = cyclic ? th.size() : th.size() - 1;
  for (size_t k = 0; k < npairs; ++k) {
    size_t cur = th[k], nxt = th[(k + 1) % th.size()];
    size_t gap = k + 1 == th.size() ? (w.size() - cur - 1) + nxt : nxt - cur - 1;
    if (gap == 0 && w[cur].b == w[nxt].a) return true;
  }
  return false;
}

inline bool dead_mono(const InvMono& m) {
  for (const TWord& w : m.trs)
    if (closes_on_self(w, true)) return true;
  return false;
}

inline InvExpr flip_effective(const InvExpr& e) {
  for (const auto& [m, c] : e.terms) {
    if (dead_mono(m)) continue;
    InvExpr r = e;
    r.add(m, Rational(-2) * c);
    return r;
  }
  return e + InvExpr::constant(Rational(2));
}

inline ConExpr flip_effective(const ConExpr& e) {
  for (const auto& [w, c] : e.terms) {
    if (closes_on_self(w, false)) continue;
    for (const auto& [m, cc] : c.terms) {
      if (dead_mono(m)) continue;
      ConExpr r = e;
      InvExpr d;
      d.add(m, Rational(-2) * cc);
      r.add(w, d);
      return r;
    }
  }
  return e + ConExpr::scaled({}, InvExpr::constant(Rational(2)));
}

// effectiveness judged after the outer-product substitution
inline InvExpr flip_effective_grid(const InvExpr& e, int m, int n) {
  for (const auto& [mono, c] : e.terms) {
    InvExpr single;
    single.add(mono, Rational(1));
    InvExpr img = nu_inv(single, m, n);
    bool eff = false;
    for (const auto& [im, ic] : img.terms)
      if (!dead_mono(im)) eff = true;
    if (!eff) continue;
    InvExpr r = e;
    r.add(mono, Rational(-2) * c);
    return r;
  }
  return e + InvExpr::constant(Rational(2));
}

inline bool dead_tgword(const TgWord& w, bool cyclic) {
  const auto& th = w.thetas;
  if (th.empty()) return false;
  size_t npairs = cyclic ? th.size() : th.size() - 1;
  for (size_t k = 0; k < npairs; ++k) {
    const MarkedPoint& q = th[k].second;
    const MarkedPoint& p = th[(k + 1) % th.size()].first;
    if (q.orbit == p.orbit && q.prefix == p.prefix) return true;
  }
  return false;
}

inline TgExpr flip_effective(const TgExpr& e) {
  for (const auto& [k, c] : e.terms) {
    bool dead = dead_tgword(k.tail, false);
    for (const TgWord& w : k.trs)
      if (dead_tgword(w, true)) dead = true;
    if (dead) continue;
    TgExpr r = e;
    r.add(k, Rational(-2) * c);
    return r;
  }
  return e + TgExpr::constant(Rational(2));
}

template <class F>
std::vector<SchemaReport> run_suite_impl(const GAPresentation& P, const SuiteConfig& cfg,
                                         const FieldCtx<F>& K) {
  std::vector<SchemaReport> out;
  const bool loops = P.gens >= 1;
  const bool arcs = P.orbits >= 1;
  const bool parallel = cfg.oracle.policy == ExecPolicy::Parallel;
  const int L = cfg.max_word_len;
  int schema_index = 0;

  auto fresh = [&]() {
    ++schema_index;
    return Rng(cfg.oracle.seed).fork(9000 + static_cast<uint64_t>(schema_index));
  };

  // the rng index advances for skipped schemas too, so a filtered run sees
  // the same instances the full battery would
  auto want = [&](const std::string& id) {
    return cfg.only.empty() ||
           std::find(cfg.only.begin(), cfg.only.end(), id) != cfg.only.end();
  };

  // equality schemas: lhs must agree with rhs on sampled representations
  auto eq_schema = [&](const std::string& id,
                       const std::function<std::pair<CharPoly, CharPoly>(Rng&)>& gen) {
    SchemaReport rep;
    rep.id = id;
    Rng g = fresh();
    if (!want(id)) return;
    for (int k = 0; k < cfg.instances; ++k) {
      auto [lhs, rhs] = gen(g);
      if (cfg.mutate == id) rhs = flip_first(rhs);
      EqReport er = eq_oracle(lhs, rhs, P, cfg.oracle);
      ++rep.instances;
      if (!er.equal) {
        ++rep.failures;
        if (rep.detail.empty())
          rep.detail = to_string(lhs, P) + "  vs  " + to_string(rhs, P) + "  (sample " +
                       std::to_string(er.witness_index) + ": " + er.lhs_value + " != " +
                       er.rhs_value + ")";
      }
    }
    out.push_back(std::move(rep));
  };

  // vanishing schemas on mixed matrix/vector points
  auto inv_schema = [&](const std::string& id, const std::function<InvExpr(Rng&)>& gen) {
    SchemaReport rep;
    rep.id = id;
    Rng g = fresh();
    if (!want(id)) return;
    for (int k = 0; k < cfg.instances; ++k) {
      InvExpr e = gen(g);
      if (cfg.mutate == id) e = flip_effective(e);
      int bad = check_zero_inv(e, cfg.inv_m, cfg.inv_n, K, cfg.points, cfg.oracle.seed, parallel);
      ++rep.instances;
      if (bad >= 0) {
        ++rep.failures;
        if (rep.detail.empty())
          rep.detail = "instance " + std::to_string(k) + " nonzero at point " + std::to_string(bad);
      }
    }
    out.push_back(std::move(rep));
  };

  auto con_schema = [&](const std::string& id, const std::function<ConExpr(Rng&)>& gen) {
    SchemaReport rep;
    rep.id = id;
    Rng g = fresh();
    if (!want(id)) return;
    for (int k = 0; k < cfg.instances; ++k) {
      ConExpr e = gen(g);
      if (cfg.mutate == id) e = flip_effective(e);
      int bad = check_zero_con(e, cfg.inv_m, cfg.inv_n, K, cfg.points, cfg.oracle.seed, parallel);
      ++rep.instances;
      if (bad >= 0) {
        ++rep.failures;
        if (rep.detail.empty())
          rep.detail = "instance " + std::to_string(k) + " nonzero at point " + std::to_string(bad);
      }
    }
    out.push_back(std::move(rep));
  };

  // vanishing schemas on the outer-product grid image
  auto grid_schema = [&](const std::string& id, const std::function<InvExpr(Rng&)>& gen) {
    SchemaReport rep;
    rep.id = id;
    Rng g = fresh();
    if (!want(id)) return;
    for (int k = 0; k < cfg.instances; ++k) {
      InvExpr e = gen(g);
      if (cfg.mutate == id) e = flip_effective_grid(e, cfg.inv_m, cfg.inv_n);
      ++rep.instances;
      for (int s = 0; s < cfg.points; ++s) {
        Rng gs = Rng(cfg.oracle.seed).fork(static_cast<uint64_t>(s));
        MixedPoint<F> pt = sample_point(cfg.inv_m, cfg.inv_n, K, gs);
        if (!eval_inv(e, grid_point(pt), K).is_zero()) {
          ++rep.failures;
          if (rep.detail.empty())
            rep.detail =
                "instance " + std::to_string(k) + " nonzero at grid point " + std::to_string(s);
          break;
        }
      }
    }
    out.push_back(std::move(rep));
  };

  auto tg_schema = [&](const std::string& id, const std::function<TgExpr(Rng&)>& gen) {
    SchemaReport rep;
    rep.id = id;
    Rng g = fresh();
    if (!want(id)) return;
    for (int k = 0; k < cfg.instances; ++k) {
      TgExpr e = gen(g);
      if (cfg.mutate == id) e = flip_effective(e);
      int bad = check_zero_tg(e, P, K, cfg.oracle.samples, cfg.oracle.seed, parallel);
      ++rep.instances;
      if (bad >= 0) {
        ++rep.failures;
        if (rep.detail.empty())
          rep.detail = "instance " + std::to_string(k) + " nonzero at sample " + std::to_string(bad);
      }
    }
    out.push_back(std::move(rep));
  };

  if (loops) {
    eq_schema("R1", [&](Rng& g) {
      Word w = rand_word(g, P.gens, L);
      return std::pair{symbol_loop(concat(w, inverse(w)), P), CharPoly::constant(Rational(2))};
    });
    eq_schema("R2", [&](Rng& g) {
      Word w = rand_word(g, P.gens, L);
      return std::pair{symbol_loop(w, P), symbol_loop(inverse(w), P)};
    });
    eq_schema("R3", [&](Rng& g) {
      Word u = rand_word(g, P.gens, L), v = rand_word(g, P.gens, L);
      return std::pair{symbol_loop(concat(u, v), P), symbol_loop(concat(v, u), P)};
    });
    eq_schema("R4", [&](Rng& g) {
      Word u = rand_word(g, P.gens, L), v = rand_word(g, P.gens, L);
      return std::pair{symbol_loop(u, P) * symbol_loop(v, P),
                       symbol_loop(concat(u, v), P) + symbol_loop(concat(inverse(u), v), P)};
    });
  }
  if (loops && arcs)
    eq_schema("R5", [&](Rng& g) {
      Word w = rand_word(g, P.gens, L);
      MarkedPoint p = rand_pt(g, P, L), q = rand_pt(g, P, L);
      return std::pair{symbol_loop(w, P) * symbol_arc(p, q, P),
                       symbol_arc(act(w, p), q, P) + symbol_arc(act(inverse(w), p), q, P)};
    });
  if (arcs) {
    eq_schema("R6", [&](Rng& g) {
      MarkedPoint p = rand_pt(g, P, L), q = rand_pt(g, P, L);
      MarkedPoint p2 = rand_pt(g, P, L), q2 = rand_pt(g, P, L);
      return std::pair{symbol_arc(p, q, P) * symbol_arc(p2, q2, P),
                       symbol_arc(p, q2, P) * symbol_arc(p2, q, P) +
                           symbol_arc(p, p2, P) * symbol_arc(q, q2, P)};
    });
    eq_schema("R7", [&](Rng& g) {
      MarkedPoint p = rand_pt(g, P, L);
      return std::pair{symbol_arc(p, p, P), CharPoly{}};
    });
    eq_schema("R8", [&](Rng& g) {
      MarkedPoint p = rand_pt(g, P, L), q = rand_pt(g, P, L);
      return std::pair{symbol_arc(p, q, P), -symbol_arc(q, p, P)};
    });
  }
  if (loops && arcs)
    eq_schema("R9", [&](Rng& g) {
      Word w = rand_word(g, P.gens, L);
      MarkedPoint p = rand_pt(g, P, L), q = rand_pt(g, P, L);
      return std::pair{symbol_arc(act(w, p), act(w, q), P), symbol_arc(p, q, P)};
    });
  if (loops)
    eq_schema("R10", [&](Rng& g) {
      Word u = rand_word(g, P.gens, 2);
      int i = 2 + static_cast<int>(g.below(4));
      return std::pair{symbol_loop(power(u, i), P), dickson(symbol_loop(u, P), i)};
    });

  // a session with no group generators keeps only the pure arc schemas
  if (!loops) return out;

  const int m = cfg.inv_m, n = cfg.inv_n;
  if (m >= 1) {
    inv_schema("F", [&](Rng& g) {
      return schema_F(rand_tword(g, m, L), rand_tword(g, m, L), rand_tword(g, m, L));
    });
    con_schema("G", [&](Rng& g) { return schema_G(rand_tword(g, m, L), rand_tword(g, m, L)); });
    con_schema("CON1",
               [&](Rng& g) { return schema_CON1(rand_tword(g, m, L), rand_tword(g, m, L)); });
  }
  if (n >= 1) {
    auto ti = [n](Rng& g) { return 1 + static_cast<int>(g.below(n)); };
    inv_schema("INV2", [&](Rng& g) { return schema_INV2(rand_tword(g, m, L), ti(g), ti(g)); });
    inv_schema("INV3", [&](Rng& g) {
      return schema_INV3(rand_tword(g, m, L), ti(g), ti(g), rand_tword(g, m, L), ti(g), ti(g));
    });
    con_schema("CON2A", [&](Rng& g) {
      return schema_CON2a(ti(g), ti(g), rand_tword(g, m, L), ti(g), ti(g));
    });
    con_schema("CON2B", [&](Rng& g) {
      return schema_CON2b(ti(g), ti(g), rand_tword(g, m, L), ti(g), ti(g));
    });
    grid_schema("KER1", [&](Rng& g) {
      return schema_KER1(m, n, rand_tword(g, m + n * n, L), ti(g), ti(g));
    });
    grid_schema("KER2", [&](Rng& g) {
      return schema_KER2(m, n, rand_tword(g, m + n * n, L), ti(g), ti(g),
                         rand_tword(g, m + n * n, L), ti(g), ti(g));
    });

    // naturality: substitute then evaluate == evaluate on the grid
    SchemaReport nu;
    nu.id = "NU";
    Rng g = fresh();
    for (int k = 0; want("NU") && k < cfg.instances; ++k) {
      InvExpr e;
      int fac = 1 + static_cast<int>(g.below(2));
      InvExpr term = InvExpr::constant(Rational(g.range(-3, 3)));
      for (int t = 0; t < fac; ++t) term = term * tr_word(rand_tword(g, m + n * n, 3));
      e += term;
      InvExpr img = nu_inv(e, m, n);
      if (cfg.mutate == "NU") img = flip_effective(img);
      ++nu.instances;
      for (int s = 0; s < cfg.points; ++s) {
        Rng gs = Rng(cfg.oracle.seed).fork(static_cast<uint64_t>(s));
        MixedPoint<F> pt = sample_point(m, n, K, gs);
        if (eval_inv(img, pt, K) != eval_inv(e, grid_point(pt), K)) {
          ++nu.failures;
          if (nu.detail.empty())
            nu.detail = "instance " + std::to_string(k) + " differs at point " + std::to_string(s);
          break;
        }
      }
    }
    if (want("NU")) out.push_back(std::move(nu));
  }

  {
    tg_schema("TGM-CENTRAL", [&](Rng& g) {
      return rel_tr_central(rand_tgword(g, P, 3), rand_tgword(g, P, 3));
    });
    if (arcs)
      tg_schema("TGM-CONTRACT", [&](Rng& g) {
        return rel_theta_contract(rand_pt(g, P, 2), rand_pt(g, P, 2), rand_pt(g, P, 2),
                                  rand_pt(g, P, 2), P);
      });

    // tau(chi(r)) = 2r, checked symbolically and on samples
    eq_schema("TAUCHI", [&](Rng& g) {
      CharPoly r = CharPoly::constant(Rational(1 + g.below(3)));
      int fac = 1 + static_cast<int>(g.below(3));
      for (int t = 0; t < fac; ++t) {
        if (arcs && g.coin())
          r *= symbol_arc(rand_pt(g, P, 2), rand_pt(g, P, 2), P);
        else if (loops)
          r *= symbol_loop(rand_word(g, P.gens, L), P);
      }
      return std::pair{tau_map(chi_map(r, P), P), Rational(2) * r};
    });

    // chi(tau(w)) evaluates to tr(w)*Id
    SchemaReport ct;
    ct.id = "CHITAU";
    Rng g = fresh();
    for (int k = 0; want("CHITAU") && k < cfg.instances; ++k) {
      TgWord w = rand_tgword(g, P, 3);
      CharPoly t = tau_word(w, P);
      if (cfg.mutate == "CHITAU") t = flip_first(t);
      TgExpr img = chi_map(t, P);
      ++ct.instances;
      for (int s = 0; s < cfg.oracle.samples; ++s) {
        Rng gs = Rng(cfg.oracle.seed).fork(static_cast<uint64_t>(s));
        Rep<F> r = sample_rep(P, K, gs);
        if (eval_tg(img, r, K) != trace(eval_tgword(w, r, K)) * identity(K)) {
          ++ct.failures;
          if (ct.detail.empty())
            ct.detail = "instance " + std::to_string(k) + " differs at sample " + std::to_string(s);
          break;
        }
      }
    }
    if (want("CHITAU")) out.push_back(std::move(ct));
  }

  return out;
}

}  // namespace detail

inline std::vector<SchemaReport> run_presentation_suite(const GAPresentation& P,
                                                        const SuiteConfig& cfg) {
  P.validate();
  if (cfg.oracle.kind == FieldKind::Rationals)
    return detail::run_suite_impl(P, cfg, make_ctx_q(cfg.oracle));
  return detail::run_suite_impl(P, cfg, make_ctx_p(cfg.oracle));
}

inline bool suite_ok(const std::vector<SchemaReport>& reports) {
  for (const SchemaReport& r : reports)
    if (!r.ok()) return false;
  return true;
}

}  // namespace chark
