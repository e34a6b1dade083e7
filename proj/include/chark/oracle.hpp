#pragma once

#include <string>
#include <vector>

#include "chark/charpoly.hpp"
#include "chark/jsonio.hpp"
#include "chark/parcheck.hpp"
#include "chark/rep.hpp"
#include "chark/rewrite.hpp"

namespace chark {

enum class FieldKind { Rationals, Prime };
enum class ExecPolicy { Serial, Parallel };

struct OracleConfig {
  FieldKind kind = FieldKind::Prime;
  uint64_t prime = kDefaultPrime;
  int samples = 16;
  uint64_t seed = 1;
  int64_t coeff_bound = 1 << 20;  // rational sampling window
  ExecPolicy policy = ExecPolicy::Parallel;
};

inline FieldCtx<Rational> make_ctx_q(const OracleConfig& cfg) { return {cfg.coeff_bound}; }
inline FieldCtx<Fp> make_ctx_p(const OracleConfig& cfg) {
  FieldCtx<Fp> K{cfg.prime};
  K.check();
  return K;
}

struct EqReport {
  bool equal = false;
  bool refutation_only = false;
  std::string field;
  int samples = 0;
  uint64_t seed = 0;
  long degree = 0;            // entry-degree bound of the difference
  long double fail_bound = 0; // N*deg/|S|; probability bound for a false "equal"
  int witness_index = -1;
  json witness;               // the differing representation, when unequal
  std::string lhs_value, rhs_value;
};

namespace detail {

template <class F>
F eval_poly(const CharPoly& f, const Rep<F>& r, const FieldCtx<F>& K) {
  F acc = K.zero();
  for (const auto& [m, c] : f.terms) {
    F t = K.from_rational(c);
    for (const auto& l : m.loops) t *= chi_loop(r, l.w, K);
    for (const auto& a : m.arcs)
      t *= omega(r.decs.at(a.p_orbit), eval_word(r, a.q_word, K) * r.decs.at(a.q_orbit));
    acc += t;
  }
  return acc;
}

template <class F>
EqReport eq_sampled(const CharPoly& f, const CharPoly& h, const GAPresentation& P,
                    const FieldCtx<F>& K, const OracleConfig& cfg) {
  EqReport rep;
  rep.field = K.name();
  rep.samples = cfg.samples;
  rep.seed = cfg.seed;
  rep.degree = degree_bound(f - h);
  auto make = [&](Rng& g) { return sample_rep<F>(P, K, g); };
  auto ok = [&](const Rep<F>& r) { return eval_poly(f, r, K) == eval_poly(h, r, K); };
  int bad = first_failure<F>(cfg.samples, cfg.seed, cfg.policy == ExecPolicy::Parallel, make, ok);
  if (bad < cfg.samples) {
    Rng g = Rng(cfg.seed).fork(static_cast<uint64_t>(bad));
    Rep<F> w = sample_rep<F>(P, K, g);
    rep.equal = false;
    rep.witness_index = bad;
    rep.witness = rep_to_json(w, K);
    rep.lhs_value = K.str(eval_poly(f, w, K));
    rep.rhs_value = K.str(eval_poly(h, w, K));
  } else {
    rep.equal = true;
    rep.fail_bound = static_cast<long double>(cfg.samples) *
                     static_cast<long double>(rep.degree) / K.sample_space();
  }
  return rep;
}

template <class F>
EqReport eq_on_reps(const CharPoly& f, const CharPoly& h, const std::vector<Rep<F>>& reps,
                    const FieldCtx<F>& K, const OracleConfig& cfg) {
  EqReport rep;
  rep.field = K.name();
  rep.samples = static_cast<int>(reps.size());
  rep.seed = cfg.seed;
  rep.refutation_only = true;
  rep.degree = degree_bound(f - h);
  for (size_t i = 0; i < reps.size(); ++i) {
    F a = eval_poly(f, reps[i], K);
    F b = eval_poly(h, reps[i], K);
    if (!(a == b)) {
      rep.equal = false;
      rep.witness_index = static_cast<int>(i);
      rep.witness = rep_to_json(reps[i], K);
      rep.lhs_value = K.str(a);
      rep.rhs_value = K.str(b);
      return rep;
    }
  }
  rep.equal = true;
  return rep;
}

}  // namespace detail

/* Identity test for a free presentation: exact evaluation on sampled
 * representations. An "equal" verdict carries the Schwartz-Zippel style
 * bound N*deg/|S| on the probability of a false equal. */
inline EqReport eq_oracle(const CharPoly& f, const CharPoly& h, const GAPresentation& P,
                          const OracleConfig& cfg) {
  if (!P.free_form())
    throw error("sampled equality needs a free presentation; supply representations instead");
  if (cfg.kind == FieldKind::Rationals)
    return detail::eq_sampled(f, h, P, make_ctx_q(cfg), cfg);
  return detail::eq_sampled(f, h, P, make_ctx_p(cfg), cfg);
}

/* Refutation-only equality on user-provided representations (the non-free
 * route): agreement on every provided point, no probabilistic claim. */
inline EqReport eq_oracle_on(const CharPoly& f, const CharPoly& h, const json& reps_json,
                             const GAPresentation& P, const OracleConfig& cfg) {
  if (cfg.kind == FieldKind::Rationals) {
    auto K = make_ctx_q(cfg);
    return detail::eq_on_reps(f, h, reps_from_json<Rational>(reps_json, P, K), K, cfg);
  }
  auto K = make_ctx_p(cfg);
  return detail::eq_on_reps(f, h, reps_from_json<Fp>(reps_json, P, K), K, cfg);
}

inline EqReport check_zero(const CharPoly& f, const GAPresentation& P, const OracleConfig& cfg) {
  return eq_oracle(f, CharPoly{}, P, cfg);
}

}  // namespace chark
