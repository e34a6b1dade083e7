#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chark/jsonio.hpp"
#include "chark/oracle.hpp"

namespace chark {

/* A central extension of the base group-action presentation by extra
 * letters z_1..z_r, each central of finite order, together with a sign
 * character s: z_i -> ±1. Words over the extension use generator indices
 * base.gens .. base.gens+r-1 for the central letters. A twisted
 * representation sends each z_i to s(z_i)·Id. */
struct CentralGen {
  std::string name;
  int order = 2;
  int sign = 1;
};

struct CentralExtSpec {
  GAPresentation base;
  std::vector<CentralGen> central;

  void validate() const {
    base.validate();
    NameTable t = names();
    for (size_t i = 0; i < t.names.size(); ++i)
      for (size_t j = i + 1; j < t.names.size(); ++j)
        if (t.names[i] == t.names[j]) throw error("duplicate generator name " + t.names[i]);
    for (const CentralGen& z : central) {
      if (z.name.empty() || z.name == "e") throw error("bad central generator name");
      if (z.order < 1) throw error("central generator order must be positive");
      if (z.sign != 1 && z.sign != -1) throw error("central sign must be +1 or -1");
      if (z.sign == -1 && z.order % 2 != 0)
        throw error("sign of " + z.name + " is not compatible with its order");
    }
  }

  int total_gens() const { return base.gens + static_cast<int>(central.size()); }

  /* The free presentation on all extension letters. Polynomials over the
   * extension are built here; the central relations are applied by
   * twist_normalize, not by canonicalization. */
  GAPresentation extended_free() const {
    GAPresentation P = base;
    P.gens = total_gens();
    return P;
  }

  NameTable names() const {
    NameTable t = NameTable::standard(base.gens);
    for (const CentralGen& z : central) t.names.push_back(z.name);
    return t;
  }
};

/* Splits a word over the extension into the sign character of its central
 * part and the reduced base word. Signs are their own inverses, so an
 * inverted central letter contributes the same factor. */
inline std::pair<int, Word> strip_central(const Word& w, const CentralExtSpec& E) {
  int sgn = 1;
  Word out;
  for (Gen l : w) {
    if (l.idx >= E.total_gens()) throw error("generator index out of range for the extension");
    if (l.idx >= E.base.gens)
      sgn *= E.central[l.idx - E.base.gens].sign;
    else
      out.push_back(l);
  }
  return {sgn, reduced(out)};
}

/* Pushes a character polynomial over the extension down to the base:
 * central letters leave every loop word and arc translate as the sign
 * factor they evaluate to. An algebra map, and idempotent because base
 * polynomials have no central letters. */
inline CharPoly twist_normalize(const CharPoly& f, const CentralExtSpec& E) {
  E.validate();
  CharPoly out;
  for (const auto& [m, c] : f.terms) {
    CharPoly term = CharPoly::constant(c);
    for (const auto& l : m.loops) {
      auto [sgn, w] = strip_central(l.w, E);
      term *= Rational(sgn) * symbol_loop(w, E.base);
    }
    for (const auto& a : m.arcs) {
      auto [sgn, w] = strip_central(a.q_word, E);
      term *= Rational(sgn) *
              symbol_arc({{}, a.p_orbit}, {std::move(w), a.q_orbit}, E.base);
    }
    out += term;
  }
  return out;
}

/* Matrices for every extension generator: the base sampled freely, each
 * central letter fixed to s·Id with no generator draws of its own. With
 * all signs +1 the random stream matches the untwisted sampler exactly. */
template <class F>
Rep<F> sample_twisted_rep(const CentralExtSpec& E, const FieldCtx<F>& K, Rng& g) {
  if (!E.base.free_form()) throw error("twisted sampling needs a free base presentation");
  Rep<F> r;
  r.mats.reserve(E.total_gens());
  for (int i = 0; i < E.base.gens; ++i) r.mats.push_back(sample_sl2(K, g));
  for (const CentralGen& z : E.central) {
    F d = z.sign == 1 ? K.one() : K.zero() - K.one();
    r.mats.push_back({d, K.zero(), K.zero(), d});
  }
  r.decs.reserve(E.base.orbits);
  for (int j = 0; j < E.base.orbits; ++j) r.decs.push_back(sample_vec(K, g));
  return r;
}

namespace detail {

template <class F>
EqReport eq_twisted_sampled(const CharPoly& f, const CharPoly& h, const CentralExtSpec& E,
                            const FieldCtx<F>& K, const OracleConfig& cfg) {
  EqReport rep;
  rep.field = K.name();
  rep.samples = cfg.samples;
  rep.seed = cfg.seed;
  rep.degree = degree_bound(f - h);
  auto make = [&](Rng& g) { return sample_twisted_rep<F>(E, K, g); };
  auto ok = [&](const Rep<F>& r) { return eval_poly(f, r, K) == eval_poly(h, r, K); };
  int bad = first_failure<F>(cfg.samples, cfg.seed, cfg.policy == ExecPolicy::Parallel, make, ok);
  if (bad < cfg.samples) {
    Rng g = Rng(cfg.seed).fork(static_cast<uint64_t>(bad));
    Rep<F> w = sample_twisted_rep<F>(E, K, g);
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

}  // namespace detail

/* Equality of polynomials over the extension, tested on twisted samples
 * only (central letters pinned to their signs). */
inline EqReport eq_oracle_twisted(const CharPoly& f, const CharPoly& h,
                                  const CentralExtSpec& E, const OracleConfig& cfg) {
  E.validate();
  if (cfg.kind == FieldKind::Rationals)
    return detail::eq_twisted_sampled(f, h, E, make_ctx_q(cfg), cfg);
  return detail::eq_twisted_sampled(f, h, E, make_ctx_p(cfg), cfg);
}

/* {"central": [{"name": "z", "order": 2, "sign": -1}]} */
inline CentralExtSpec extension_from_json(const json& j, GAPresentation base) {
  CentralExtSpec E{std::move(base), {}};
  for (const json& z : j.at("central"))
    E.central.push_back({z.at("name").get<std::string>(), z.value("order", 2), z.value("sign", 1)});
  E.validate();
  return E;
}

}  // namespace chark
