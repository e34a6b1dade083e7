#pragma once

#include <string>
#include <vector>

#include "chark/linalg.hpp"
#include "chark/presentation.hpp"

namespace chark {

/* A decorated representation: one SL2 matrix per generator, one decoration
 * vector per orbit. */
template <class F>
struct Rep {
  std::vector<Mat2<F>> mats;
  std::vector<Vec2<F>> decs;
};

template <class F>
Mat2<F> eval_word(const Rep<F>& r, const Word& w, const FieldCtx<F>& K) {
  Mat2<F> m = identity(K);
  for (Gen g : w) {
    const Mat2<F>& x = r.mats.at(g.idx);
    m = m * (g.inv ? iota(x) : x);  // iota = inverse on SL2
  }
  return m;
}

template <class F>
F chi_loop(const Rep<F>& r, const Word& w, const FieldCtx<F>& K) {
  return trace(eval_word(r, w, K));
}

template <class F>
Vec2<F> rho_point(const Rep<F>& r, const MarkedPoint& p, const FieldCtx<F>& K) {
  return eval_word(r, p.prefix, K) * r.decs.at(p.orbit);
}

template <class F>
F chi_arc(const Rep<F>& r, const MarkedPoint& p, const MarkedPoint& q, const FieldCtx<F>& K) {
  return omega(rho_point(r, p, K), rho_point(r, q, K));
}

/* Validity: correct arity, determinant 1, relators acting as the identity,
 * stabilizers fixing their orbit's decoration. Returns an empty string when
 * valid, else a reason. */
template <class F>
std::string validate(const Rep<F>& r, const GAPresentation& P, const FieldCtx<F>& K) {
  if (static_cast<int>(r.mats.size()) != P.gens) return "matrix count != generator count";
  if (static_cast<int>(r.decs.size()) != P.orbits) return "decoration count != orbit count";
  for (size_t i = 0; i < r.mats.size(); ++i)
    if (det(r.mats[i]) != K.one()) return "matrix " + std::to_string(i + 1) + " has determinant != 1";
  Mat2<F> id = identity(K);
  for (const Word& w : P.relators)
    if (eval_word(r, w, K) != id) return "relator " + word_str(w, NameTable::standard(P.gens)) + " not satisfied";
  for (int j = 0; j < static_cast<int>(P.stabilizers.size()); ++j)
    for (const Word& s : P.stabilizers[j])
      if (eval_word(r, s, K) * r.decs[j] != r.decs[j])
        return "stabilizer of orbit " + std::to_string(j + 1) + " does not fix its decoration";
  return {};
}

/* Free sampling; draw order (matrices first, then decorations) is part of
 * the determinism contract relied on by the twisted sampler. */
template <class F>
Rep<F> sample_rep(const GAPresentation& P, const FieldCtx<F>& K, Rng& g) {
  Rep<F> r;
  r.mats.reserve(P.gens);
  for (int i = 0; i < P.gens; ++i) r.mats.push_back(sample_sl2(K, g));
  r.decs.reserve(P.orbits);
  for (int j = 0; j < P.orbits; ++j) r.decs.push_back(sample_vec(K, g));
  return r;
}

}  // namespace chark
