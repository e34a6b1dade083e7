#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "chark/charpoly.hpp"
#include "chark/parcheck.hpp"
#include "chark/rep.hpp"

namespace chark {

/* The tensor algebra on group letters X_w and decoration tensors Th_{p,q},
 * modulo nothing but the absorption of group letters into neighboring
 * tensors:
 *   X_g Th_{p,q} = Th_{gp,q}        Th_{p,q} X_g = Th_{p,g^-1 q}
 * Both hold on every representation, so a word normalizes to either a
 * single group letter or a plain run of tensors. */

struct TgLetter {
  bool is_theta = false;
  Word x;            // group letter
  MarkedPoint p, q;  // tensor letter

  static TgLetter group(Word w) { return {false, std::move(w), {}, {}}; }
  static TgLetter theta(MarkedPoint a, MarkedPoint b) {
    return {true, {}, std::move(a), std::move(b)};
  }
};

struct TgWord {
  Word x;  // meaningful only when thetas is empty; empty x means Id
  std::vector<std::pair<MarkedPoint, MarkedPoint>> thetas;

  bool pure_x() const { return thetas.empty(); }
  bool is_identity() const { return pure_x() && x.empty(); }
};

inline int cmp_points(const MarkedPoint& a, const MarkedPoint& b) {
  if (a.orbit != b.orbit) return a.orbit < b.orbit ? -1 : 1;
  return cmp_words(a.prefix, b.prefix);
}

inline int cmp_tg(const TgWord& a, const TgWord& b) {
  if (a.pure_x() != b.pure_x()) return a.pure_x() ? -1 : 1;
  if (a.pure_x()) return cmp_words(a.x, b.x);
  if (a.thetas.size() != b.thetas.size()) return a.thetas.size() < b.thetas.size() ? -1 : 1;
  for (size_t i = 0; i < a.thetas.size(); ++i) {
    if (int c = cmp_points(a.thetas[i].first, b.thetas[i].first)) return c;
    if (int c = cmp_points(a.thetas[i].second, b.thetas[i].second)) return c;
  }
  return 0;
}

inline TgWord tg_normalize(const std::vector<TgLetter>& letters) {
  TgWord r;
  Word pending;
  for (const TgLetter& l : letters) {
    if (!l.is_theta) {
      pending = concat(pending, l.x);
      continue;
    }
    r.thetas.emplace_back(act(pending, l.p), l.q);
    pending.clear();
  }
  if (r.thetas.empty()) {
    r.x = pending;
  } else if (!pending.empty()) {
    r.thetas.back().second = act(inverse(pending), r.thetas.back().second);
  }
  return r;
}

inline TgWord tg_mul(const TgWord& a, const TgWord& b) {
  std::vector<TgLetter> ls;
  if (a.pure_x()) {
    if (!a.x.empty()) ls.push_back(TgLetter::group(a.x));
  } else {
    for (const auto& [p, q] : a.thetas) ls.push_back(TgLetter::theta(p, q));
  }
  if (b.pure_x()) {
    if (!b.x.empty()) ls.push_back(TgLetter::group(b.x));
  } else {
    for (const auto& [p, q] : b.thetas) ls.push_back(TgLetter::theta(p, q));
  }
  return tg_normalize(ls);
}

// adjoint: reverse, invert group letters, flip tensors; sign (-1)^#tensors
inline std::pair<int, TgWord> iota_tg(const TgWord& w) {
  if (w.pure_x()) return {1, TgWord{inverse(w.x), {}}};
  TgWord r;
  for (auto it = w.thetas.rbegin(); it != w.thetas.rend(); ++it)
    r.thetas.emplace_back(it->second, it->first);
  return {w.thetas.size() % 2 ? -1 : 1, r};
}

inline void check_tg(const TgWord& w, const GAPresentation& P) {
  if (w.pure_x()) {
    for (Gen g : w.x)
      if (static_cast<int>(g.idx) >= P.gens) throw error("word letter outside generator range");
    return;
  }
  for (const auto& [p, q] : w.thetas) {
    P.check_point(p);
    P.check_point(q);
  }
}

/* Scalar-by-matrix terms c * tr(W_1)...tr(W_k) * tail. The tr keys are
 * rotation-canonical; group-letter keys also fold inversion (free
 * presentations only), matching trace cyclicity on representations. */
struct TgKey {
  std::vector<TgWord> trs;
  TgWord tail;
};

inline int cmp_tgkey(const TgKey& a, const TgKey& b) {
  if (a.trs.size() != b.trs.size()) return a.trs.size() < b.trs.size() ? -1 : 1;
  for (size_t i = 0; i < a.trs.size(); ++i)
    if (int c = cmp_tg(a.trs[i], b.trs[i])) return c;
  return cmp_tg(a.tail, b.tail);
}

struct TgKeyLess {
  bool operator()(const TgKey& a, const TgKey& b) const { return cmp_tgkey(a, b) < 0; }
};

inline TgWord tg_tr_canon(const TgWord& w, const GAPresentation& P) {
  if (w.pure_x()) return TgWord{P.free_form() ? loop_canon(w.x) : reduced(w.x), {}};
  TgWord best = w;
  for (size_t r = 1; r < w.thetas.size(); ++r) {
    TgWord rot;
    rot.thetas.assign(w.thetas.begin() + r, w.thetas.end());
    rot.thetas.insert(rot.thetas.end(), w.thetas.begin(), w.thetas.begin() + r);
    if (cmp_tg(rot, best) < 0) best = rot;
  }
  return best;
}

struct TgExpr {
  std::map<TgKey, Rational, TgKeyLess> terms;

  static TgExpr constant(const Rational& c) {
    TgExpr e;
    e.add(TgKey{}, c);
    return e;
  }
  static TgExpr word(const TgWord& w) {
    TgExpr e;
    e.add(TgKey{{}, w}, Rational(1));
    return e;
  }

  bool is_zero() const { return terms.empty(); }

  void add(const TgKey& k, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms.find(k);
    if (it == terms.end()) {
      terms.emplace(k, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }

  TgExpr& operator+=(const TgExpr& o) {
    for (const auto& [k, c] : o.terms) add(k, c);
    return *this;
  }
  TgExpr& operator-=(const TgExpr& o) {
    for (const auto& [k, c] : o.terms) add(k, -c);
    return *this;
  }
  friend TgExpr operator+(TgExpr a, const TgExpr& b) { return a += b; }
  friend TgExpr operator-(TgExpr a, const TgExpr& b) { return a -= b; }
  friend TgExpr operator*(const TgExpr& a, const TgExpr& b) {
    TgExpr r;
    for (const auto& [ka, ca] : a.terms)
      for (const auto& [kb, cb] : b.terms) {
        TgKey k;
        k.trs = ka.trs;
        k.trs.insert(k.trs.end(), kb.trs.begin(), kb.trs.end());
        std::sort(k.trs.begin(), k.trs.end(),
                  [](const TgWord& u, const TgWord& v) { return cmp_tg(u, v) < 0; });
        k.tail = tg_mul(ka.tail, kb.tail);
        r.add(k, ca * cb);
      }
    return r;
  }
  friend TgExpr operator*(const Rational& c, const TgExpr& a) {
    TgExpr r;
    for (const auto& [k, x] : a.terms) r.add(k, c * x);
    return r;
  }
  TgExpr operator-() const { return Rational(-1) * *this; }
  bool operator==(const TgExpr& o) const {
    return terms.size() == o.terms.size() &&
           std::equal(terms.begin(), terms.end(), o.terms.begin(),
                      [](const auto& x, const auto& y) {
                        return cmp_tgkey(x.first, y.first) == 0 && x.second == y.second;
                      });
  }
};

// the scalar tr(w) = w + iota(w); tr(Id) = 2
inline TgExpr tg_tr(const TgWord& w, const GAPresentation& P) {
  if (w.is_identity()) return TgExpr::constant(Rational(2));
  TgExpr e;
  e.add(TgKey{{tg_tr_canon(w, P)}, TgWord{}}, Rational(1));
  return e;
}

/* chi embeds the character algebra into the trace subalgebra:
 * [w] -> tr(X_w) and [p,q] -> tr(Th_{q,p}), extended multiplicatively. */
inline TgExpr chi_map(const CharPoly& f, const GAPresentation& P) {
  TgExpr r;
  for (const auto& [m, c] : f.terms) {
    TgExpr t = TgExpr::constant(c);
    for (const LoopSym& l : m.loops) t = t * tg_tr(TgWord{l.w, {}}, P);
    for (const ArcSym& a : m.arcs) {
      TgWord th;
      th.thetas.emplace_back(MarkedPoint{a.q_word, a.q_orbit}, MarkedPoint{{}, a.p_orbit});
      t = t * tg_tr(th, P);
    }
    r += t;
  }
  return r;
}

/* tau maps back: X_w -> [w], a run of tensors to the cyclic arc product
 * [q1,p2][q2,p3]...[qn,p1], a trace factor to tau of its word, and the
 * identity tail to [e] = 2. */
inline CharPoly tau_word(const TgWord& w, const GAPresentation& P) {
  if (w.pure_x()) return symbol_loop(w.x, P);
  CharPoly r = CharPoly::constant(Rational(1));
  size_t n = w.thetas.size();
  for (size_t i = 0; i < n; ++i)
    r *= symbol_arc(w.thetas[i].second, w.thetas[(i + 1) % n].first, P);
  return r;
}

inline CharPoly tau_map(const TgExpr& e, const GAPresentation& P) {
  CharPoly r;
  for (const auto& [k, c] : e.terms) {
    CharPoly t = CharPoly::constant(c);
    for (const TgWord& w : k.trs) t *= tau_word(w, P);
    t *= tau_word(k.tail, P);
    r += t;
  }
  return r;
}

template <class F>
Mat2<F> eval_tgword(const TgWord& w, const Rep<F>& r, const FieldCtx<F>& K) {
  if (w.pure_x()) return eval_word(r, w.x, K);
  Mat2<F> acc = identity(K);
  for (const auto& [p, q] : w.thetas) acc = acc * outer(rho_point(r, p, K), rho_point(r, q, K));
  return acc;
}

template <class F>
Mat2<F> eval_tg(const TgExpr& e, const Rep<F>& r, const FieldCtx<F>& K) {
  F z = K.zero();
  Mat2<F> acc{z, z, z, z};
  for (const auto& [k, c] : e.terms) {
    F s = K.from_rational(c);
    for (const TgWord& w : k.trs) s *= trace(eval_tgword(w, r, K));
    acc = acc + s * eval_tgword(k.tail, r, K);
  }
  return acc;
}

/* Defining relations of the matrix character algebra, as left-minus-right
 * expressions vanishing on every representation. */

// tr is central: (A + iota A) B - B (A + iota A)
inline TgExpr rel_tr_central(const TgWord& A, const TgWord& B) {
  auto [s, Ai] = iota_tg(A);
  Rational sc(s);
  TgExpr a = TgExpr::word(A) + sc * TgExpr::word(Ai);
  TgExpr b = TgExpr::word(B);
  return a * b - b * a;
}

// Th_{pq} Th_{p'q'} - tr(Th_{p'q}) Th_{pq'}
inline TgExpr rel_theta_contract(const MarkedPoint& p, const MarkedPoint& q, const MarkedPoint& p2,
                                 const MarkedPoint& q2, const GAPresentation& P) {
  TgWord lhs;
  lhs.thetas.emplace_back(p, q);
  lhs.thetas.emplace_back(p2, q2);
  TgWord mid;
  mid.thetas.emplace_back(p2, q);
  TgWord rhs;
  rhs.thetas.emplace_back(p, q2);
  return TgExpr::word(lhs) - tg_tr(mid, P) * TgExpr::word(rhs);
}

// (X_s - Id) Th_{base(j), p2} for a stabilizer word s of orbit j
inline TgExpr rel_stabilizer(const GAPresentation& P, int orbit, const Word& s,
                             const MarkedPoint& p2) {
  MarkedPoint base{{}, orbit};
  P.check_point(base);
  P.check_point(p2);
  TgWord moved, still;
  moved.thetas.emplace_back(act(s, base), p2);
  still.thetas.emplace_back(base, p2);
  return TgExpr::word(moved) - TgExpr::word(still);
}

// least sample index where e fails to vanish, or -1
template <class F>
int check_zero_tg(const TgExpr& e, const GAPresentation& P, const FieldCtx<F>& K, int samples,
                  uint64_t seed, bool parallel = true) {
  F z = K.zero();
  Mat2<F> zero{z, z, z, z};
  auto make = [&](Rng& g) { return sample_rep(P, K, g); };
  auto ok = [&](const Rep<F>& r) { return eval_tg(e, r, K) == zero; };
  int bad = detail::first_failure<F>(samples, seed, parallel, make, ok);
  return bad == samples ? -1 : bad;
}

}  // namespace chark
