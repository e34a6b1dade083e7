#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "chark/linalg.hpp"
#include "chark/parcheck.hpp"

namespace chark {

/* Trace calculus on tuples of m matrices and n vectors. The generators are
 * the coordinate functions X(i), their adjoints Xi(i), and the outer
 * products Th(j,k) of the vector slots. Scalars are generated by traces of
 * words in these letters; matrix-valued expressions are combinations of
 * words with scalar coefficients. No normal form is imposed on words
 * beyond cyclic canonicalization inside tr symbols. */

struct TLetter {
  enum class Kind : uint8_t { X, Xi, Th };
  Kind kind = Kind::X;
  int a = 0;  // matrix index for X/Xi, first vector index for Th (1-based)
  int b = 0;  // second vector index for Th
  auto operator<=>(const TLetter&) const = default;

  static TLetter x(int i) { return {Kind::X, i, 0}; }
  static TLetter xi(int i) { return {Kind::Xi, i, 0}; }
  static TLetter th(int j, int k) { return {Kind::Th, j, k}; }
};

using TWord = std::vector<TLetter>;

inline void check_tword(const TWord& w, int m, int n) {
  for (const TLetter& l : w) {
    if (l.kind == TLetter::Kind::Th) {
      if (l.a < 1 || l.a > n || l.b < 1 || l.b > n)
        throw error("outer product index out of range");
    } else if (l.a < 1 || l.a > m) {
      throw error("matrix index out of range");
    }
  }
}

inline TWord cyclic_min(const TWord& w) {
  TWord best = w;
  for (size_t r = 1; r < w.size(); ++r) {
    TWord rot(w.begin() + r, w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + r);
    if (rot < best) best = rot;
  }
  return best;
}

inline std::string tword_str(const TWord& w) {
  if (w.empty()) return "Id";
  std::string s;
  for (const TLetter& l : w) {
    if (!s.empty()) s += " ";
    switch (l.kind) {
      case TLetter::Kind::X: s += "X(" + std::to_string(l.a) + ")"; break;
      case TLetter::Kind::Xi: s += "Xi(" + std::to_string(l.a) + ")"; break;
      case TLetter::Kind::Th:
        s += "Th(" + std::to_string(l.a) + "," + std::to_string(l.b) + ")";
        break;
    }
  }
  return s;
}

// commutative monomial in tr symbols; each key word is cyclic-canonical
struct InvMono {
  std::vector<TWord> trs;
  auto operator<=>(const InvMono&) const = default;

  InvMono times(const InvMono& o) const {
    InvMono r;
    r.trs.reserve(trs.size() + o.trs.size());
    std::merge(trs.begin(), trs.end(), o.trs.begin(), o.trs.end(), std::back_inserter(r.trs));
    return r;
  }
};

struct InvExpr {
  std::map<InvMono, Rational> terms;

  static InvExpr constant(const Rational& c) {
    InvExpr e;
    e.add(InvMono{}, c);
    return e;
  }
  static InvExpr sym(const TWord& w) {
    InvExpr e;
    e.add(InvMono{{w}}, Rational(1));
    return e;
  }

  bool is_zero() const { return terms.empty(); }

  void add(const InvMono& m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }

  InvExpr& operator+=(const InvExpr& o) {
    for (const auto& [m, c] : o.terms) add(m, c);
    return *this;
  }
  InvExpr& operator-=(const InvExpr& o) {
    for (const auto& [m, c] : o.terms) add(m, -c);
    return *this;
  }
  friend InvExpr operator+(InvExpr a, const InvExpr& b) { return a += b; }
  friend InvExpr operator-(InvExpr a, const InvExpr& b) { return a -= b; }
  friend InvExpr operator*(const InvExpr& a, const InvExpr& b) {
    InvExpr r;
    for (const auto& [ma, ca] : a.terms)
      for (const auto& [mb, cb] : b.terms) r.add(ma.times(mb), ca * cb);
    return r;
  }
  friend InvExpr operator*(const Rational& c, const InvExpr& a) {
    InvExpr r;
    for (const auto& [m, x] : a.terms) r.add(m, c * x);
    return r;
  }
  InvExpr operator-() const { return Rational(-1) * *this; }
  bool operator==(const InvExpr& o) const { return terms == o.terms; }
};

// the invariant tr(w); tr(Id) = 2
inline InvExpr tr_word(const TWord& w) {
  if (w.empty()) return InvExpr::constant(Rational(2));
  return InvExpr::sym(cyclic_min(w));
}

/* Matrix-valued expression: words with InvExpr coefficients. The empty
 * word stands for Id. */
struct ConExpr {
  std::map<TWord, InvExpr> terms;

  static ConExpr identity() { return scaled({}, InvExpr::constant(Rational(1))); }
  static ConExpr word(const TWord& w) { return scaled(w, InvExpr::constant(Rational(1))); }
  static ConExpr scaled(const TWord& w, const InvExpr& c) {
    ConExpr e;
    e.add(w, c);
    return e;
  }

  bool is_zero() const { return terms.empty(); }

  void add(const TWord& w, const InvExpr& c) {
    if (c.is_zero()) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
      terms.emplace(w, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }

  ConExpr& operator+=(const ConExpr& o) {
    for (const auto& [w, c] : o.terms) add(w, c);
    return *this;
  }
  ConExpr& operator-=(const ConExpr& o) {
    for (const auto& [w, c] : o.terms) add(w, -c);
    return *this;
  }
  friend ConExpr operator+(ConExpr a, const ConExpr& b) { return a += b; }
  friend ConExpr operator-(ConExpr a, const ConExpr& b) { return a -= b; }
  friend ConExpr operator*(const ConExpr& a, const ConExpr& b) {
    ConExpr r;
    for (const auto& [wa, ca] : a.terms)
      for (const auto& [wb, cb] : b.terms) {
        TWord w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        r.add(w, ca * cb);
      }
    return r;
  }
  friend ConExpr operator*(const InvExpr& c, const ConExpr& a) {
    ConExpr r;
    for (const auto& [w, x] : a.terms) r.add(w, c * x);
    return r;
  }
  ConExpr operator-() const { return InvExpr::constant(Rational(-1)) * *this; }
  bool operator==(const ConExpr& o) const { return terms == o.terms; }
};

inline std::string to_string(const InvExpr& e) {
  if (e.terms.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : e.terms) {
    std::string coef = c.str();
    bool neg = !coef.empty() && coef[0] == '-';
    if (s.empty()) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    if (neg) coef = coef.substr(1);
    std::string body;
    for (const TWord& w : m.trs) {
      if (!body.empty()) body += "*";
      body += "tr(" + tword_str(w) + ")";
    }
    if (body.empty()) {
      s += coef;
    } else {
      if (coef != "1") s += coef + "*";
      s += body;
    }
  }
  return s;
}

inline std::string to_string(const ConExpr& e) {
  if (e.terms.empty()) return "0";
  std::string s;
  for (const auto& [w, c] : e.terms) {
    if (!s.empty()) s += " + ";
    std::string body;
    for (const TLetter& l : w) {
      if (!body.empty()) body += "*";
      body += tword_str({l});
    }
    if (body.empty()) body = "Id";
    std::string coef = to_string(c);
    bool plain = c.terms.size() == 1;  // single monomial needs no parentheses
    if (coef == "1")
      s += body;
    else if (plain)
      s += coef + "*" + body;
    else
      s += "(" + coef + ")*" + body;
  }
  return s;
}

// letter-wise adjoint with reversal; each Th letter contributes a sign
inline std::pair<int, TWord> iota_spelling(const TWord& w) {
  TWord r;
  int sign = 1;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    switch (it->kind) {
      case TLetter::Kind::X: r.push_back(TLetter::xi(it->a)); break;
      case TLetter::Kind::Xi: r.push_back(TLetter::x(it->a)); break;
      case TLetter::Kind::Th:
        r.push_back(TLetter::th(it->b, it->a));
        sign = -sign;
        break;
    }
  }
  return {sign, r};
}

inline ConExpr iota_word(const TWord& w) {
  auto [sign, r] = iota_spelling(w);
  return ConExpr::scaled(r, InvExpr::constant(Rational(sign)));
}

// adjoint as an anti-involution on matrix-valued expressions
inline ConExpr iota_con(const ConExpr& e) {
  ConExpr r;
  for (const auto& [w, c] : e.terms) r += c * iota_word(w);
  return r;
}

// trace of a matrix-valued expression
inline InvExpr con_tr(const ConExpr& e) {
  InvExpr r;
  for (const auto& [w, c] : e.terms) r += c * tr_word(w);
  return r;
}

/* Parity of the total number of Th letters per monomial: 0 or 1 when
 * homogeneous, -1 when mixed. The vector-degree grading halves to this. */
inline int theta_parity(const InvExpr& e) {
  int par = -2;
  for (const auto& [m, c] : e.terms) {
    int cnt = 0;
    for (const TWord& w : m.trs)
      for (const TLetter& l : w)
        if (l.kind == TLetter::Kind::Th) ++cnt;
    if (par == -2)
      par = cnt % 2;
    else if (par != cnt % 2)
      return -1;
  }
  return par == -2 ? 0 : par;
}

// evaluation point in End(V)^m + V^n
template <class F>
struct MixedPoint {
  std::vector<Mat2<F>> mats;
  std::vector<Vec2<F>> vecs;
};

template <class F>
MixedPoint<F> sample_point(int m, int n, const FieldCtx<F>& K, Rng& g) {
  MixedPoint<F> pt;
  for (int i = 0; i < m; ++i) pt.mats.push_back(sample_mat(K, g));
  for (int i = 0; i < n; ++i) pt.vecs.push_back(sample_vec(K, g));
  return pt;
}

template <class F>
MixedPoint<F> conjugate_point(const MixedPoint<F>& pt, const Mat2<F>& s) {
  MixedPoint<F> r;
  for (const auto& a : pt.mats) r.mats.push_back(s * a * iota(s));
  for (const auto& v : pt.vecs) r.vecs.push_back(s * v);
  return r;
}

template <class F>
Mat2<F> eval_letter(const TLetter& l, const MixedPoint<F>& pt) {
  switch (l.kind) {
    case TLetter::Kind::X: return pt.mats.at(l.a - 1);
    case TLetter::Kind::Xi: return iota(pt.mats.at(l.a - 1));
    default: return outer(pt.vecs.at(l.a - 1), pt.vecs.at(l.b - 1));
  }
}

template <class F>
Mat2<F> eval_tword(const TWord& w, const MixedPoint<F>& pt, const FieldCtx<F>& K) {
  Mat2<F> acc = identity(K);
  for (const TLetter& l : w) acc = acc * eval_letter(l, pt);
  return acc;
}

template <class F>
F eval_inv(const InvExpr& e, const MixedPoint<F>& pt, const FieldCtx<F>& K) {
  F acc = K.zero();
  for (const auto& [m, c] : e.terms) {
    F t = K.from_rational(c);
    for (const TWord& w : m.trs) t *= trace(eval_tword(w, pt, K));
    acc += t;
  }
  return acc;
}

template <class F>
Mat2<F> eval_con(const ConExpr& e, const MixedPoint<F>& pt, const FieldCtx<F>& K) {
  F z = K.zero();
  Mat2<F> acc{z, z, z, z};
  for (const auto& [w, c] : e.terms) acc = acc + eval_inv(c, pt, K) * eval_tword(w, pt, K);
  return acc;
}

/* Relation schemas. Each returns the left-minus-right expression, which
 * must evaluate to zero on every point of the right arity. */

// tr(ABC) + tr(CBA) + tr(A)tr(B)tr(C) - tr(B)tr(AC) - tr(AB)tr(C) - tr(A)tr(BC)
inline InvExpr schema_F(const TWord& A, const TWord& B, const TWord& C) {
  auto cat = [](const TWord& u, const TWord& v) {
    TWord w = u;
    w.insert(w.end(), v.begin(), v.end());
    return w;
  };
  TWord CBA = cat(cat(C, B), A);
  return tr_word(cat(cat(A, B), C)) + tr_word(CBA) + tr_word(A) * tr_word(B) * tr_word(C) -
         tr_word(B) * tr_word(cat(A, C)) - tr_word(cat(A, B)) * tr_word(C) -
         tr_word(A) * tr_word(cat(B, C));
}

// AB + BA - tr(A)B - tr(B)A - tr(AB)Id + tr(A)tr(B)Id
inline ConExpr schema_G(const TWord& A, const TWord& B) {
  ConExpr a = ConExpr::word(A), b = ConExpr::word(B);
  TWord ab = A;
  ab.insert(ab.end(), B.begin(), B.end());
  return a * b + b * a - tr_word(A) * b - tr_word(B) * a -
         ConExpr::scaled({}, tr_word(ab)) + ConExpr::scaled({}, tr_word(A) * tr_word(B));
}

// tr(A Th(i,j)) - tr(A Th(j,i)) + tr(A) tr(Th(j,i))
inline InvExpr schema_INV2(const TWord& A, int i, int j) {
  TWord aij = A, aji = A;
  aij.push_back(TLetter::th(i, j));
  aji.push_back(TLetter::th(j, i));
  return tr_word(aij) - tr_word(aji) + tr_word(A) * tr_word({TLetter::th(j, i)});
}

// tr(A Th(i,j) B Th(i2,j2)) - tr(A Th(i,j2)) tr(B Th(i2,j))
inline InvExpr schema_INV3(const TWord& A, int i, int j, const TWord& B, int i2, int j2) {
  TWord big = A;
  big.push_back(TLetter::th(i, j));
  big.insert(big.end(), B.begin(), B.end());
  big.push_back(TLetter::th(i2, j2));
  TWord l = A, r = B;
  l.push_back(TLetter::th(i, j2));
  r.push_back(TLetter::th(i2, j));
  return tr_word(big) - tr_word(l) * tr_word(r);
}

// (A + iota A) B - B (A + iota A)
inline ConExpr schema_CON1(const TWord& A, const TWord& B) {
  ConExpr ta = ConExpr::word(A) + iota_word(A);
  ConExpr b = ConExpr::word(B);
  return ta * b - b * ta;
}

// Th(i,j) A Th(i2,j2) - A Th(i2,j) Th(i,j2) + Th(j,i2) (iota A) Th(i,j2)
inline ConExpr schema_CON2a(int i, int j, const TWord& A, int i2, int j2) {
  ConExpr tij = ConExpr::word({TLetter::th(i, j)});
  ConExpr ti2j2 = ConExpr::word({TLetter::th(i2, j2)});
  ConExpr ti2j = ConExpr::word({TLetter::th(i2, j)});
  ConExpr tij2 = ConExpr::word({TLetter::th(i, j2)});
  ConExpr tji2 = ConExpr::word({TLetter::th(j, i2)});
  ConExpr a = ConExpr::word(A);
  return tij * a * ti2j2 - a * ti2j * tij2 + tji2 * iota_con(a) * tij2;
}

// Th(i,j) A Th(i2,j2) - tr(A Th(i2,j)) Th(i,j2)
inline ConExpr schema_CON2b(int i, int j, const TWord& A, int i2, int j2) {
  TWord ati2j = A;
  ati2j.push_back(TLetter::th(i2, j));
  ConExpr lhs = ConExpr::word({TLetter::th(i, j)}) * ConExpr::word(A) *
                ConExpr::word({TLetter::th(i2, j2)});
  return lhs - tr_word(ati2j) * ConExpr::word({TLetter::th(i, j2)});
}

/* The substitution collapsing a pure-matrix algebra of arity m + n^2 onto
 * the mixed algebra of arity (m, n): the extra matrix slots become outer
 * products, laid out row-major by the first vector index. */
inline int theta_slot(int m, int n, int j, int k) { return m + (j - 1) * n + k; }

inline ConExpr nu_letter(const TLetter& l, int m, int n) {
  if (l.kind == TLetter::Kind::Th) throw error("nu substitution expects pure matrix letters");
  if (l.a < 1 || l.a > m + n * n) throw error("matrix index out of range");
  if (l.a <= m)
    return ConExpr::word({l});
  int off = l.a - m - 1;
  int j = off / n + 1, k = off % n + 1;
  if (l.kind == TLetter::Kind::X) return ConExpr::word({TLetter::th(j, k)});
  return -ConExpr::word({TLetter::th(k, j)});  // Th(j,k) adjoint
}

inline ConExpr nu_word(const TWord& w, int m, int n) {
  ConExpr r = ConExpr::identity();
  for (const TLetter& l : w) r = r * nu_letter(l, m, n);
  return r;
}

inline InvExpr nu_inv(const InvExpr& e, int m, int n) {
  InvExpr r;
  for (const auto& [mono, c] : e.terms) {
    InvExpr t = InvExpr::constant(c);
    for (const TWord& w : mono.trs) t = t * con_tr(nu_word(w, m, n));
    r += t;
  }
  return r;
}

inline ConExpr nu_con(const ConExpr& e, int m, int n) {
  ConExpr r;
  for (const auto& [w, c] : e.terms) r += nu_inv(c, m, n) * nu_word(w, m, n);
  return r;
}

// kernel generator tr(A X_th(i,j)) + tr(A Xi_th(j,i)), upstream of nu
inline InvExpr schema_KER1(int m, int n, const TWord& A, int i, int j) {
  TWord l = A, r = A;
  l.push_back(TLetter::x(theta_slot(m, n, i, j)));
  r.push_back(TLetter::xi(theta_slot(m, n, j, i)));
  return tr_word(l) + tr_word(r);
}

// kernel generator tr(A X_th(i,j) B X_th(i2,j2)) - tr(A X_th(i,j2)) tr(B X_th(i2,j))
inline InvExpr schema_KER2(int m, int n, const TWord& A, int i, int j, const TWord& B, int i2,
                           int j2) {
  TWord big = A;
  big.push_back(TLetter::x(theta_slot(m, n, i, j)));
  big.insert(big.end(), B.begin(), B.end());
  big.push_back(TLetter::x(theta_slot(m, n, i2, j2)));
  TWord l = A, r = B;
  l.push_back(TLetter::x(theta_slot(m, n, i, j2)));
  r.push_back(TLetter::x(theta_slot(m, n, i2, j)));
  return tr_word(big) - tr_word(l) * tr_word(r);
}

// the point of arity m + n^2 whose extra slots hold the outer product grid
template <class F>
MixedPoint<F> grid_point(const MixedPoint<F>& pt) {
  MixedPoint<F> r;
  r.mats = pt.mats;
  int n = static_cast<int>(pt.vecs.size());
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) r.mats.push_back(outer(pt.vecs[j], pt.vecs[k]));
  return r;
}

// smallest (m, n) whose slots cover every letter of the expression
inline std::pair<int, int> con_arity(const ConExpr& e) {
  int m = 0, n = 0;
  auto sweep = [&](const TWord& w) {
    for (const TLetter& l : w) {
      if (l.kind == TLetter::Kind::Th)
        n = std::max({n, l.a, l.b});
      else
        m = std::max(m, l.a);
    }
  };
  for (const auto& [w, c] : e.terms) {
    sweep(w);
    for (const auto& [mono, r] : c.terms) {
      (void)r;
      for (const TWord& t : mono.trs) sweep(t);
    }
  }
  return {m, n};
}

/* Sampled zero checks; return the least failing sample index, or -1 when
 * every sample vanishes. */
template <class F>
int check_zero_inv(const InvExpr& e, int m, int n, const FieldCtx<F>& K, int samples,
                   uint64_t seed, bool parallel = true) {
  auto make = [&](Rng& g) { return sample_point(m, n, K, g); };
  auto ok = [&](const MixedPoint<F>& pt) { return eval_inv(e, pt, K).is_zero(); };
  int bad = detail::first_failure<F>(samples, seed, parallel, make, ok);
  return bad == samples ? -1 : bad;
}

template <class F>
int check_zero_con(const ConExpr& e, int m, int n, const FieldCtx<F>& K, int samples,
                   uint64_t seed, bool parallel = true) {
  F z = K.zero();
  Mat2<F> zero{z, z, z, z};
  auto make = [&](Rng& g) { return sample_point(m, n, K, g); };
  auto ok = [&](const MixedPoint<F>& pt) { return eval_con(e, pt, K) == zero; };
  int bad = detail::first_failure<F>(samples, seed, parallel, make, ok);
  return bad == samples ? -1 : bad;
}

}  // namespace chark
