#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "chark/presentation.hpp"
#include "chark/word.hpp"

namespace chark {

struct LoopSym {
  Word w;  // nonempty; canonical via loop_canon when the presentation is free
  auto operator<=>(const LoopSym&) const = default;
};

/* Arc symbol in translated, oriented form: the first point is the orbit
 * representative (empty prefix). Stored as [(e, p_orbit), (q_word, q_orbit)].
 * Orientation is chosen so (p_orbit, q_orbit, q_word) is least between the
 * two readings; the swap sign lives in the monomial coefficient. */
struct ArcSym {
  int p_orbit = 0;
  Word q_word;
  int q_orbit = 0;
  auto operator<=>(const ArcSym&) const = default;
};

struct Monomial {
  std::vector<LoopSym> loops;  // sorted
  std::vector<ArcSym> arcs;    // sorted
  auto operator<=>(const Monomial&) const = default;
  bool is_const() const { return loops.empty() && arcs.empty(); }

  Monomial times(const Monomial& o) const {
    Monomial r;
    r.loops.resize(loops.size() + o.loops.size());
    std::merge(loops.begin(), loops.end(), o.loops.begin(), o.loops.end(), r.loops.begin());
    r.arcs.resize(arcs.size() + o.arcs.size());
    std::merge(arcs.begin(), arcs.end(), o.arcs.begin(), o.arcs.end(), r.arcs.begin());
    return r;
  }
};

/* Element of the decorated character algebra: finite sum of monomials with
 * nonzero rational coefficients. */
struct CharPoly {
  std::map<Monomial, Rational> terms;

  static CharPoly constant(Rational c) {
    CharPoly f;
    if (!c.is_zero()) f.terms.emplace(Monomial{}, std::move(c));
    return f;
  }
  static CharPoly monomial(Monomial m, Rational c) {
    CharPoly f;
    if (!c.is_zero()) f.terms.emplace(std::move(m), std::move(c));
    return f;
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  CharPoly& operator+=(const CharPoly& o) {
    for (const auto& [m, c] : o.terms) add_term(m, c);
    return *this;
  }
  CharPoly& operator-=(const CharPoly& o) {
    for (const auto& [m, c] : o.terms) add_term(m, -c);
    return *this;
  }
  friend CharPoly operator+(CharPoly a, const CharPoly& b) { return a += b; }
  friend CharPoly operator-(CharPoly a, const CharPoly& b) { return a -= b; }
  friend CharPoly operator*(const CharPoly& a, const CharPoly& b) {
    CharPoly r;
    for (const auto& [ma, ca] : a.terms)
      for (const auto& [mb, cb] : b.terms) r.add_term(ma.times(mb), ca * cb);
    return r;
  }
  CharPoly& operator*=(const CharPoly& o) { return *this = *this * o; }
  friend CharPoly operator*(const Rational& s, const CharPoly& f) {
    CharPoly r;
    for (const auto& [m, c] : f.terms) r.add_term(m, s * c);
    return r;
  }
  CharPoly operator-() const { return Rational(-1) * *this; }
  friend bool operator==(const CharPoly& a, const CharPoly& b) { return a.terms == b.terms; }
};

/* [w]: the identity loop is the scalar 2; free presentations store the
 * conjugation/inversion-canonical word, others the reduced word verbatim. */
inline CharPoly symbol_loop(const Word& w, const GAPresentation& P) {
  Word r = P.free_form() ? loop_canon(w) : reduced(w);
  if (r.empty()) return CharPoly::constant(Rational(2));
  return CharPoly::monomial(Monomial{{LoopSym{std::move(r)}}, {}}, Rational(1));
}

/* [p, q]: translate both points by p.prefix^-1, drop [p, p] = 0, and orient
 * so the stored tuple is least, flipping the sign on a swap. */
inline CharPoly symbol_arc(const MarkedPoint& p, const MarkedPoint& q, const GAPresentation& P) {
  P.check_point(p);
  P.check_point(q);
  Word w = concat(inverse(p.prefix), q.prefix);
  if (p.orbit == q.orbit && w.empty()) return {};
  ArcSym fwd{p.orbit, w, q.orbit};
  ArcSym rev{q.orbit, inverse(w), p.orbit};
  bool swap = rev.p_orbit < fwd.p_orbit ||
              (rev.p_orbit == fwd.p_orbit &&
               (rev.q_orbit < fwd.q_orbit ||
                (rev.q_orbit == fwd.q_orbit && cmp_words(rev.q_word, fwd.q_word) < 0)));
  Monomial m{{}, {swap ? std::move(rev) : std::move(fwd)}};
  return CharPoly::monomial(std::move(m), Rational(swap ? -1 : 1));
}

/* Entry-degree bound of the evaluated polynomial, summed over monomials:
 * a loop of length L contributes L+1 (word entries plus one per word), an
 * arc with translate length L contributes L+2 (word plus two decorations). */
inline long degree_bound(const CharPoly& f) {
  long d = 0;
  for (const auto& [m, c] : f.terms) {
    for (const auto& l : m.loops) d += static_cast<long>(l.w.size()) + 1;
    for (const auto& a : m.arcs) d += static_cast<long>(a.q_word.size()) + 2;
  }
  return d;
}

inline std::string to_string(const CharPoly& f, const NameTable& names) {
  if (f.terms.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : f.terms) {
    std::string coef = c.str();
    bool neg = !coef.empty() && coef[0] == '-';
    if (s.empty()) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    if (neg) coef = coef.substr(1);
    std::vector<std::string> factors;
    for (const auto& l : m.loops) factors.push_back("loop(" + word_str(l.w, names) + ")");
    for (const auto& a : m.arcs)
      factors.push_back("arc(e.p" + std::to_string(a.p_orbit + 1) + ", " +
                        word_str(a.q_word, names) + ".p" + std::to_string(a.q_orbit + 1) + ")");
    if (factors.empty()) {
      s += coef;
      continue;
    }
    std::string body;
    for (const auto& fct : factors) {
      if (!body.empty()) body += "*";
      body += fct;
    }
    if (coef != "1") s += coef + "*";
    s += body;
  }
  return s;
}

inline std::string to_string(const CharPoly& f, const GAPresentation& P) {
  return to_string(f, NameTable::standard(P.gens));
}

}  // namespace chark
