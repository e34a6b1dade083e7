#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "chark/charpoly.hpp"

namespace chark {

/* Directed rewrites, one per defining relation with content:
 *   R4   [g][h]       -> [gh] + [g h^-1]
 *   R5   [g][p,q]     -> [gp, q] + [g^-1 p, q]
 *   R6   [p,q][p',q'] -> [p,q'][p',q] + [p,p'][q,q']
 *   POW  [u^i]        -> D_i([u])           (2*T_i(x/2), integer Dickson form)
 * The identity, antisymmetry, translation and conjugation/inversion
 * relations act earlier, inside symbol construction. */
enum class Rule { R4, R5, R6, POW };

inline Rule parse_rule(const std::string& s) {
  if (s == "R4") return Rule::R4;
  if (s == "R5") return Rule::R5;
  if (s == "R6") return Rule::R6;
  if (s == "POW") return Rule::POW;
  throw error("unknown rewrite rule \"" + s + "\" (expected R4, R5, R6 or POW)");
}

/* A rewrite site: a monomial of the polynomial plus symbol positions.
 * R4: loops i < j; R5: loop i, arc j; R6: arcs i < j; POW: loop i. */
struct Site {
  Monomial mono;
  int i = 0;
  int j = 0;
};

// D_0 = 2, D_1 = x, D_{i+1} = x*D_i - D_{i-1}; D_i([g]) evaluates to [g^i]
inline CharPoly dickson(const CharPoly& x, int i) {
  if (i < 0) throw error("negative Dickson index");
  CharPoly prev = CharPoly::constant(Rational(2));
  if (i == 0) return prev;
  CharPoly cur = x;
  for (int k = 1; k < i; ++k) {
    CharPoly nxt = x * cur - prev;
    prev = std::move(cur);
    cur = std::move(nxt);
  }
  return cur;
}

inline std::vector<Site> rule_sites(const CharPoly& f, Rule rule) {
  std::vector<Site> out;
  for (const auto& [m, c] : f.terms) {
    int nl = static_cast<int>(m.loops.size());
    int na = static_cast<int>(m.arcs.size());
    switch (rule) {
      case Rule::R4:
        for (int i = 0; i < nl; ++i)
          for (int j = i + 1; j < nl; ++j) out.push_back({m, i, j});
        break;
      case Rule::R5:
        for (int i = 0; i < nl; ++i)
          for (int j = 0; j < na; ++j) out.push_back({m, i, j});
        break;
      case Rule::R6:
        for (int i = 0; i < na; ++i)
          for (int j = i + 1; j < na; ++j) out.push_back({m, i, j});
        break;
      case Rule::POW:
        for (int i = 0; i < nl; ++i)
          if (word_root(m.loops[i].w).second >= 2) out.push_back({m, i});
        break;
    }
  }
  return out;
}

namespace detail {

inline Monomial drop_loops(const Monomial& m, int i, int j) {
  Monomial r = m;
  if (j >= 0 && j > i)
    r.loops.erase(r.loops.begin() + j);
  r.loops.erase(r.loops.begin() + i);
  return r;
}

// the expansion of the consumed symbols alone, as a polynomial
inline CharPoly site_expansion(const Monomial& m, Rule rule, int i, int j,
                               const GAPresentation& P, Monomial& rest) {
  switch (rule) {
    case Rule::R4: {
      const Word& g = m.loops.at(i).w;
      const Word& h = m.loops.at(j).w;
      rest = drop_loops(m, i, j);
      return symbol_loop(concat(g, h), P) + symbol_loop(concat(g, inverse(h)), P);
    }
    case Rule::R5: {
      const Word& g = m.loops.at(i).w;
      const ArcSym& a = m.arcs.at(j);
      rest = drop_loops(m, i, -1);
      rest.arcs.erase(std::find(rest.arcs.begin(), rest.arcs.end(), a));
      MarkedPoint q{a.q_word, a.q_orbit};
      return symbol_arc({g, a.p_orbit}, q, P) + symbol_arc({inverse(g), a.p_orbit}, q, P);
    }
    case Rule::R6: {
      const ArcSym& s1 = m.arcs.at(i);
      const ArcSym& s2 = m.arcs.at(j);
      rest = m;
      rest.arcs.erase(rest.arcs.begin() + j);
      rest.arcs.erase(rest.arcs.begin() + i);
      MarkedPoint p{{}, s1.p_orbit}, q{s1.q_word, s1.q_orbit};
      MarkedPoint p2{{}, s2.p_orbit}, q2{s2.q_word, s2.q_orbit};
      return symbol_arc(p, q2, P) * symbol_arc(p2, q, P) +
             symbol_arc(p, p2, P) * symbol_arc(q, q2, P);
    }
    case Rule::POW: {
      const Word& w = m.loops.at(i).w;
      auto [u, n] = word_root(w);
      if (n < 2) throw error("POW site is not a proper power");
      rest = drop_loops(m, i, -1);
      return dickson(symbol_loop(u, P), n);
    }
  }
  throw error("bad rule");
}

}  // namespace detail

/* Apply one rule at one site. The site's monomial keeps its coefficient;
 * consumed symbols are replaced by the relation's right-hand side. */
inline CharPoly rewrite_step(const CharPoly& f, Rule rule, const Site& site,
                             const GAPresentation& P) {
  auto it = f.terms.find(site.mono);
  if (it == f.terms.end()) throw error("rewrite site not present in polynomial");
  Rational c = it->second;
  Monomial rest;
  CharPoly expansion = detail::site_expansion(site.mono, rule, site.i, site.j, P, rest);
  CharPoly r = f;
  r.add_term(site.mono, -c);
  r += c * (expansion * CharPoly::monomial(rest, Rational(1)));
  return r;
}

/* Per-monomial termination measure: loop-symbol count, then total stored
 * word length, compared lexicographically. */
struct Measure {
  long loops = 0;
  long words = 0;
  auto operator<=>(const Measure&) const = default;
};

inline Measure measure(const Monomial& m) {
  Measure r;
  r.loops = static_cast<long>(m.loops.size());
  for (const auto& l : m.loops) r.words += static_cast<long>(l.w.size());
  for (const auto& a : m.arcs) r.words += static_cast<long>(a.q_word.size());
  return r;
}

/* Greedy reducer: POW and R4, scanned left to right, applied only when
 * every replacement monomial is strictly smaller than the one consumed
 * (multiset extension of the measure order, hence termination). Fixpoint:
 * at most one loop symbol per monomial. POW's expansion always contains a
 * top term with i loop symbols, so the guard rejects it here; it remains
 * reachable through rewrite_step. */
inline CharPoly reduce_heuristic(const CharPoly& f, const GAPresentation& P) {
  CharPoly cur = f;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [m, c] : cur.terms) {
      Measure before = measure(m);
      for (Rule rule : {Rule::POW, Rule::R4}) {
        for (const Site& s : rule_sites(CharPoly::monomial(m, Rational(1)), rule)) {
          Monomial rest;
          CharPoly expansion = detail::site_expansion(m, rule, s.i, s.j, P, rest);
          CharPoly replacement = expansion * CharPoly::monomial(rest, Rational(1));
          bool ok = true;
          for (const auto& [rm, rc] : replacement.terms)
            if (!(measure(rm) < before)) {
              ok = false;
              break;
            }
          if (!ok) continue;
          Rational coef = c;
          cur.add_term(m, -coef);
          cur += coef * replacement;
          changed = true;
          break;
        }
        if (changed) break;
      }
      if (changed) break;  // term map mutated; rescan
    }
  }
  return cur;
}

}  // namespace chark
