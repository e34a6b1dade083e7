#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chark/charpoly.hpp"
#include "chark/jsonio.hpp"

namespace chark {

/* A compact surface with boundary, genus g and b boundary components, plus
 * n contractible marked regions. Its fundamental group is free of rank
 * 2g + b - 1 and each marked region is one free orbit of marked points.
 * Generators are named a1,b1,...,ag,bg for the handles and c1,...,c_{b-1}
 * for all but the last boundary loop (the last one is a product of the
 * others and is not a free generator). */
struct SurfaceSpec {
  int genus = 0;
  int boundary = 1;
  int marked = 0;

  void validate() const {
    if (genus < 0) throw error("negative genus");
    if (boundary < 1) throw error("need at least one boundary component for a free surface group");
    if (marked < 0) throw error("negative marked region count");
  }

  int rank() const { return 2 * genus + boundary - 1; }

  GAPresentation presentation() const {
    validate();
    return GAPresentation::free_action(rank(), marked);
  }

  NameTable names() const {
    validate();
    NameTable t;
    for (int i = 1; i <= genus; ++i) {
      t.names.push_back("a" + std::to_string(i));
      t.names.push_back("b" + std::to_string(i));
    }
    for (int j = 1; j <= boundary - 1; ++j) t.names.push_back("c" + std::to_string(j));
    return t;
  }
};

struct CurveSpec {
  bool is_arc = false;
  Word loop;
  MarkedPoint from, to;

  static CurveSpec mk_loop(Word w) { return {false, std::move(w), {}, {}}; }
  static CurveSpec mk_arc(MarkedPoint a, MarkedPoint b) {
    return {true, {}, std::move(a), std::move(b)};
  }
};

using CurveCollection = std::vector<CurveSpec>;

inline CharPoly to_char(const CurveSpec& c, const SurfaceSpec& S) {
  GAPresentation P = S.presentation();
  if (c.is_arc) return symbol_arc(c.from, c.to, P);
  return symbol_loop(c.loop, P);
}

inline CharPoly to_char(const CurveCollection& cs, const SurfaceSpec& S) {
  CharPoly f = CharPoly::constant(Rational(1));
  for (const CurveSpec& c : cs) f *= to_char(c, S);
  return f;
}

/* Site data for the graphical rules: which words and endpoints the chosen
 * curve segments spell. Each rule reads only the fields it needs. */
struct CurveSite {
  Word g, h;
  MarkedPoint p, q, p2, q2;
};

/* The graphical calculus:
 *   1 contractible loop is the constant 2
 *   2 contractible arc vanishes
 *   3 a loop equals its orientation reversal
 *   4 an arc is minus its orientation reversal
 *   5 smoothing two loop strands:  [g][h] = [gh] + [g^-1 h]
 *   6 smoothing a loop with an arc: [g][p,q] = [gp,q] + [g^-1 p,q]
 *   7 smoothing two arc strands:   [p,q][p',q'] = [p,q'][p',q] + [p,p'][q,q']
 * Returns the two sides as character polynomials; they agree as functions.
 */
inline std::pair<CharPoly, CharPoly> graphical_rule(const SurfaceSpec& S, int rule,
                                                    const CurveSite& site) {
  GAPresentation P = S.presentation();
  switch (rule) {
    case 1:
      return {symbol_loop({}, P), CharPoly::constant(Rational(2))};
    case 2:
      return {symbol_arc(site.p, site.p, P), CharPoly{}};
    case 3:
      return {symbol_loop(site.g, P), symbol_loop(inverse(site.g), P)};
    case 4:
      return {symbol_arc(site.p, site.q, P), -symbol_arc(site.q, site.p, P)};
    case 5:
      return {symbol_loop(site.g, P) * symbol_loop(site.h, P),
              symbol_loop(concat(site.g, site.h), P) +
                  symbol_loop(concat(inverse(site.g), site.h), P)};
    case 6:
      return {symbol_loop(site.g, P) * symbol_arc(site.p, site.q, P),
              symbol_arc(act(site.g, site.p), site.q, P) +
                  symbol_arc(act(inverse(site.g), site.p), site.q, P)};
    case 7:
      return {symbol_arc(site.p, site.q, P) * symbol_arc(site.p2, site.q2, P),
              symbol_arc(site.p, site.q2, P) * symbol_arc(site.p2, site.q, P) +
                  symbol_arc(site.p, site.p2, P) * symbol_arc(site.q, site.q2, P)};
    default:
      throw error("graphical rule number must be 1..7");
  }
}

inline SurfaceSpec surface_from_json(const json& j) {
  SurfaceSpec s;
  s.genus = j.value("genus", 0);
  s.boundary = j.value("boundary", 1);
  s.marked = j.value("marked", 0);
  s.validate();
  return s;
}

inline json surface_to_json(const SurfaceSpec& s) {
  return json{{"genus", s.genus}, {"boundary", s.boundary}, {"marked", s.marked}};
}

// marked regions are numbered from 1 in files
inline MarkedPoint point_from_json(const json& j, const SurfaceSpec& S, const NameTable& names) {
  if (!j.is_array() || j.size() != 2)
    throw error("marked point must be [word, region]");
  MarkedPoint p{parse_word(j.at(0).get<std::string>(), names), j.at(1).get<int>() - 1};
  S.presentation().check_point(p);
  return p;
}

inline CurveCollection curves_from_json(const json& j, const SurfaceSpec& S) {
  NameTable names = S.names();
  CurveCollection cs;
  if (!j.is_array()) throw error("curve list must be an array");
  for (const json& c : j) {
    if (c.contains("loop")) {
      cs.push_back(CurveSpec::mk_loop(parse_word(c.at("loop").get<std::string>(), names)));
    } else if (c.contains("arc")) {
      const json& a = c.at("arc");
      cs.push_back(CurveSpec::mk_arc(point_from_json(a.at("from"), S, names),
                                     point_from_json(a.at("to"), S, names)));
    } else {
      throw error("curve entry needs a loop or an arc");
    }
  }
  return cs;
}

}  // namespace chark
