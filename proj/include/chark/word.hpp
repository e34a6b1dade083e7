#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chark/field.hpp"

namespace chark {

/* One letter of a free-group word: generator index (0-based) with an
 * inversion flag. Letter order g1 < g1^-1 < g2 < g2^-1 < ... */
struct Gen {
  uint16_t idx = 0;
  bool inv = false;
  auto operator<=>(const Gen&) const = default;
  Gen flip() const { return {idx, !inv}; }
};

using Word = std::vector<Gen>;  // empty word = identity

inline bool is_reduced(const Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i].idx == w[i + 1].idx && w[i].inv != w[i + 1].inv) return false;
  return true;
}

inline Word reduced(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (Gen g : w) {
    if (!r.empty() && r.back().idx == g.idx && r.back().inv != g.inv)
      r.pop_back();
    else
      r.push_back(g);
  }
  return r;
}

inline Word inverse(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(it->flip());
  return r;
}

inline Word concat(const Word& u, const Word& v) {
  Word r = u;
  r.insert(r.end(), v.begin(), v.end());
  return reduced(r);
}

inline Word power(const Word& w, int i) {
  Word base = i < 0 ? inverse(w) : w;
  int n = i < 0 ? -i : i;
  Word r;
  for (int k = 0; k < n; ++k) r = concat(r, base);
  return r;
}

inline Word cyclic_reduced(Word w) {
  w = reduced(w);
  while (w.size() >= 2 && w.front().idx == w.back().idx && w.front().inv != w.back().inv) {
    w.erase(w.begin());
    w.pop_back();
  }
  return w;
}

// length-lex order; returns <0, 0, >0
inline int cmp_words(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size() ? -1 : 1;
  for (size_t i = 0; i < u.size(); ++i) {
    if (u[i] != v[i]) return u[i] < v[i] ? -1 : 1;
  }
  return 0;
}

/* Canonical representative of a loop class: cyclically reduce, then take
 * the length-lex least among all rotations of the word and of its inverse
 * (loop classes are closed under conjugation and inversion). */
inline Word loop_canon(const Word& w) {
  Word r = cyclic_reduced(w);
  if (r.empty()) return r;
  Word best = r;
  for (Word cand : {r, inverse(r)}) {
    for (size_t s = 0; s < cand.size(); ++s) {
      Word rot(cand.begin() + s, cand.end());
      rot.insert(rot.end(), cand.begin(), cand.begin() + s);
      if (cmp_words(rot, best) < 0) best = rot;
    }
  }
  return best;
}

// smallest u and largest i >= 1 with w = u^i (w must be reduced)
inline std::pair<Word, int> word_root(const Word& w) {
  size_t n = w.size();
  for (size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (size_t i = d; i < n && ok; ++i) ok = w[i] == w[i % d];
    if (ok) return {Word(w.begin(), w.begin() + d), static_cast<int>(n / d)};
  }
  return {w, 1};
}

/* Marked point: a G-translate of an orbit representative, stored as the
 * translating word plus the orbit index (0-based). */
struct MarkedPoint {
  Word prefix;
  int orbit = 0;
  friend bool operator==(const MarkedPoint&, const MarkedPoint&) = default;
};

inline MarkedPoint act(const Word& g, const MarkedPoint& p) {
  return {concat(g, p.prefix), p.orbit};
}

/* Generator naming for parsing and printing. Base generators are g1..gm;
 * alternate schemes (surface a1/b1/c1 names, central extension letters)
 * supply their own name list. */
struct NameTable {
  std::vector<std::string> names;

  static NameTable standard(int gens) {
    NameTable t;
    for (int i = 1; i <= gens; ++i) t.names.push_back("g" + std::to_string(i));
    return t;
  }
  int find(const std::string& s) const {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == s) return static_cast<int>(i);
    return -1;
  }
};

// whitespace-separated tokens "NAME" or "NAME^-1"; "e" is the empty word
inline Word parse_word(const std::string& s, const NameTable& names) {
  Word w;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i >= s.size()) break;
    size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    std::string tok = s.substr(i, j - i);
    i = j;
    bool inv = false;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      inv = true;
      tok = tok.substr(0, tok.size() - 3);
    }
    if (tok == "e") {
      if (inv) throw error("cannot invert the identity token e");
      continue;
    }
    int idx = names.find(tok);
    if (idx < 0) throw error("unknown generator \"" + tok + "\" in word");
    w.push_back({static_cast<uint16_t>(idx), inv});
  }
  return reduced(w);
}

inline std::string word_str(const Word& w, const NameTable& names) {
  if (w.empty()) return "e";
  std::string s;
  for (Gen g : w) {
    if (!s.empty()) s += ' ';
    s += names.names.at(g.idx);
    if (g.inv) s += "^-1";
  }
  return s;
}

}  // namespace chark
