#pragma once

#include <cctype>
#include <string>
#include <utility>

#include "chark/charpoly.hpp"
#include "chark/tracealg.hpp"

namespace chark {

/* Recursive-descent reader for character polynomial expressions:
 *   expr   := term (('+'|'-') term)*
 *   term   := factor ('*' factor)*
 *   factor := '-' factor | number | 'loop' '(' word ')'
 *           | 'arc' '(' point ',' point ')' | '(' expr ')'
 *   point  := word '.' 'p' int          marked orbits numbered from 1
 *   number := int ('/' int)?
 * Words use the supplied name table ("g1 g2^-1", "e"). Errors carry the
 * 1-based character position. */
class ExprParser {
 public:
  ExprParser(std::string src, const GAPresentation& P, NameTable names)
      : s_(std::move(src)), P_(P), names_(std::move(names)) {}

  CharPoly run() {
    CharPoly f = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return f;
  }

 private:
  std::string s_;
  size_t pos_ = 0;
  const GAPresentation& P_;
  NameTable names_;

  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, size_t where) const {
    throw error(msg + " at position " + std::to_string(where + 1));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool take(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!take(c)) fail(std::string("expected '") + c + "'");
  }

  CharPoly expr() {
    CharPoly f = term();
    for (;;) {
      if (take('+'))
        f += term();
      else if (take('-'))
        f -= term();
      else
        return f;
    }
  }

  CharPoly term() {
    CharPoly f = factor();
    while (take('*')) f *= factor();
    return f;
  }

  CharPoly factor() {
    skip();
    if (take('-')) return -factor();
    if (pos_ >= s_.size()) fail("expected an expression");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (take('(')) {
      CharPoly f = expr();
      expect(')');
      return f;
    }
    size_t at = pos_;
    std::string id = ident();
    if (id == "loop") {
      expect('(');
      Word w = word_part(")");
      expect(')');
      return symbol_loop(w, P_);
    }
    if (id == "arc") {
      expect('(');
      MarkedPoint p = point();
      expect(',');
      MarkedPoint q = point();
      expect(')');
      return symbol_arc(p, q, P_);
    }
    fail_at(id.empty() ? "expected an expression" : "unknown function \"" + id + "\"", at);
  }

  std::string ident() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  CharPoly number() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string text = s_.substr(start, pos_ - start);
    if (take('/')) {
      skip();
      size_t dstart = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == dstart) fail("expected a denominator");
      text += "/" + s_.substr(dstart, pos_ - dstart);
    }
    try {
      return CharPoly::constant(Rational::parse(text));
    } catch (const std::exception& e) {
      fail_at(e.what(), start);
    }
  }

  // raw text up to any of the stop characters, fed to the word parser
  Word word_part(const std::string& stops) {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && stops.find(s_[pos_]) == std::string::npos) ++pos_;
    try {
      return parse_word(s_.substr(start, pos_ - start), names_);
    } catch (const error& e) {
      fail_at(e.what(), start);
    }
  }

  MarkedPoint point() {
    skip();
    size_t start = pos_;
    size_t end = pos_;
    while (end < s_.size() && s_[end] != ',' && s_[end] != ')') ++end;
    if (s_.substr(start, end - start).find('.') == std::string::npos)
      fail_at("a point needs a \".pN\" orbit suffix", start);
    Word w = word_part(".");
    expect('.');
    skip();
    if (pos_ >= s_.size() || s_[pos_] != 'p') fail("expected an orbit \"pN\"");
    ++pos_;
    size_t nstart = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == nstart) fail("expected an orbit number");
    int orbit = 0;
    try {
      orbit = std::stoi(s_.substr(nstart, pos_ - nstart)) - 1;
    } catch (const std::out_of_range&) {
      fail_at("orbit number out of range", nstart);
    }
    MarkedPoint p{std::move(w), orbit};
    try {
      P_.check_point(p);
    } catch (const error& e) {
      fail_at(e.what(), nstart);
    }
    return p;
  }
};

inline CharPoly parse_charpoly(const std::string& s, const GAPresentation& P,
                               const NameTable& names) {
  return ExprParser(s, P, names).run();
}

inline CharPoly parse_charpoly(const std::string& s, const GAPresentation& P) {
  return parse_charpoly(s, P, NameTable::standard(P.gens));
}

/* Reader for the matrix-invariant grammar. Same expression shape as above;
 * the atoms are the letters X(i), Xi(i), Th(j,k), the scalar tr(LETTERS),
 * and Id. A scalar stands for scalar*Id, so both invariant and
 * matrix-valued identities parse into one ConExpr. */
class InvExprParser {
 public:
  explicit InvExprParser(std::string src) : s_(std::move(src)) {}

  ConExpr run() {
    ConExpr e = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  std::string s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, size_t where) const {
    throw error(msg + " at position " + std::to_string(where + 1));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool take(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!take(c)) fail(std::string("expected '") + c + "'");
  }

  ConExpr expr() {
    ConExpr e = term();
    for (;;) {
      if (take('+'))
        e += term();
      else if (take('-'))
        e -= term();
      else
        return e;
    }
  }

  ConExpr term() {
    ConExpr e = factor();
    while (take('*')) e = e * factor();
    return e;
  }

  ConExpr factor() {
    skip();
    if (take('-')) return -factor();
    if (pos_ >= s_.size()) fail("expected an expression");
    if (std::isdigit(static_cast<unsigned char>(s_[pos_])))
      return ConExpr::scaled({}, InvExpr::constant(number()));
    if (take('(')) {
      ConExpr e = expr();
      expect(')');
      return e;
    }
    size_t at = pos_;
    std::string id = ident();
    if (id == "tr") {
      expect('(');
      TWord w = tr_body();
      expect(')');
      return ConExpr::scaled({}, tr_word(w));
    }
    if (id == "Id") return ConExpr::identity();
    if (id == "X" || id == "Xi" || id == "Th") {
      pos_ = at;
      return ConExpr::word({letter()});
    }
    fail_at(id.empty() ? "expected an expression" : "unknown symbol \"" + id + "\"", at);
  }

  // letters inside tr(...) separated by whitespace or '*'; empty is Id
  TWord tr_body() {
    TWord w;
    for (;;) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] == ')') return w;
      if (!w.empty()) take('*');
      skip();
      w.push_back(letter());
    }
  }

  TLetter letter() {
    size_t at = pos_;
    std::string id = ident();
    if (id != "X" && id != "Xi" && id != "Th")
      fail_at(id.empty() ? "expected a matrix letter" : "unknown letter \"" + id + "\"", at);
    expect('(');
    int a = index();
    int b = 0;
    if (id == "Th") {
      expect(',');
      b = index();
    }
    expect(')');
    if (id == "X") return TLetter::x(a);
    if (id == "Xi") return TLetter::xi(a);
    return TLetter::th(a, b);
  }

  std::string ident() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  int index() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected an index");
    int v = 0;
    try {
      v = std::stoi(s_.substr(start, pos_ - start));
    } catch (const std::out_of_range&) {
      fail_at("index out of range", start);
    }
    if (v < 1) fail_at("indices are numbered from 1", start);
    return v;
  }

  Rational number() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string text = s_.substr(start, pos_ - start);
    if (take('/')) {
      skip();
      size_t dstart = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == dstart) fail("expected a denominator");
      text += "/" + s_.substr(dstart, pos_ - dstart);
    }
    try {
      return Rational::parse(text);
    } catch (const std::exception& e) {
      fail_at(e.what(), start);
    }
  }
};

inline ConExpr parse_conexpr(const std::string& s) { return InvExprParser(s).run(); }

}  // namespace chark
