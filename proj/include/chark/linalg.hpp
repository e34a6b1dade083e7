#pragma once

#include "chark/field.hpp"
#include "chark/rng.hpp"

namespace chark {

template <class F>
struct Vec2 {
  F x{}, y{};
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Vec2& a, const Vec2& b) { return !(a == b); }
};

// row-major [[a, b], [c, d]]
template <class F>
struct Mat2 {
  F a{}, b{}, c{}, d{};
  friend bool operator==(const Mat2& m, const Mat2& n) {
    return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
  }
  friend bool operator!=(const Mat2& m, const Mat2& n) { return !(m == n); }
};

template <class F>
Mat2<F> operator+(const Mat2<F>& m, const Mat2<F>& n) {
  return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d};
}
template <class F>
Mat2<F> operator-(const Mat2<F>& m, const Mat2<F>& n) {
  return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d};
}
template <class F>
Mat2<F> operator*(const Mat2<F>& m, const Mat2<F>& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
          m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}
template <class F>
Vec2<F> operator*(const Mat2<F>& m, const Vec2<F>& v) {
  return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
}
template <class F>
Mat2<F> operator*(const F& s, const Mat2<F>& m) {
  return {s * m.a, s * m.b, s * m.c, s * m.d};
}
template <class F>
Vec2<F> operator*(const F& s, const Vec2<F>& v) {
  return {s * v.x, s * v.y};
}

template <class F>
F trace(const Mat2<F>& m) {
  return m.a + m.d;
}
template <class F>
F det(const Mat2<F>& m) {
  return m.a * m.d - m.b * m.c;
}

/* Adjoint anti-involution: A + iota(A) = tr(A)*Id and A*iota(A) = det(A)*Id.
 * For det 1 this is the matrix inverse, with no division anywhere. */
template <class F>
Mat2<F> iota(const Mat2<F>& m) {
  return {m.d, -m.b, -m.c, m.a};
}

// symplectic form: determinant of the column pair (u v)
template <class F>
F omega(const Vec2<F>& u, const Vec2<F>& v) {
  return u.x * v.y - v.x * u.y;
}

/* Outer product Theta(v, w) = v * omega(w, -), the rank <= 1 matrix with
 * trace equal to -omega(v, w). */
template <class F>
Mat2<F> outer(const Vec2<F>& v, const Vec2<F>& w) {
  return {-v.x * w.y, v.x * w.x, -v.y * w.y, v.y * w.x};
}

template <class F>
Mat2<F> identity(const FieldCtx<F>& K) {
  return {K.one(), K.zero(), K.zero(), K.one()};
}

template <class F>
Vec2<F> sample_vec(const FieldCtx<F>& K, Rng& g) {
  return {K.sample(g), K.sample(g)};
}

template <class F>
Mat2<F> sample_mat(const FieldCtx<F>& K, Rng& g) {
  return {K.sample(g), K.sample(g), K.sample(g), K.sample(g)};
}

// uniform-ish SL2 sample: a != 0 free, b, c free, d forced by det = 1
template <class F>
Mat2<F> sample_sl2(const FieldCtx<F>& K, Rng& g) {
  F a = K.sample_nonzero(g);
  F b = K.sample(g);
  F c = K.sample(g);
  F d = (K.one() + b * c) / a;
  return {a, b, c, d};
}

}  // namespace chark
