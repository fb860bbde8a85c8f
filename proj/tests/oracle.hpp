#pragma once

// Independent reference arithmetic for the tests. Shares no code with the
// engine beyond GMP rationals; results are converted to crnf::Poly only for
// the final comparison.

#include <gmpxx.h>

#include <map>
#include <utility>
#include <vector>

#include "crnf/bipoly.hpp"

namespace oracle {

using Q = mpq_class;

struct C {
  Q re, im;
};

inline C operator+(const C& a, const C& b) { return {a.re + b.re, a.im + b.im}; }
inline C operator-(const C& a, const C& b) { return {a.re - b.re, a.im - b.im}; }
inline C operator*(const C& a, const C& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline C cj(const C& a) { return {a.re, -a.im}; }
inline bool zero(const C& a) { return a.re == 0 && a.im == 0; }

/// exponent pair (m, n) of z^m zbar^n -> coefficient
using P = std::map<std::pair<int, int>, C>;

inline void add(P& p, int m, int n, const C& c) {
  C& slot = p[{m, n}];
  slot = slot + c;
  if (zero(slot)) p.erase({m, n});
}

inline P operator+(P a, const P& b) {
  for (const auto& [e, c] : b) add(a, e.first, e.second, c);
  return a;
}
inline P operator-(P a, const P& b) {
  for (const auto& [e, c] : b) add(a, e.first, e.second, C{-c.re, -c.im});
  return a;
}
inline P operator*(const P& a, const P& b) {
  P out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) add(out, ea.first + eb.first, ea.second + eb.second, ca * cb);
  return out;
}
inline P scale(const P& a, const C& s) {
  P out;
  for (const auto& [e, c] : a) add(out, e.first, e.second, c * s);
  return out;
}
inline P mono(int m, int n, C c = {1, 0}) {
  P p;
  add(p, m, n, c);
  return p;
}
inline P quadric() { return mono(2, 0) + mono(0, 2); }
inline P power(const P& a, int k) {
  P out = mono(0, 0);
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}
inline P conjugate(const P& a) {
  P out;
  for (const auto& [e, c] : a) add(out, e.second, e.first, cj(c));
  return out;
}
inline P truncate(const P& a, int bound) {
  P out;
  for (const auto& [e, c] : a)
    if (e.first + e.second <= bound) out[e] = c;
  return out;
}

/// d^2/dz^2 + d^2/dzbar^2, written out term by term.
inline P trace(const P& a) {
  P out;
  for (const auto& [e, c] : a) {
    const auto [m, n] = e;
    if (m >= 2) add(out, m - 2, n, c * C{Q(m * (m - 1)), 0});
    if (n >= 2) add(out, m, n - 2, c * C{Q(n * (n - 1)), 0});
  }
  return out;
}

inline Q fact(int n) {
  Q f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

/// sum m! n! conj(a) b over common monomials.
inline C pair(const P& a, const P& b) {
  C s;
  for (const auto& [e, c] : a) {
    auto it = b.find(e);
    if (it == b.end()) continue;
    s = s + cj(c) * it->second * C{fact(e.first) * fact(e.second), 0};
  }
  return s;
}

/// Real Fischer pairing Re<a, b>.
inline Q pair_re(const P& a, const P& b) { return pair(a, b).re; }

inline crnf::Poly to_poly(const P& a) {
  crnf::Poly p;
  for (const auto& [e, c] : a) p.add_term(e.first, e.second, crnf::GaussRat(c.re, c.im));
  return p;
}
inline P from_poly(const crnf::Poly& p) {
  P out;
  for (const auto& [d, c] : p.terms()) add(out, d.m, d.n, C{c.re(), c.im()});
  return out;
}

/// Solves the consistent system G x = b (G square, possibly singular) by
/// Gauss-Jordan elimination with free variables set to zero.
inline std::vector<Q> solve(std::vector<std::vector<Q>> g, std::vector<Q> b) {
  const std::size_t n = g.size();
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t p = row;
    while (p < n && g[p][col] == 0) ++p;
    if (p == n) continue;
    std::swap(g[p], g[row]);
    std::swap(b[p], b[row]);
    const Q inv = 1 / g[row][col];
    for (auto& x : g[row]) x *= inv;
    b[row] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || g[i][col] == 0) continue;
      const Q f = g[i][col];
      for (std::size_t j = 0; j < n; ++j) g[i][j] -= f * g[row][j];
      b[i] -= f * b[row];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }
  std::vector<Q> x(n);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = b[r];
  return x;
}

/// Orthogonal projection of `target` onto the real span of `gens` with respect
/// to the real Fischer pairing (normal equations).
inline P project(const std::vector<P>& gens, const P& target) {
  const std::size_t k = gens.size();
  std::vector<std::vector<Q>> g(k, std::vector<Q>(k));
  std::vector<Q> b(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) g[i][j] = pair_re(gens[i], gens[j]);
    b[i] = pair_re(gens[i], target);
  }
  const auto x = solve(g, b);
  P out;
  for (std::size_t i = 0; i < k; ++i) out = out + scale(gens[i], C{x[i], 0});
  return out;
}

/// Fischer division by least squares: A minimizes |P - Q A| over the real span
/// of {Q z^a zbar^b, i Q z^a zbar^b}.
inline std::pair<P, P> divide(const P& p, int degree) {
  if (degree < 2) return {P{}, p};
  std::vector<P> gens, quot;
  for (int a = 0; a <= degree - 2; ++a) {
    for (C unit : {C{1, 0}, C{0, 1}}) {
      quot.push_back(mono(a, degree - 2 - a, unit));
      gens.push_back(quadric() * quot.back());
    }
  }
  const std::size_t k = gens.size();
  std::vector<std::vector<Q>> g(k, std::vector<Q>(k));
  std::vector<Q> b(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) g[i][j] = pair_re(gens[i], gens[j]);
    b[i] = pair_re(gens[i], p);
  }
  const auto x = solve(g, b);
  P a;
  for (std::size_t i = 0; i < k; ++i) a = a + scale(quot[i], C{x[i], 0});
  return {a, p - quadric() * a};
}

/// Image of one unit unknown: i^imaginary z^k Q^l for g, and
/// -2 Re{2z i^imaginary z^k Q^l} for f.
inline P column(char series, int k, int l, bool imaginary) {
  const C unit = imaginary ? C{0, 1} : C{1, 0};
  const P base = scale(mono(k, 0) * power(quadric(), l), unit);
  if (series == 'g') return base;
  const P x = scale(mono(1, 0) * base, C{2, 0});
  return P{} - (x + conjugate(x));
}

/// Columns of g_T(z, Q) - 2 Re{2z f_T(z, Q)} on unit real and imaginary
/// unknowns, expanded directly; g_{k,l}: k + 2l = T, f_{k,l}: k + 2l = T - 1,
/// both with k + l >= 2.
inline std::vector<P> block_columns(int t) {
  std::vector<P> cols;
  for (char series : {'g', 'f'}) {
    const int weight = series == 'g' ? t : t - 1;
    for (int l = 0; 2 * l <= weight; ++l) {
      const int k = weight - 2 * l;
      if (k + l < 2) continue;
      for (bool im : {false, true}) cols.push_back(column(series, k, l, im));
    }
  }
  return cols;
}

/// a minus its projection onto span(block_columns(T)).
inline P normal_projection(const P& a, int t) { return a - project(block_columns(t), a); }

}  // namespace oracle
