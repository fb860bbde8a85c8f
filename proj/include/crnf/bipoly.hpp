#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "crnf/gauss_rational.hpp"
#include "crnf/param_scalar.hpp"

namespace crnf {

/// Exponent pair of a monomial x^m y^n. Ordered graded-lexicographically by
/// (m + n, m), which fixes iteration and serialization order.
struct Bidegree {
  int m = 0;
  int n = 0;

  int total() const { return m + n; }

  friend bool operator==(const Bidegree&, const Bidegree&) = default;
  friend std::strong_ordering operator<=>(const Bidegree& a, const Bidegree& b) {
    if (auto c = a.total() <=> b.total(); c != 0) return c;
    return a.m <=> b.m;
  }
};

/// Truncation rule: a term x^m y^n is kept when wx*m + wy*n <= bound.
/// Surfaces use weights (1, 1) in (z, zbar); maps use (1, 2) in (z, w).
struct Grading {
  int wx = 1;
  int wy = 1;
  int bound = 0;

  static Grading total(int bound) { return {1, 1, bound}; }
  static Grading weighted(int bound) { return {1, 2, bound}; }

  int weight(const Bidegree& d) const { return wx * d.m + wy * d.n; }
  bool keeps(const Bidegree& d) const { return weight(d) <= bound; }
};

/// Sparse polynomial in two commuting variables with scalar type S
/// (GaussRat or ParamScalar). In (z, zbar) it represents sum c_{m,n} z^m zbar^n;
/// formal maps reuse it for series in (z, w). Zero coefficients are never stored.
template <class S>
class BiPoly {
 public:
  using Scalar = S;
  using Terms = std::map<Bidegree, S>;

  BiPoly() = default;

  static BiPoly monomial(int m, int n, const S& c = S(1)) {
    BiPoly p;
    p.add_term(m, n, c);
    return p;
  }
  static BiPoly constant(const S& c) { return monomial(0, 0, c); }
  static BiPoly x() { return monomial(1, 0); }
  static BiPoly y() { return monomial(0, 1); }
  /// Q = z^2 + zbar^2.
  static BiPoly quadric() { return monomial(2, 0) + monomial(0, 2); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  S coeff(int m, int n) const {
    auto it = terms_.find({m, n});
    return it == terms_.end() ? S() : it->second;
  }
  S coeff(const Bidegree& d) const { return coeff(d.m, d.n); }

  void add_term(int m, int n, const S& c) {
    if (m < 0 || n < 0) throw DomainError("negative exponent");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(Bidegree{m, n}, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  void set(int m, int n, const S& c) {
    terms_.erase({m, n});
    add_term(m, n, c);
  }

  /// Highest total degree, or -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.total(); }
  int min_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.total(); }
  bool is_homogeneous() const { return terms_.empty() || degree() == min_degree(); }

  BiPoly operator-() const {
    BiPoly r;
    for (const auto& [d, c] : terms_) r.terms_.emplace(d, -c);
    return r;
  }
  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [d, c] : o.terms_) add_term(d.m, d.n, c);
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    for (const auto& [d, c] : o.terms_) add_term(d.m, d.n, -c);
    return *this;
  }
  BiPoly& operator*=(const S& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    Terms out;
    for (const auto& [d, c] : terms_) {
      S v = c * s;
      if (!v.is_zero()) out.emplace(d, std::move(v));
    }
    terms_ = std::move(out);
    return *this;
  }

  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(BiPoly a, const S& s) { return a *= s; }
  friend BiPoly operator*(const S& s, BiPoly a) { return a *= s; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) { return multiply(a, b, std::nullopt); }

  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

  /// Product keeping only the terms retained by `grading` (all terms if none).
  static BiPoly multiply(const BiPoly& a, const BiPoly& b, std::optional<Grading> grading) {
    BiPoly r;
    for (const auto& [da, ca] : a.terms_) {
      if (grading && !grading->keeps(da)) continue;
      for (const auto& [db, cb] : b.terms_) {
        Bidegree d{da.m + db.m, da.n + db.n};
        if (grading && !grading->keeps(d)) continue;
        r.add_term(d.m, d.n, ca * cb);
      }
    }
    return r;
  }

  /// Coefficientwise conversion to another scalar type.
  template <class T>
  BiPoly<T> cast() const {
    BiPoly<T> r;
    for (const auto& [d, c] : terms_) r.add_term(d.m, d.n, T(c));
    return r;
  }

  /// Applies f to every coefficient.
  template <class F>
  auto map_coeffs(F&& f) const {
    using T = std::decay_t<decltype(f(std::declval<const S&>()))>;
    BiPoly<T> r;
    for (const auto& [d, c] : terms_) r.add_term(d.m, d.n, f(c));
    return r;
  }

  std::string str(const char* xname = "z", const char* yname = "zb") const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [d, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")";
      if (d.m > 0) out += std::string("*") + xname + (d.m > 1 ? "^" + std::to_string(d.m) : "");
      if (d.n > 0) out += std::string("*") + yname + (d.n > 1 ? "^" + std::to_string(d.n) : "");
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const BiPoly& p) { return os << p.str(); }

 private:
  Terms terms_;
};

using Poly = BiPoly<GaussRat>;
using ParamPoly = BiPoly<ParamScalar>;

/// c_{m,n} -> conj(c_{n,m}); realizes the complex conjugate of a function of (z, zbar).
template <class S>
BiPoly<S> conj_poly(const BiPoly<S>& p) {
  BiPoly<S> r;
  for (const auto& [d, c] : p.terms()) r.add_term(d.n, d.m, conj(c));
  return r;
}

/// (P + conj P) / 2, a real-valued polynomial.
template <class S>
BiPoly<S> real_part_poly(const BiPoly<S>& p) {
  return (p + conj_poly(p)) * S(GaussRat(Rational(1, 2)));
}

/// (P - conj P) / (2i), a real-valued polynomial.
template <class S>
BiPoly<S> imag_part_poly(const BiPoly<S>& p) {
  return (p - conj_poly(p)) * S(GaussRat(Rational(0), Rational(-1, 2)));
}

template <class S>
BiPoly<S> homogeneous_component(const BiPoly<S>& p, int d) {
  BiPoly<S> r;
  for (const auto& [b, c] : p.terms())
    if (b.total() == d) r.add_term(b.m, b.n, c);
  return r;
}

template <class S>
BiPoly<S> truncate(const BiPoly<S>& p, const Grading& g) {
  BiPoly<S> r;
  for (const auto& [b, c] : p.terms())
    if (g.keeps(b)) r.add_term(b.m, b.n, c);
  return r;
}

template <class S>
BiPoly<S> mul_truncated(const BiPoly<S>& a, const BiPoly<S>& b, const Grading& g) {
  return BiPoly<S>::multiply(a, b, g);
}

/// d^i/dx^i d^j/dy^j.
template <class S>
BiPoly<S> derivative(const BiPoly<S>& p, int i, int j) {
  BiPoly<S> r;
  for (const auto& [d, c] : p.terms()) {
    if (d.m < i || d.n < j) continue;
    Integer k = factorial(d.m) / factorial(d.m - i) * (factorial(d.n) / factorial(d.n - j));
    r.add_term(d.m - i, d.n - j, c * S(GaussRat(Rational(k))));
  }
  return r;
}

/// tr = d^2/dz^2 + d^2/dzbar^2, the Fischer adjoint of multiplication by Q.
template <class S>
BiPoly<S> trace(const BiPoly<S>& p) {
  return derivative(p, 2, 0) + derivative(p, 0, 2);
}

/// P(X, Y) keeping the terms retained by `g`. X and Y must have no constant
/// term so that dropping high-weight terms of factors is exact.
template <class S>
BiPoly<S> substitute(const BiPoly<S>& p, const BiPoly<S>& x, const BiPoly<S>& y, const Grading& g) {
  int max_m = 0, max_n = 0;
  for (const auto& [d, c] : p.terms()) {
    max_m = std::max(max_m, d.m);
    max_n = std::max(max_n, d.n);
  }
  std::vector<BiPoly<S>> xp{BiPoly<S>::constant(S(1))}, yp{BiPoly<S>::constant(S(1))};
  BiPoly<S> xt = truncate(x, g), yt = truncate(y, g);
  for (int k = 1; k <= max_m; ++k) xp.push_back(mul_truncated(xp.back(), xt, g));
  for (int k = 1; k <= max_n; ++k) yp.push_back(mul_truncated(yp.back(), yt, g));
  BiPoly<S> r;
  for (const auto& [d, c] : p.terms()) r += mul_truncated(xp[d.m], yp[d.n], g) * c;
  return r;
}

/// Total-degree form used for real-point substitutions in (z, zbar).
template <class S>
BiPoly<S> substitute(const BiPoly<S>& p, const BiPoly<S>& zexpr, const BiPoly<S>& zbarexpr, int bound) {
  return substitute(p, zexpr, zbarexpr, Grading::total(bound));
}

/// Fischer pairing sum m! n! conj(p_{m,n}) r_{m,n} of two homogeneous
/// polynomials of equal degree. The zero polynomial pairs with anything.
template <class S>
S fischer_pair(const BiPoly<S>& p, const BiPoly<S>& r) {
  if (!p.is_homogeneous() || !r.is_homogeneous())
    throw DomainError("fischer_pair: arguments must be homogeneous");
  if (!p.is_zero() && !r.is_zero() && p.degree() != r.degree())
    throw DomainError("fischer_pair: degree mismatch");
  S sum;
  for (const auto& [d, c] : p.terms()) {
    S rc = r.coeff(d);
    if (rc.is_zero()) continue;
    sum += conj(c) * rc * S(GaussRat(Rational(factorial(d.m) * factorial(d.n))));
  }
  return sum;
}

/// P^*(R) = sum conj(p_{m,n}) d^{m+n}R / dz^m dzbar^n for homogeneous P.
template <class S>
BiPoly<S> adjoint_apply(const Poly& p, const BiPoly<S>& r) {
  if (!p.is_homogeneous()) throw DomainError("adjoint_apply: operator polynomial must be homogeneous");
  BiPoly<S> out;
  for (const auto& [d, c] : p.terms()) out += derivative(r, d.m, d.n) * S(c.conj());
  return out;
}

/// Homogeneous degree-d monomials in serialization order (m ascending).
inline std::vector<Bidegree> monomials_of_degree(int d) {
  std::vector<Bidegree> out;
  for (int m = 0; m <= d; ++m) out.push_back({m, d - m});
  return out;
}

/// Real coordinates (Re c, Im c) of the degree-d monomial coefficients, in
/// monomials_of_degree order. The entries of a ParamScalar polynomial are
/// real-coefficient ParamScalars.
template <class S>
std::vector<S> real_coords(const BiPoly<S>& p, int d) {
  std::vector<S> out;
  out.reserve(2 * (d + 1));
  for (const auto& b : monomials_of_degree(d)) {
    S c = p.coeff(b);
    if constexpr (std::is_same_v<S, GaussRat>) {
      out.emplace_back(c.re());
      out.emplace_back(c.im());
    } else {
      out.push_back(c.real_part());
      out.push_back(c.imag_part());
    }
  }
  return out;
}

/// Inverse of real_coords.
template <class S>
BiPoly<S> from_real_coords(const std::vector<S>& v, int d) {
  BiPoly<S> p;
  const auto mons = monomials_of_degree(d);
  if (v.size() != 2 * mons.size()) throw DomainError("from_real_coords: size mismatch");
  for (std::size_t k = 0; k < mons.size(); ++k) {
    p.add_term(mons[k].m, mons[k].n, v[2 * k] + v[2 * k + 1] * S(GaussRat::i()));
  }
  return p;
}

}  // namespace crnf
