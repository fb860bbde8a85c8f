#pragma once

#include <gmpxx.h>

#include <mutex>
#include <ostream>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "crnf/errors.hpp"

namespace crnf {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p" or "p/q" (q > 0) into a canonical rational. Non-reduced input
/// such as "2/4" is accepted and reduced.
inline Rational parse_rational(std::string_view text) {
  static const std::regex kPattern(R"(^-?[0-9]+(/[0-9]+)?$)");
  std::string s(text);
  if (!std::regex_match(s, kPattern)) {
    throw SchemaError("malformed rational literal \"" + s + "\"");
  }
  Rational r;
  if (r.set_str(s, 10) != 0) {
    throw SchemaError("malformed rational literal \"" + s + "\"");
  }
  if (r.get_den() == 0) {
    throw SchemaError("zero denominator in rational literal \"" + s + "\"");
  }
  r.canonicalize();
  return r;
}

/// "p/q", with "/q" omitted when q == 1.
inline std::string format_rational(Rational r) {
  r.canonicalize();
  return r.get_str(10);
}

/// n! as an exact integer, memoized.
inline Integer factorial(unsigned n) {
  static std::mutex mu;
  static std::vector<Integer> table{Integer(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= n) {
    table.push_back(table.back() * static_cast<unsigned long>(table.size()));
  }
  return table[n];
}

/// Exact Gaussian rational re + i*im.
class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussRat(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussRat(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRat i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_constant() const { return true; }

  GaussRat conj() const { return {re_, -im_}; }
  Rational norm2() const { return re_ * re_ + im_ * im_; }

  GaussRat operator-() const { return {-re_, -im_}; }

  GaussRat& operator+=(const GaussRat& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    Rational d = o.norm2();
    if (sgn(d) == 0) throw DomainError("division by zero Gaussian rational");
    *this *= o.conj();
    re_ /= d;
    im_ /= d;
    return *this;
  }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }

  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::string str() const {
    if (sgn(im_) == 0) return format_rational(re_);
    if (sgn(re_) == 0) return format_rational(im_) + "i";
    return "(" + format_rational(re_) + (sgn(im_) > 0 ? "+" : "") + format_rational(im_) + "i)";
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussRat& g) { return os << g.str(); }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline GaussRat conj(const GaussRat& g) { return g.conj(); }

}  // namespace crnf
