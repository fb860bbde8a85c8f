#pragma once

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crnf/gauss_rational.hpp"

namespace crnf {

namespace detail {
inline std::atomic<unsigned>& param_cap_storage() {
  static std::atomic<unsigned> cap{4};
  return cap;
}
}  // namespace detail

/// Largest total degree a ParamScalar term may reach in the parameters.
inline unsigned param_degree_cap() { return detail::param_cap_storage().load(); }
inline void set_param_degree_cap(unsigned cap) { detail::param_cap_storage().store(cap); }

/// Polynomial with Gaussian-rational coefficients in real parameters
/// t1, t2, ... ordered by creation index (index 0 is t1).
class ParamScalar {
 public:
  /// Exponent vector; trailing zeros are trimmed so equal monomials compare equal.
  using Monomial = std::vector<unsigned>;

  ParamScalar() = default;
  ParamScalar(const GaussRat& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
  }
  ParamScalar(long c) : ParamScalar(GaussRat(c)) {}  // NOLINT

  static ParamScalar param(std::size_t index) {
    Monomial m(index + 1, 0);
    m[index] = 1;
    ParamScalar p;
    p.terms_.emplace(std::move(m), GaussRat(1));
    return p;
  }

  static std::string param_name(std::size_t index) { return "t" + std::to_string(index + 1); }

  const std::map<Monomial, GaussRat>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  GaussRat constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? GaussRat() : it->second;
  }
  /// The value of a parameter-free scalar.
  GaussRat constant() const {
    if (!is_constant()) throw DomainError("scalar still depends on parameters");
    return constant_term();
  }

  std::set<std::size_t> params() const {
    std::set<std::size_t> out;
    for (const auto& [m, c] : terms_)
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) out.insert(i);
    return out;
  }

  unsigned degree_in(std::size_t p) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_)
      if (p < m.size()) d = std::max(d, m[p]);
    return d;
  }

  ParamScalar conj() const {
    ParamScalar r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c.conj());
    return r;
  }
  /// Coefficientwise real part; equals the real part of the value because
  /// parameters are real.
  ParamScalar real_part() const {
    ParamScalar r;
    for (const auto& [m, c] : terms_)
      if (sgn(c.re()) != 0) r.terms_.emplace(m, GaussRat(c.re()));
    return r;
  }
  ParamScalar imag_part() const {
    ParamScalar r;
    for (const auto& [m, c] : terms_)
      if (sgn(c.im()) != 0) r.terms_.emplace(m, GaussRat(c.im()));
    return r;
  }

  ParamScalar operator-() const {
    ParamScalar r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  ParamScalar& operator+=(const ParamScalar& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  ParamScalar& operator-=(const ParamScalar& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  ParamScalar& operator*=(const ParamScalar& o) {
    *this = *this * o;
    return *this;
  }

  friend ParamScalar operator+(ParamScalar a, const ParamScalar& b) { return a += b; }
  friend ParamScalar operator-(ParamScalar a, const ParamScalar& b) { return a -= b; }
  friend ParamScalar operator*(const ParamScalar& a, const ParamScalar& b) {
    ParamScalar r;
    if (a.is_zero() || b.is_zero()) return r;
    const unsigned cap = param_degree_cap();
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m(std::max(ma.size(), mb.size()), 0);
        unsigned total = 0;
        for (std::size_t i = 0; i < m.size(); ++i) {
          m[i] = (i < ma.size() ? ma[i] : 0) + (i < mb.size() ? mb[i] : 0);
          total += m[i];
        }
        if (total > cap) throw ParameterCapExceeded(cap);
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }

  friend bool operator==(const ParamScalar& a, const ParamScalar& b) { return a.terms_ == b.terms_; }

  /// Replaces parameter p by `value` everywhere.
  ParamScalar substitute(std::size_t p, const ParamScalar& value) const {
    if (degree_in(p) == 0) return *this;
    ParamScalar r;
    std::vector<ParamScalar> powers{ParamScalar(1)};
    for (const auto& [m, c] : terms_) {
      unsigned e = p < m.size() ? m[p] : 0;
      while (powers.size() <= e) powers.push_back(powers.back() * value);
      Monomial rest = m;
      if (p < rest.size()) rest[p] = 0;
      trim(rest);
      ParamScalar t;
      t.terms_.emplace(std::move(rest), c);
      r += t * powers[e];
    }
    return r;
  }

  /// Evaluates with parameter i set to values[i] (missing entries are 0).
  GaussRat evaluate(const std::vector<Rational>& values) const {
    GaussRat sum;
    for (const auto& [m, c] : terms_) {
      GaussRat t = c;
      for (std::size_t i = 0; i < m.size(); ++i) {
        Rational v = i < values.size() ? values[i] : Rational(0);
        for (unsigned e = 0; e < m[i]; ++e) t *= GaussRat(v);
      }
      sum += t;
    }
    return sum;
  }

  /// If this scalar reads c*t_p + rest with c a nonzero constant and rest free
  /// of t_p, returns the value of t_p that makes it vanish: -rest/c.
  std::optional<ParamScalar> solve_affine(std::size_t p) const {
    if (degree_in(p) != 1) return std::nullopt;
    GaussRat coeff;
    ParamScalar rest;
    for (const auto& [m, c] : terms_) {
      unsigned e = p < m.size() ? m[p] : 0;
      if (e == 0) {
        rest.terms_.emplace(m, c);
        continue;
      }
      Monomial only(p + 1, 0);
      only[p] = 1;
      if (m != only) return std::nullopt;
      coeff = c;
    }
    if (coeff.is_zero()) return std::nullopt;
    ParamScalar sol;
    GaussRat inv = GaussRat(-1) / coeff;
    for (const auto& [m, c] : rest.terms_) sol.terms_.emplace(m, c * inv);
    return sol;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += c.str();
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        out += "*" + param_name(i);
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
      }
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const ParamScalar& s) { return os << s.str(); }

  /// Builds a scalar from explicit terms (used by the JSON reader).
  static ParamScalar from_terms(const std::vector<std::pair<Monomial, GaussRat>>& terms) {
    ParamScalar r;
    for (auto [m, c] : terms) {
      trim(m);
      r.add_term(m, c);
    }
    return r;
  }

 private:
  static void trim(Monomial& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
  }

  void add_term(const Monomial& m, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  std::map<Monomial, GaussRat> terms_;
};

inline ParamScalar conj(const ParamScalar& s) { return s.conj(); }

}  // namespace crnf
