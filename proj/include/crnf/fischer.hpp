#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "crnf/bipoly.hpp"
#include "crnf/exact_matrix.hpp"

namespace crnf {

/// P = Q*A + R with tr(R) = 0.
template <class S>
struct FischerSplit {
  BiPoly<S> quotient;
  BiPoly<S> remainder;
};

namespace detail {

/// Inverse of the map A -> tr(Q*A) on homogeneous degree-(p-2) coefficient
/// vectors. The map has integer entries, so it acts on complex vectors
/// coefficientwise.
inline const Matrix& division_inverse(int p) {
  static std::mutex mu;
  static std::map<int, Matrix> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(p); it != cache.end()) return it->second;
  const auto mons = monomials_of_degree(p - 2);
  const std::size_t n = mons.size();
  Matrix m(n, n);
  const Poly q = Poly::quadric();
  for (std::size_t j = 0; j < n; ++j) {
    Poly image = trace(q * Poly::monomial(mons[j].m, mons[j].n));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = image.coeff(mons[i]).re();
  }
  // Singular here would mean tr(Q*.) is not a bijection, which cannot happen for Q.
  return cache.emplace(p, inverse(m)).first->second;
}

template <class S>
int require_homogeneous(const BiPoly<S>& p, const char* what) {
  if (!p.is_homogeneous()) throw DomainError(std::string(what) + ": input must be homogeneous");
  return p.degree();
}

}  // namespace detail

/// Fischer division by Q. Inputs of degree < 2 return (0, P).
template <class S>
FischerSplit<S> fischer_divide(const BiPoly<S>& p) {
  const int deg = detail::require_homogeneous(p, "fischer_divide");
  if (deg < 2) return {BiPoly<S>(), p};
  const auto mons = monomials_of_degree(deg - 2);
  const BiPoly<S> t = trace(p);
  std::vector<S> rhs;
  rhs.reserve(mons.size());
  for (const auto& b : mons) rhs.push_back(t.coeff(b));
  const std::vector<S> sol = matvec(detail::division_inverse(deg), rhs);
  BiPoly<S> a;
  for (std::size_t j = 0; j < mons.size(); ++j) a.add_term(mons[j].m, mons[j].n, sol[j]);
  BiPoly<S> r = p - BiPoly<S>::quadric() * a;
  if (!trace(r).is_zero()) throw InternalError("fischer_divide: remainder is not trace-free");
  return {std::move(a), std::move(r)};
}

/// C_k, the trace-free remainder of z^k (k > 2). Memoized.
inline Poly harmonic_power(int k) {
  if (k <= 2) throw DomainError("harmonic_power: defined for k > 2 only");
  static std::mutex mu;
  static std::map<int, Poly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(k); it != cache.end()) return it->second;
  }
  Poly c = fischer_divide(Poly::monomial(k, 0)).remainder;
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(k, std::move(c)).first->second;
}

/// Iterated division P_k = Q*P_{k+1} + R_{k+1}, P_0 = P, stopping once the
/// quotient has degree < 2 (the zero polynomial included).
template <class S>
struct ChainDecomposition {
  int degree = 0;
  std::vector<BiPoly<S>> quotients;   // P_1, ..., P_K
  std::vector<BiPoly<S>> remainders;  // R_1, ..., R_K
  BiPoly<S> last;                     // P_K (P itself when K = 0)

  BiPoly<S> final_quotient() const { return last; }

  /// R_1 + Q R_2 + ... + Q^{K-1} R_K + Q^K P_K.
  BiPoly<S> reassemble() const {
    BiPoly<S> sum, qpow = BiPoly<S>::constant(S(1));
    const BiPoly<S> q = BiPoly<S>::quadric();
    for (const auto& r : remainders) {
      sum += qpow * r;
      qpow = qpow * q;
    }
    return sum + qpow * last;
  }
};

template <class S>
ChainDecomposition<S> chain_decompose(const BiPoly<S>& p) {
  const int deg = detail::require_homogeneous(p, "chain_decompose");
  ChainDecomposition<S> out;
  out.degree = deg;
  BiPoly<S> cur = p;
  while (cur.degree() >= 2) {
    FischerSplit<S> s = fischer_divide(cur);
    out.remainders.push_back(std::move(s.remainder));
    out.quotients.push_back(s.quotient);
    cur = std::move(s.quotient);
  }
  out.last = std::move(cur);
  return out;
}

/// Harmonic layers of a homogeneous degree-p polynomial at nominal degrees
/// p, p-2, ..., p mod 2: P = sum_k Q^k H_k with every H_k trace-free. Unlike
/// chain_decompose the number of layers depends only on p.
template <class S>
std::vector<BiPoly<S>> harmonic_layers(const BiPoly<S>& p, int degree) {
  std::vector<BiPoly<S>> layers;
  BiPoly<S> cur = p;
  for (int d = degree; d >= 0; d -= 2) {
    if (d < 2) {
      layers.push_back(cur);
      break;
    }
    FischerSplit<S> s = fischer_divide(cur);
    layers.push_back(std::move(s.remainder));
    cur = std::move(s.quotient);
  }
  return layers;
}

/// The two null directions H+ = z + i zbar and H- = z - i zbar. The powers
/// H+^d, H-^d span the trace-free polynomials of degree d >= 1 and are
/// Fischer-orthogonal with squared norm d! 2^d.
inline Poly harmonic_basis_element(int d, bool plus) {
  Poly lin = Poly::monomial(1, 0) + Poly::monomial(0, 1, plus ? GaussRat::i() : -GaussRat::i());
  Poly out = Poly::constant(GaussRat(1));
  for (int k = 0; k < d; ++k) out = out * lin;
  return out;
}

/// Coordinates (alpha, beta) of a trace-free degree-d polynomial in the basis
/// (H+^d, H-^d); for d == 0 only alpha is meaningful.
template <class S>
std::pair<S, S> harmonic_coords(const BiPoly<S>& h, int d) {
  if (d == 0) return {h.coeff(0, 0), S()};
  const GaussRat norm(Rational(factorial(d) * (Integer(1) << d)));
  const GaussRat inv = GaussRat(1) / norm;
  auto pair_with = [&](bool plus) {
    return fischer_pair(harmonic_basis_element(d, plus).template cast<S>(), h) * S(inv);
  };
  return {pair_with(true), pair_with(false)};
}

/// True when every chain remainder R of degree d > 2 satisfies
/// C_d^*(R) = 0 and conj(C_d)^*(R) = 0 (trace-freeness holds by construction).
template <class S>
bool in_chain_space(const BiPoly<S>& p) {
  if (p.is_zero()) return true;
  const ChainDecomposition<S> chain = chain_decompose(p);
  for (std::size_t k = 0; k < chain.remainders.size(); ++k) {
    const int d = chain.degree - 2 * static_cast<int>(k);
    if (d <= 2) continue;
    const Poly c = harmonic_power(d);
    if (!adjoint_apply(c, chain.remainders[k]).is_zero()) return false;
    if (!adjoint_apply(conj_poly(c), chain.remainders[k]).is_zero()) return false;
  }
  return true;
}

/// W = Q*A where a3 = Q*A + R is the Fischer split of the cubic part; W == 0
/// exactly when a3 lies in the trace-free cubics.
inline Poly compute_W(const Poly& a3) {
  if (!a3.is_homogeneous() || (!a3.is_zero() && a3.degree() != 3))
    throw DomainError("compute_W: expects a homogeneous cubic");
  if (a3.is_zero()) return {};
  return Poly::quadric() * fischer_divide(a3).quotient;
}

}  // namespace crnf
