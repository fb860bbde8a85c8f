#pragma once

#include <string>
#include <utility>

#include "crnf/bipoly.hpp"

namespace crnf {

/// Graph w = Q(z, zbar) + sum a_{m,n} z^m zbar^n, 3 <= m + n <= truncation.
/// The quadratic part Q is implicit and never stored.
struct Surface {
  int truncation = 3;
  Poly coeffs;

  static Surface model(int truncation) { return {truncation, {}}; }

  void validate() const {
    if (truncation < 3) throw DomainError("surface truncation must be >= 3");
    for (const auto& [d, c] : coeffs.terms())
      if (d.total() < 3 || d.total() > truncation)
        throw DomainError("surface coefficient a_{" + std::to_string(d.m) + "," + std::to_string(d.n) +
                          "} outside 3 <= m+n <= truncation");
  }

  /// a_d, the homogeneous degree-d part of the tail.
  Poly part(int d) const { return homogeneous_component(coeffs, d); }

  friend bool operator==(const Surface&, const Surface&) = default;
};

/// (z', w') = (z + sum f_{k,l} z^k w^l, w + sum g_{k,l} z^k w^l), k + l >= 2.
/// Only the tails are stored; the exponent pair of each term is (k, l).
template <class S>
struct FormalMapT {
  int truncation = 3;
  BiPoly<S> f;
  BiPoly<S> g;

  static FormalMapT identity(int truncation) { return {truncation, {}, {}}; }

  void validate() const {
    if (truncation < 2) throw DomainError("map truncation must be >= 2");
    auto check = [](const BiPoly<S>& p, const char* name) {
      for (const auto& [d, c] : p.terms())
        if (d.total() < 2)
          throw DomainError(std::string("map term ") + name + "_{" + std::to_string(d.m) + "," +
                            std::to_string(d.n) + "} has k+l < 2");
    };
    check(f, "f");
    check(g, "g");
  }

  /// z + f_tail and w + g_tail as series in (z, w).
  BiPoly<S> f_full() const { return BiPoly<S>::x() + f; }
  BiPoly<S> g_full() const { return BiPoly<S>::y() + g; }

  /// Drops terms that cannot influence the graph below degree truncation + 1:
  /// f terms with k + 2l >= truncation and g terms with k + 2l > truncation.
  FormalMapT truncated() const {
    return {truncation, crnf::truncate(f, Grading::weighted(truncation - 1)),
            crnf::truncate(g, Grading::weighted(truncation))};
  }

  friend bool operator==(const FormalMapT&, const FormalMapT&) = default;
};

using FormalMap = FormalMapT<GaussRat>;

/// h = Q + a, so that w = h(z, zbar) on the surface.
inline Poly graph_series(const Surface& m) {
  return Poly::quadric() + truncate(m.coeffs, Grading::total(m.truncation));
}

template <class S>
struct GraphImage {
  BiPoly<S> z_image;
  BiPoly<S> w_image;
};

/// (f(z, h), g(z, h)) to total degree `bound` in (z, zbar).
template <class S>
GraphImage<S> eval_map_on_graph(const FormalMapT<S>& phi, const BiPoly<S>& h, int bound) {
  const Grading g = Grading::total(bound);
  const BiPoly<S> z = BiPoly<S>::x();
  BiPoly<S> zi = truncate(z + substitute(phi.f, z, h, g), g);
  BiPoly<S> wi = truncate(h + substitute(phi.g, z, h, g), g);
  return {std::move(zi), std::move(wi)};
}

/// Solves u(Z, conj Z) = z' for Z(z', zbar') to total degree `bound`, where
/// u = z + (terms of degree >= 2). Returns (Z, conj Z).
inline std::pair<Poly, Poly> invert_2d_jet(const Poly& u, int bound) {
  if (bound < 1) throw DomainError("invert_2d_jet: bound must be >= 1");
  const Poly z = Poly::x();
  if (!homogeneous_component(u, 0).is_zero() || homogeneous_component(u, 1) != z)
    throw DomainError("invert_2d_jet: linear part must be exactly z");
  const Grading g = Grading::total(bound);
  const Poly tail = truncate(u - z, g);
  Poly zz = z;
  // Each pass fixes one more degree.
  for (int it = 1; it < bound; ++it) zz = z - substitute(tail, zz, conj_poly(zz), g);
  return {zz, conj_poly(zz)};
}

/// The image surface phi(M), re-expressed as a graph over the new coordinate
/// z' by inverting z' = f(z, h(z, zbar)).
inline Surface push_forward(const Surface& m, const FormalMap& phi) {
  m.validate();
  phi.validate();
  if (phi.truncation < m.truncation) throw DomainError("push_forward: map truncation below surface truncation");
  const int n = m.truncation;
  const GraphImage<GaussRat> img = eval_map_on_graph(phi, graph_series(m), n);
  const auto [zz, zzb] = invert_2d_jet(img.z_image, n);
  const Poly w = substitute(img.w_image, zz, zzb, n);
  if (!homogeneous_component(w, 0).is_zero() || !homogeneous_component(w, 1).is_zero() ||
      homogeneous_component(w, 2) != Poly::quadric())
    throw ClassError("push_forward: image graph does not have quadratic part z^2 + zbar^2");
  Poly tail;
  for (const auto& [d, c] : w.terms())
    if (d.total() >= 3) tail.add_term(d.m, d.n, c);
  return {n, std::move(tail)};
}

/// g(z, h) - Q(f, conj f) - a'(f, conj f) with w = h(z, zbar), to total degree
/// `bound`. Vanishes exactly when phi maps M into the surface with tail `target`.
template <class S>
BiPoly<S> transform_residual(const Surface& m, const FormalMapT<S>& phi, const BiPoly<S>& target, int bound) {
  const Grading g = Grading::total(bound);
  const BiPoly<S> h = graph_series(m).template cast<S>();
  const GraphImage<S> img = eval_map_on_graph(phi, truncate(h, g), bound);
  const BiPoly<S> fb = conj_poly(img.z_image);
  BiPoly<S> rhs = mul_truncated(img.z_image, img.z_image, g) + mul_truncated(fb, fb, g);
  rhs += substitute(truncate(target, g), img.z_image, fb, g);
  return truncate(img.w_image - rhs, g);
}

inline Poly transform_residual(const Surface& m, const FormalMap& phi, const Surface& target, int bound) {
  return transform_residual<GaussRat>(m, phi, target.coeffs, bound);
}

/// psi o phi, truncated to the common order.
template <class S>
FormalMapT<S> compose(const FormalMapT<S>& psi, const FormalMapT<S>& phi) {
  const int n = std::min(psi.truncation, phi.truncation);
  const Grading g = Grading::weighted(n);
  const BiPoly<S> x = phi.f_full(), y = phi.g_full();
  FormalMapT<S> out{n, phi.f + substitute(psi.f, x, y, g), phi.g + substitute(psi.g, x, y, g)};
  return out.truncated();
}

}  // namespace crnf
