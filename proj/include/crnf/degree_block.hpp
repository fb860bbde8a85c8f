#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "crnf/exact_matrix.hpp"
#include "crnf/fischer.hpp"
#include "crnf/surface.hpp"

namespace crnf {

/// One real coordinate of the degree-T unknown block: Re or Im of g_{k,l}
/// (k + 2l = T) or of f_{k,l} (k + 2l = T - 1, k + l >= 2).
struct BlockUnknown {
  char series = 'g';  // 'g' or 'f'
  int k = 0;
  int l = 0;
  bool imaginary = false;

  std::string label() const {
    return std::string(imaginary ? "Im " : "Re ") + series + "_{" + std::to_string(k) + "," + std::to_string(l) + "}";
  }
};

/// A labelled real linear functional on the degree-T polynomials.
struct Functional {
  int chain_depth = 0;
  std::string label;
};

/// The linearized degree-T transformation operator
///   L_T(f, g) = g_T(z, Q) - 2 Re{ Q_z f_T(z, Q) },  Q_z = 2z,
/// acting on the real unknown block and landing in the real 2(T+1)-dimensional
/// space of complex homogeneous degree-T polynomials (coordinates from
/// real_coords). Everything is exact over the rationals.
struct DegreeBlock {
  int degree = 0;
  std::vector<BlockUnknown> unknowns;
  Matrix op;
  std::vector<std::size_t> image_columns;                 // pivot columns of op
  std::vector<std::vector<Rational>> image_basis;         // those columns
  std::vector<std::vector<Rational>> complement_basis;    // Fischer-orthogonal complement of the image
  std::vector<std::vector<Rational>> kernel_basis;        // in unknown coordinates
  std::vector<Rational> fischer_weights;                  // m! n! per real coordinate

  /// Chain normalization space: every harmonic layer of degree d > 2 is
  /// annihilated by C_d^* and conj(C_d)^*.
  std::vector<std::vector<Rational>> chain_basis;

  /// Real coordinates of the harmonic layers in the (H+^d, H-^d) bases,
  /// ordered by chain depth. A complete coordinate system on degree T.
  Matrix layer_coordinates;
  std::vector<Functional> layer_functionals;

  ImageSolver ortho_solver;  // on [op | complement_basis]
  ImageSolver chain_solver;  // on [op | chain_basis]

  std::size_t dim() const { return 2 * static_cast<std::size_t>(degree + 1); }

  /// Real Fischer pairing Re<u, v> in real coordinates.
  Rational fischer_real(const std::vector<Rational>& u, const std::vector<Rational>& v) const {
    Rational s;
    for (std::size_t i = 0; i < u.size(); ++i) s += fischer_weights[i] * u[i] * v[i];
    return s;
  }

  /// Polynomial obtained by applying op to an unknown vector.
  template <class S>
  BiPoly<S> apply_op(const std::vector<S>& x) const {
    return from_real_coords(matvec(op, x), degree);
  }

  /// Map tails carried by an unknown vector.
  template <class S>
  FormalMapT<S> as_map(const std::vector<S>& x, int truncation) const {
    FormalMapT<S> m{truncation, {}, {}};
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
      const auto& u = unknowns[j];
      S c = u.imaginary ? x[j] * S(GaussRat::i()) : x[j];
      (u.series == 'g' ? m.g : m.f).add_term(u.k, u.l, c);
    }
    return m;
  }

  /// Inverse of as_map on the block's unknowns.
  std::vector<Rational> unknowns_of(const FormalMap& m) const {
    std::vector<Rational> x;
    for (const auto& u : unknowns) {
      GaussRat c = (u.series == 'g' ? m.g : m.f).coeff(u.k, u.l);
      x.push_back(u.imaginary ? c.im() : c.re());
    }
    return x;
  }

  /// Whether the homogeneous degree-T polynomial is Fischer-orthogonal to the image.
  bool in_complement(const Poly& p) const {
    const auto v = real_coords(p, degree);
    std::vector<Rational> rv;
    for (const auto& c : v) rv.push_back(c.re());
    for (const auto& b : image_basis)
      if (sgn(fischer_real(b, rv)) != 0) return false;
    return true;
  }
};

namespace detail {

inline std::vector<BlockUnknown> block_unknowns(int t) {
  std::vector<BlockUnknown> out;
  auto push = [&](char s, int weight) {
    std::vector<Bidegree> exps;
    for (int l = 0; 2 * l <= weight; ++l) {
      const int k = weight - 2 * l;
      if (k + l >= 2) exps.push_back({k, l});
    }
    std::sort(exps.begin(), exps.end());
    for (const auto& e : exps) {
      out.push_back({s, e.m, e.n, false});
      out.push_back({s, e.m, e.n, true});
    }
  };
  push('g', t);
  push('f', t - 1);
  return out;
}

inline std::vector<Rational> to_rationals(const std::vector<GaussRat>& v) {
  std::vector<Rational> out;
  for (const auto& c : v) out.push_back(c.re());
  return out;
}

inline std::vector<Rational> unit(std::size_t n, std::size_t j) {
  std::vector<Rational> e(n);
  e[j] = 1;
  return e;
}

inline Poly real_basis_poly(int t, std::size_t j) {
  std::vector<GaussRat> v(2 * static_cast<std::size_t>(t + 1));
  v[j] = GaussRat(1);
  return from_real_coords(v, t);
}

inline Matrix append_columns(const Matrix& a, const std::vector<std::vector<Rational>>& cols) {
  Matrix out(a.rows(), a.cols() + cols.size());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, a.cols() + j) = cols[j][i];
  }
  return out;
}

inline DegreeBlock assemble_block(int t) {
  DegreeBlock b;
  b.degree = t;
  b.unknowns = block_unknowns(t);
  const std::size_t dim = b.dim();
  const Poly q = Poly::quadric();

  for (const auto& mon : monomials_of_degree(t)) {
    Rational w(factorial(mon.m) * factorial(mon.n));
    b.fischer_weights.push_back(w);
    b.fischer_weights.push_back(w);
  }

  // Column j is L_T evaluated on the j-th unit unknown.
  b.op = Matrix(dim, b.unknowns.size());
  for (std::size_t j = 0; j < b.unknowns.size(); ++j) {
    const auto& u = b.unknowns[j];
    const GaussRat c = u.imaginary ? GaussRat::i() : GaussRat(1);
    Poly qpow = Poly::constant(GaussRat(1));
    for (int i = 0; i < u.l; ++i) qpow = qpow * q;
    Poly col;
    if (u.series == 'g') {
      col = Poly::monomial(u.k, 0, c) * qpow;
    } else {
      const Poly x = Poly::monomial(u.k + 1, 0, GaussRat(2) * c) * qpow;
      col = -(x + conj_poly(x));
    }
    const auto v = to_rationals(real_coords(col, t));
    for (std::size_t i = 0; i < dim; ++i) b.op(i, j) = v[i];
  }

  b.image_columns = rref(b.op).pivots;
  for (auto j : b.image_columns) b.image_basis.push_back(b.op.column(j));
  b.kernel_basis = nullspace(b.op);

  // Complement: v with Re<image_i, v> = 0, i.e. op^T D v = 0.
  Matrix constraint(b.image_basis.size(), dim);
  for (std::size_t i = 0; i < b.image_basis.size(); ++i)
    for (std::size_t k = 0; k < dim; ++k) constraint(i, k) = b.image_basis[i][k] * b.fischer_weights[k];
  b.complement_basis = nullspace(constraint);

  // Layer coordinates and chain conditions, column by column on the real basis.
  const int layers = t / 2 + 1;
  std::vector<std::vector<Rational>> coord_cols, cond_cols;
  for (std::size_t j = 0; j < dim; ++j) {
    const Poly e = real_basis_poly(t, j);
    const auto hl = harmonic_layers(e, t);
    std::vector<Rational> coords, conds;
    for (int k = 0; k < layers; ++k) {
      const int d = t - 2 * k;
      const auto [alpha, beta] = harmonic_coords(hl[k], d);
      coords.push_back(alpha.re());
      coords.push_back(alpha.im());
      if (d > 0) {
        coords.push_back(beta.re());
        coords.push_back(beta.im());
      }
      if (d > 2) {
        const Poly c = harmonic_power(d);
        const GaussRat v1 = adjoint_apply(c, hl[k]).coeff(0, 0);
        const GaussRat v2 = adjoint_apply(conj_poly(c), hl[k]).coeff(0, 0);
        conds.insert(conds.end(), {v1.re(), v1.im(), v2.re(), v2.im()});
      }
    }
    coord_cols.push_back(std::move(coords));
    cond_cols.push_back(std::move(conds));
  }
  b.layer_coordinates = Matrix::from_columns(coord_cols, coord_cols.front().size());
  for (int k = 0; k < layers; ++k) {
    const int d = t - 2 * k;
    const std::string at = "depth " + std::to_string(k) + " (degree " + std::to_string(d) + ")";
    b.layer_functionals.push_back({k, "Re alpha " + at});
    b.layer_functionals.push_back({k, "Im alpha " + at});
    if (d > 0) {
      b.layer_functionals.push_back({k, "Re beta " + at});
      b.layer_functionals.push_back({k, "Im beta " + at});
    }
  }
  if (cond_cols.front().empty()) {
    for (std::size_t j = 0; j < dim; ++j) b.chain_basis.push_back(unit(dim, j));
  } else {
    b.chain_basis = nullspace(Matrix::from_columns(cond_cols, cond_cols.front().size()));
  }

  b.ortho_solver = ImageSolver(append_columns(b.op, b.complement_basis));
  b.chain_solver = ImageSolver(append_columns(b.op, b.chain_basis));
  return b;
}

}  // namespace detail

/// The degree-T block (T >= 3). Built once per process and shared.
inline const DegreeBlock& build_block(int t) {
  if (t < 3) throw DomainError("build_block: degree must be >= 3");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<DegreeBlock>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(t); it != cache.end()) return *it->second;
  }
  auto block = std::make_unique<DegreeBlock>(detail::assemble_block(t));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(t, std::move(block));
  return *it->second;
}

}  // namespace crnf
