#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include "crnf/degree_block.hpp"
#include "crnf/surface.hpp"

namespace crnf {

/// Seeded generator for property trials. mt19937_64 has a standard-mandated
/// output sequence and the range reduction below is done by hand, so a seed
/// yields the same draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return lo + static_cast<long>(v % span);
  }

  /// p/q with |p| <= 9 and 1 <= q <= 9.
  Rational small_rational() {
    Rational r(uniform(-9, 9), static_cast<unsigned long>(uniform(1, 9)));
    r.canonicalize();
    return r;
  }

  GaussRat small_gauss() { return {small_rational(), small_rational()}; }

  bool coin(long num, long den) { return uniform(0, den - 1) < num; }

 private:
  std::mt19937_64 engine_;
};

/// Random map of the normal-form shape, one degree block at a time for
/// T = 3..truncation. With kernel_free, every block is orthogonally projected
/// (Euclidean, in real unknown coordinates) off ker L_T.
inline FormalMap gen_random_map(Rng& rng, int truncation, bool kernel_free) {
  if (truncation < 3) throw DomainError("gen_random_map: truncation must be >= 3");
  FormalMap out = FormalMap::identity(truncation);
  for (int t = 3; t <= truncation; ++t) {
    const DegreeBlock& block = build_block(t);
    std::vector<Rational> v(block.unknowns.size());
    for (auto& c : v) c = rng.small_rational();
    if (kernel_free && !block.kernel_basis.empty()) {
      const Matrix k = Matrix::from_columns(block.kernel_basis, v.size());
      const Matrix kt = k.transpose();
      const auto coeffs = matvec(inverse(kt * k), matvec(kt, v));
      const auto along = matvec(k, coeffs);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= along[i];
    }
    std::vector<GaussRat> gv(v.begin(), v.end());
    const FormalMap part = block.as_map(gv, truncation);
    out.f += part.f;
    out.g += part.g;
  }
  return out;
}

inline FormalMap gen_random_map(std::uint64_t seed, int truncation, bool kernel_free) {
  Rng rng(seed);
  return gen_random_map(rng, truncation, kernel_free);
}

/// Random surface with every coefficient 3 <= m+n <= truncation drawn
/// (about a third left zero). a_{2,1} is forced nonzero so that the cubic
/// normal form, and hence W, does not vanish.
inline Surface random_surface(Rng& rng, int truncation) {
  Surface s{truncation, {}};
  for (int d = 3; d <= truncation; ++d)
    for (const auto& b : monomials_of_degree(d))
      if (rng.coin(2, 3)) s.coeffs.add_term(b.m, b.n, rng.small_gauss());
  while (s.coeffs.coeff(2, 1).is_zero()) s.coeffs.set(2, 1, rng.small_gauss());
  return s;
}

}  // namespace crnf
