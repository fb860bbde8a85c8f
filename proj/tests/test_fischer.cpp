#include <gtest/gtest.h>

#include "crnf/crnf.hpp"
#include "oracle.hpp"

using namespace crnf;

namespace {

Poly z(int m, int n, GaussRat c = GaussRat(1)) { return Poly::monomial(m, n, c); }
GaussRat rat(long p, long q = 1) { return GaussRat(Rational(p, q)); }
const Poly Q = Poly::quadric();

Poly random_homogeneous(Rng& rng, int d) {
  Poly p;
  for (const auto& b : monomials_of_degree(d)) p.add_term(b.m, b.n, rng.small_gauss());
  return p;
}

}  // namespace

TEST(Divide, CubicMatchesOracle) {
  const auto s = fischer_divide(z(3, 0));
  EXPECT_EQ(s.quotient, z(1, 0, rat(3, 4)));
  EXPECT_EQ(s.remainder, z(3, 0, rat(1, 4)) + z(1, 2, rat(-3, 4)));
  const auto [a, r] = oracle::divide(oracle::mono(3, 0), 3);
  EXPECT_EQ(s.quotient, oracle::to_poly(a));
  EXPECT_EQ(s.remainder, oracle::to_poly(r));
  EXPECT_TRUE(oracle::trace(r).empty());
}

TEST(Divide, QuarticMatchesOracle) {
  const auto s = fischer_divide(z(4, 0));
  EXPECT_EQ(s.quotient, z(2, 0, rat(7, 8)) + z(0, 2, rat(-1, 8)));
  EXPECT_EQ(s.remainder, z(4, 0, rat(1, 8)) + z(2, 2, rat(-3, 4)) + z(0, 4, rat(1, 8)));
  const auto [a, r] = oracle::divide(oracle::mono(4, 0), 4);
  EXPECT_EQ(s.quotient, oracle::to_poly(a));
  EXPECT_EQ(s.remainder, oracle::to_poly(r));
  EXPECT_EQ(Q * s.quotient + s.remainder, z(4, 0));
}

TEST(Divide, Quadric) {
  const auto s = fischer_divide(Q);
  EXPECT_EQ(s.quotient, Poly::constant(GaussRat(1)));
  EXPECT_TRUE(s.remainder.is_zero());
}

TEST(Divide, LowDegreeConvention) {
  const auto s = fischer_divide(z(1, 0, rat(5)));
  EXPECT_TRUE(s.quotient.is_zero());
  EXPECT_EQ(s.remainder, z(1, 0, rat(5)));
  EXPECT_TRUE(fischer_divide(Poly()).remainder.is_zero());
}

TEST(Divide, RejectsNonHomogeneous) { EXPECT_THROW(fischer_divide(z(3, 0) + z(2, 0)), DomainError); }

TEST(Divide, ComplexCoefficients) {
  const Poly p = z(2, 1, GaussRat(Rational(1, 3), Rational(-2))) + z(0, 3, GaussRat::i());
  const auto s = fischer_divide(p);
  const auto [a, r] = oracle::divide(oracle::from_poly(p), 3);
  EXPECT_EQ(s.quotient, oracle::to_poly(a));
  EXPECT_EQ(s.remainder, oracle::to_poly(r));
}

TEST(HarmonicPower, Closed) {
  EXPECT_EQ(harmonic_power(3), z(3, 0, rat(1, 4)) + z(1, 2, rat(-3, 4)));
  EXPECT_EQ(harmonic_power(4), z(4, 0, rat(1, 8)) + z(2, 2, rat(-3, 4)) + z(0, 4, rat(1, 8)));
  EXPECT_THROW(harmonic_power(2), DomainError);
  EXPECT_THROW(harmonic_power(0), DomainError);
}

TEST(HarmonicPower, MatchesOracleUpTo10) {
  for (int k = 3; k <= 10; ++k) {
    const auto [a, r] = oracle::divide(oracle::mono(k, 0), k);
    EXPECT_EQ(harmonic_power(k), oracle::to_poly(r)) << k;
    EXPECT_TRUE(trace(harmonic_power(k)).is_zero());
  }
}

TEST(Chain, QuadricSquared) {
  const auto ch = chain_decompose(Q * Q);
  ASSERT_EQ(ch.remainders.size(), 2u);
  EXPECT_TRUE(ch.remainders[0].is_zero());
  EXPECT_TRUE(ch.remainders[1].is_zero());
  EXPECT_EQ(ch.final_quotient(), Poly::constant(GaussRat(1)));
  EXPECT_EQ(ch.reassemble(), Q * Q);
}

TEST(Chain, Cubic) {
  const auto ch = chain_decompose(z(3, 0));
  ASSERT_EQ(ch.remainders.size(), 1u);
  EXPECT_EQ(ch.remainders[0], harmonic_power(3));
  EXPECT_EQ(ch.final_quotient(), z(1, 0, rat(3, 4)));
  EXPECT_EQ(ch.reassemble(), z(3, 0));
}

TEST(Chain, LinearInputHasNoStages) {
  const auto ch = chain_decompose(z(1, 0));
  EXPECT_TRUE(ch.remainders.empty());
  EXPECT_EQ(ch.final_quotient(), z(1, 0));
  EXPECT_EQ(ch.reassemble(), z(1, 0));
}

TEST(Chain, TraceFreeInput) {
  const Poly h = harmonic_power(5);
  const auto ch = chain_decompose(h);
  ASSERT_EQ(ch.remainders.size(), 1u);
  EXPECT_EQ(ch.remainders[0], h);
  EXPECT_TRUE(ch.final_quotient().is_zero());
}

TEST(Chain, ReassemblyAndTraceFreeLayers) {
  Rng rng(11);
  for (int d = 1; d <= 10; ++d) {
    const Poly p = random_homogeneous(rng, d);
    const auto ch = chain_decompose(p);
    EXPECT_EQ(ch.reassemble(), p) << d;
    for (const auto& r : ch.remainders) EXPECT_TRUE(trace(r).is_zero());
  }
}

TEST(NormalSpace, Examples) {
  EXPECT_FALSE(in_normal_space(harmonic_power(3), Strategy::chain));
  EXPECT_TRUE(in_normal_space(Poly(), Strategy::chain));
  EXPECT_TRUE(in_normal_space(Poly(), Strategy::ortho));
  // z zbar is already trace-free, so it is its own remainder.
  const auto s = fischer_divide(z(1, 1));
  EXPECT_TRUE(s.quotient.is_zero());
  EXPECT_EQ(s.remainder, z(1, 1));
  EXPECT_TRUE(in_normal_space(z(1, 1), Strategy::chain));
  EXPECT_TRUE(in_normal_space(z(2, 0), Strategy::chain));
}

TEST(NormalSpace, OrthoDelegatesToBlock) {
  EXPECT_FALSE(in_normal_space(z(3, 0), Strategy::ortho));
  EXPECT_TRUE(in_normal_space(z(2, 1, rat(7)), Strategy::ortho));
  EXPECT_THROW(in_normal_space(z(1, 1), Strategy::ortho), DomainError);
}

TEST(ComputeW, Examples) {
  const Poly w = compute_W(z(3, 0));
  EXPECT_EQ(w, z(3, 0, rat(3, 4)) + z(1, 2, rat(3, 4)));
  EXPECT_EQ(w, z(1, 0, rat(3, 4)) * Q);
  const Poly c3 = harmonic_power(3);
  EXPECT_TRUE(fischer_pair(c3, w).is_zero());
  EXPECT_TRUE(fischer_pair(conj_poly(c3), w).is_zero());
  const auto oc = oracle::pair(oracle::from_poly(c3), oracle::from_poly(w));
  EXPECT_TRUE(oracle::zero(oc));
  EXPECT_TRUE(compute_W(c3).is_zero());
  EXPECT_EQ(compute_W(z(1, 0) * Q), z(1, 0) * Q);
  EXPECT_THROW(compute_W(z(4, 0)), DomainError);
}

TEST(ComputeW, IdempotentOnQLinear) {
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const Poly p = Q * random_homogeneous(rng, 1);
    EXPECT_EQ(compute_W(p), p);
  }
}

TEST(HarmonicBasis, OrthogonalWithKnownNorm) {
  for (int d = 1; d <= 8; ++d) {
    const Poly hp = harmonic_basis_element(d, true), hm = harmonic_basis_element(d, false);
    EXPECT_TRUE(trace(hp).is_zero());
    EXPECT_TRUE(fischer_pair(hp, hm).is_zero());
    EXPECT_EQ(fischer_pair(hp, hp), GaussRat(Rational(factorial(d) * (Integer(1) << d))));
    const auto [a, b] = harmonic_coords(hp * GaussRat(3) + hm * GaussRat::i(), d);
    EXPECT_EQ(a, GaussRat(3));
    EXPECT_EQ(b, GaussRat::i());
  }
}

TEST(HarmonicLayers, FixedCountAndReassembly) {
  Rng rng(3);
  for (int d = 0; d <= 9; ++d) {
    const Poly p = random_homogeneous(rng, d);
    const auto layers = harmonic_layers(p, d);
    EXPECT_EQ(layers.size(), static_cast<std::size_t>(d / 2 + 1));
    Poly sum, qk = Poly::constant(GaussRat(1));
    for (const auto& h : layers) {
      sum += qk * h;
      qk = qk * Q;
    }
    EXPECT_EQ(sum, p) << d;
  }
}

TEST(InChainSpace, DegreeMatchedConditions) {
  // Degree-3 remainders must be orthogonal to C3 and its conjugate; the
  // degree-3 trace-free space is spanned by exactly those two, so only
  // Q-multiples pass.
  EXPECT_TRUE(in_chain_space(z(1, 0) * Q));
  EXPECT_FALSE(in_chain_space(z(0, 3)));
  // Degree <= 2 layers carry no C-condition.
  EXPECT_TRUE(in_chain_space(z(2, 0) - z(0, 2)));
}
