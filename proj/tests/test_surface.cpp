#include <gtest/gtest.h>

#include "crnf/crnf.hpp"
#include "oracle.hpp"

using namespace crnf;

namespace {

Poly z(int m, int n, GaussRat c = GaussRat(1)) { return Poly::monomial(m, n, c); }
GaussRat rat(long p, long q = 1) { return GaussRat(Rational(p, q)); }
const Poly Q = Poly::quadric();

FormalMap kernel_map(int n) {
  FormalMap m = FormalMap::identity(n);
  m.f.add_term(1, 1, GaussRat(1));
  m.g.add_term(0, 2, GaussRat(2));
  return m;
}

FormalMap small_random_map(Rng& rng, int n) {
  FormalMap m = FormalMap::identity(n);
  for (int k = 0; k <= 3; ++k)
    for (int l = 0; k + l <= 3; ++l) {
      if (k + l < 2) continue;
      if (rng.coin(1, 2)) m.f.add_term(k, l, rng.small_gauss());
      if (k + 2 * l >= 3 && rng.coin(1, 2)) m.g.add_term(k, l, rng.small_gauss());
    }
  return m.truncated();
}

}  // namespace

TEST(Graph, Examples) {
  EXPECT_EQ(graph_series(Surface::model(5)), Q);
  Surface s{4, {}};
  s.coeffs.add_term(3, 0, GaussRat(1));
  EXPECT_EQ(graph_series(s), Q + z(3, 0));
  Surface t{4, {}};
  t.coeffs.add_term(2, 1, GaussRat::i());
  EXPECT_EQ(graph_series(t), Q + z(2, 1, GaussRat::i()));
}

TEST(Surface, Validation) {
  Surface s{4, {}};
  s.coeffs.add_term(2, 0, GaussRat(1));
  EXPECT_THROW(s.validate(), DomainError);
  Surface t{4, {}};
  t.coeffs.add_term(3, 2, GaussRat(1));
  EXPECT_THROW(t.validate(), DomainError);
  EXPECT_THROW((Surface{2, {}}).validate(), DomainError);
}

TEST(Map, RejectsLinearTail) {
  FormalMap m = FormalMap::identity(4);
  m.f.add_term(0, 1, GaussRat(1));
  EXPECT_THROW(m.validate(), DomainError);
}

TEST(Eval, Examples) {
  const auto id = eval_map_on_graph(FormalMap::identity(4), Q, 4);
  EXPECT_EQ(id.z_image, z(1, 0));
  EXPECT_EQ(id.w_image, Q);

  FormalMap a = FormalMap::identity(4);
  a.f.add_term(1, 1, GaussRat(1));
  const auto ia = eval_map_on_graph(a, Q, 4);
  EXPECT_EQ(ia.z_image, z(1, 0) + z(1, 0) * Q);
  EXPECT_EQ(ia.w_image, Q);

  FormalMap b = FormalMap::identity(4);
  b.g.add_term(0, 2, GaussRat(1));
  const auto ib = eval_map_on_graph(b, Q, 4);
  EXPECT_EQ(ib.w_image, Q + Q * Q);
}

TEST(Invert, Examples) {
  EXPECT_EQ(invert_2d_jet(z(1, 0), 5).first, z(1, 0));

  const auto [zz, zb] = invert_2d_jet(z(1, 0) + z(2, 0), 3);
  EXPECT_EQ(zz, z(1, 0) - z(2, 0) + z(3, 0, rat(2)));
  EXPECT_EQ(zb, conj_poly(zz));
  // classical reversion: coefficients of the inverse of x + x^2 are
  // (-1)^(n-1) Catalan(n-1)
  const auto [z5, zb5] = invert_2d_jet(z(1, 0) + z(2, 0), 5);
  EXPECT_EQ(z5, z(1, 0) - z(2, 0) + z(3, 0, rat(2)) - z(4, 0, rat(5)) + z(5, 0, rat(14)));

  const auto [w2, wb2] = invert_2d_jet(z(1, 0) + z(1, 1), 2);
  EXPECT_EQ(w2, z(1, 0) - z(1, 1));
  const Poly u = z(1, 0) + z(1, 1);
  const Poly back = substitute(u, w2, wb2, 2);
  EXPECT_EQ(back, z(1, 0));

  EXPECT_THROW(invert_2d_jet(z(1, 0, rat(2)), 3), DomainError);
  EXPECT_THROW(invert_2d_jet(z(1, 0) + z(0, 1), 3), DomainError);
}

TEST(Invert, ContractOnRandomJets) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    Poly u = z(1, 0);
    for (int d = 2; d <= 5; ++d)
      for (const auto& b : monomials_of_degree(d))
        if (rng.coin(1, 2)) u.add_term(b.m, b.n, rng.small_gauss());
    const int bound = 6;
    const auto [zz, zb] = invert_2d_jet(u, bound);
    EXPECT_EQ(substitute(u, zz, zb, bound), z(1, 0));
  }
}

TEST(PushForward, Identity) {
  Surface s{5, {}};
  s.coeffs.add_term(3, 0, GaussRat(1));
  s.coeffs.add_term(2, 2, GaussRat(Rational(1, 3), Rational(2)));
  EXPECT_EQ(push_forward(s, FormalMap::identity(5)), s);
}

TEST(PushForward, KernelMapInjectsMinusQCubed) {
  const Surface img = push_forward(Surface::model(6), kernel_map(6));
  Poly expect = Poly() - Q * Q * Q;
  EXPECT_EQ(img.coeffs, expect);
  EXPECT_EQ(img.coeffs.coeff(6, 0), rat(-1));
  EXPECT_EQ(img.coeffs.coeff(4, 2), rat(-3));
  EXPECT_EQ(img.coeffs.coeff(2, 4), rat(-3));
  EXPECT_EQ(img.coeffs.coeff(0, 6), rat(-1));
  // the oracle: Q(1+Q)^2 - (Q + 2Q^2), re-graphed
  const oracle::P q = oracle::quadric();
  const oracle::P lhs = q * oracle::power(oracle::mono(0, 0) + q, 2);
  const oracle::P rhs = q + oracle::scale(q * q, {2, 0});
  EXPECT_EQ(oracle::to_poly(oracle::truncate(lhs - rhs, 6)), Q * Q * Q);
}

TEST(PushForward, WSquared) {
  FormalMap m = FormalMap::identity(4);
  m.g.add_term(0, 2, GaussRat(1));
  const Surface img = push_forward(Surface::model(4), m);
  EXPECT_EQ(img.coeffs, Q * Q);
}

TEST(PushForward, LeavingTheClassIsRejected) {
  FormalMap m = FormalMap::identity(4);
  m.g.add_term(2, 0, GaussRat(1));
  EXPECT_THROW(push_forward(Surface::model(4), m), ClassError);
}

TEST(Residual, Examples) {
  Surface s{5, {}};
  s.coeffs.add_term(2, 1, GaussRat(Rational(1, 2)));
  EXPECT_TRUE(transform_residual(s, FormalMap::identity(5), s, 5).is_zero());

  const FormalMap k = kernel_map(6);
  const Surface img = push_forward(Surface::model(6), k);
  EXPECT_TRUE(transform_residual(Surface::model(6), k, img, 6).is_zero());
  EXPECT_EQ(transform_residual(Surface::model(6), k, Surface::model(6), 6), Poly() - Q * Q * Q);
}

TEST(PushForward, Functoriality) {
  Rng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + trial % 3;
    Surface m = random_surface(rng, n);
    const FormalMap phi = small_random_map(rng, n);
    const FormalMap psi = small_random_map(rng, n);
    const Surface lhs = push_forward(push_forward(m, phi), psi);
    const Surface rhs = push_forward(m, compose(psi, phi));
    EXPECT_EQ(lhs, rhs) << trial;
  }
}

TEST(PushForward, ResidualSoundnessAndClass) {
  Rng rng(7);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 3 + trial % 4;
    const Surface m = random_surface(rng, n);
    const FormalMap phi = gen_random_map(rng, n, false);
    const Surface img = push_forward(m, phi);
    EXPECT_NO_THROW(img.validate());
    EXPECT_TRUE(transform_residual(m, phi, img, n).is_zero()) << trial;
  }
}

TEST(Compose, WithIdentity) {
  Rng rng(4);
  const FormalMap phi = small_random_map(rng, 5);
  EXPECT_EQ(compose(FormalMap::identity(5), phi), phi);
  EXPECT_EQ(compose(phi, FormalMap::identity(5)), phi);
}
