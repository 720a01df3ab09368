#include "gdrazin/instance_gen.hpp"
#include "gdrazin/pierce.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using gdrazin::GMatrix;

namespace {

// p = s diag(1, 1, 0, 0) s^-1 with a non-orthogonal s.
GMatrix skew_projector() {
  const GMatrix s{{1, 1, 0, 2}, {0, 1, 1, 0}, {0, 0, 1, 1}, {1, 0, 0, 1}};
  const GMatrix d{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
  return s * d * gdrazin::inverse(s);
}

} // namespace

TEST(Pierce, DecomposeRecomposes) {
  const GMatrix p = skew_projector();
  const GMatrix q = GMatrix::identity(4) - p;
  const GMatrix a{{1, 2, 0, -1}, {3, 0, 1, 1}, {0, 1, 1, 2}, {2, 2, 0, 1}};
  const auto blk = gdrazin::decompose(a, p);
  EXPECT_EQ(blk.recompose(), a);
  EXPECT_TRUE(gdrazin::in_corner(blk.a11, p, p));
  EXPECT_TRUE(gdrazin::in_corner(blk.a12, p, q));
  EXPECT_TRUE(gdrazin::in_corner(blk.a21, q, p));
  EXPECT_TRUE(gdrazin::in_corner(blk.a22, q, q));
}

TEST(Pierce, DecomposeRejectsNonIdempotent) {
  EXPECT_THROW(gdrazin::decompose(GMatrix::identity(2), GMatrix{{2, 0}, {0, 0}}), gdrazin::NotIdempotentError);
}

TEST(Pierce, CornerCoordinatesRoundTrip) {
  const GMatrix p = skew_projector();
  const auto cc = gdrazin::corner_coordinates(p);
  EXPECT_EQ(cc.rank(), 2u);
  EXPECT_EQ(cc.lift(GMatrix::identity(2)), p);
  const GMatrix x = p * GMatrix{{1, 2, 0, -1}, {3, 0, 1, 1}, {0, 1, 1, 2}, {2, 2, 0, 1}} * p;
  EXPECT_EQ(cc.lift(cc.compress(x)), x);
}

TEST(Pierce, CornerDrazinProperties) {
  const GMatrix p = skew_projector();
  const GMatrix base{{0, 1, 0, 0}, {0, 0, 0, 0}, {1, 0, 2, 0}, {0, 0, 0, 1}};
  for (const GMatrix &raw : {base, GMatrix::identity(4), GMatrix(4, 4), base * base + base}) {
    const GMatrix x = p * raw * p;
    const auto d = gdrazin::corner_drazin(x, p);
    EXPECT_EQ(d.ad, p * d.ad * p);
    EXPECT_EQ(x * d.ad, d.ad * x);
    EXPECT_EQ(d.ad * x * d.ad, d.ad);
    EXPECT_TRUE(gdrazin::is_nilpotent(GMatrix(x - x * x * d.ad)));
    EXPECT_EQ(d.api, p - x * d.ad);
    EXPECT_EQ(d.ad, oracle::cline_drazin(x));
  }
}

TEST(Pierce, CornerIndexAndMembership) {
  const GMatrix p{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}};
  const GMatrix nil{{0, 1, 0}, {0, 0, 0}, {0, 0, 0}};
  EXPECT_EQ(gdrazin::corner_index(nil, p), 2u);
  EXPECT_EQ(gdrazin::corner_index(p, p), 0u);
  EXPECT_THROW(gdrazin::corner_drazin(GMatrix::identity(3), p), gdrazin::CornerMembershipError);
  EXPECT_EQ(gdrazin::corner_drazin(GMatrix(3, 3), GMatrix(3, 3)).ad, GMatrix(3, 3));
}

TEST(Pierce, TriangularMatchesDrazin) {
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const std::size_t k = 1 + seed % (n - 1);
      const auto t = gdrazin::gen_triangular(n, k, seed);
      const GMatrix x = t.a_blk + t.b_blk + t.c_blk;
      gdrazin::TruncationOrders orders;
      const GMatrix got = gdrazin::lemma11_triangular_drazin(t.a_blk, t.b_blk, t.c_blk, t.p, {}, &orders);
      EXPECT_EQ(got, oracle::cline_drazin(x)) << "n=" << n << " seed=" << seed;
      EXPECT_EQ(gdrazin::lemma11_triangular_drazin(t.a_blk, t.b_blk, t.c_blk, t.p, {2}), got);
      EXPECT_FALSE(orders.empty());
    }
}

TEST(Pierce, TriangularSimpleBlocks) {
  // x = [[2,0],[1,0]] with p = e11: a = 2, b = 0, c = 1, so x^d = [[1/2,0],[1/4,0]].
  const GMatrix p{{1, 0}, {0, 0}};
  const GMatrix got = gdrazin::lemma11_triangular_drazin(GMatrix{{2, 0}, {0, 0}}, GMatrix(2, 2),
                                                         GMatrix{{0, 0}, {1, 0}}, p);
  const gdrazin::GaussianRational half(mpq_class(1, 2)), quarter(mpq_class(1, 4));
  EXPECT_EQ(got, GMatrix({{half, 0}, {quarter, 0}}));
}

TEST(Pierce, TriangularRejectsMisplacedBlocks) {
  const GMatrix p{{1, 0}, {0, 0}};
  const GMatrix e12{{0, 1}, {0, 0}};
  EXPECT_THROW(gdrazin::lemma11_triangular_drazin(p, GMatrix(2, 2), e12, p), gdrazin::CornerMembershipError);
  EXPECT_THROW(gdrazin::lemma11_triangular_drazin(e12, GMatrix(2, 2), GMatrix(2, 2), p),
               gdrazin::CornerMembershipError);
  EXPECT_THROW(gdrazin::lemma11_triangular_drazin(p, p, GMatrix(2, 2), GMatrix{{1, 1}, {1, 1}}),
               gdrazin::NotIdempotentError);
}
