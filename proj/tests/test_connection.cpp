#include <cmath>

#include <gtest/gtest.h>

#include "wqft/connection.hpp"

namespace {

using wqft::Band;

constexpr Band kExactD0 = {295.0 / 56, -356.0 / 105, 92.0 / 105, -4.0 / 35, -3.0 / 560};
constexpr Band kExactP0 = {0.0, 272.0 / 365, -53.0 / 365, 16.0 / 1095, 1.0 / 2920};

const wqft::ConnectionTables& quadrature() {
  static const auto t =
      wqft::quadrature_tables(wqft::cascade_evaluate(wqft::daubechies_filters(3), 12));
  return t;
}

TEST(Connection, PublishedValuesVerbatim) {
  const auto d0 = wqft::connection_d0(6);
  EXPECT_DOUBLE_EQ(d0.published[0], 5.2576013450);
  EXPECT_DOUBLE_EQ(d0.published[4], -5.3243362257e-3);
  const auto p = wqft::connection_p();
  EXPECT_DOUBLE_EQ(p.p0_at(1), 0.745203);
  EXPECT_DOUBLE_EQ(p.p00_at(1), -1.32599);
  EXPECT_DOUBLE_EQ(p.p0_at(0), 0.0);
  EXPECT_DOUBLE_EQ(p.p00_at(0), 0.0);
}

TEST(Connection, RefinementSolutionIsRational) {
  const auto& t = wqft::default_refinement_tables();
  for (int m = 0; m <= 4; ++m) {
    EXPECT_NEAR(t.d0[m], kExactD0[m], 1e-12) << "D0 m=" << m;
    EXPECT_NEAR(t.p0[m], kExactP0[m], 1e-12) << "P0 m=" << m;
  }
}

TEST(Connection, BandSymmetries) {
  const auto& t = wqft::default_refinement_tables();
  for (int m = -6; m <= 6; ++m) {
    EXPECT_EQ(t.d0_at(m), t.d0_at(-m));
    EXPECT_EQ(t.p0_at(m), -t.p0_at(-m));
    EXPECT_EQ(t.p00_at(m), -t.p00_at(-m));
    if (std::abs(m) > 4) {
      EXPECT_EQ(t.d0_at(m), 0.0);
      EXPECT_EQ(t.p00_at(m), 0.0);
    }
  }
}

TEST(Connection, MomentConditions) {
  const auto& t = wqft::default_refinement_tables();
  double d_sum = 0.0, d_second = 0.0, p_first = 0.0;
  for (int m = -4; m <= 4; ++m) {
    d_sum += t.d0_at(m);
    d_second += m * m * t.d0_at(m);
    p_first += m * t.p0_at(m);
  }
  EXPECT_NEAR(d_sum, 0.0, 1e-12);
  EXPECT_NEAR(d_second, -2.0, 1e-12);
  EXPECT_NEAR(p_first, 1.0, 1e-12);
}

TEST(Connection, PublishedDerivativeBandIsNotExactlyBalanced) {
  // The printed D0 digits do not sum to zero; assembling with them gaps the
  // massless chain, which is why assembly defaults to the refinement band.
  const auto p = wqft::published_tables();
  double sum = 0.0;
  for (int m = -4; m <= 4; ++m) sum += p.d0_at(m);
  EXPECT_GT(std::abs(sum), 1e-3);
}

TEST(Connection, QuadratureAgreesWithRefinement) {
  const auto& exact = wqft::default_refinement_tables();
  const auto& q = quadrature();
  for (int m = 0; m <= 4; ++m) {
    EXPECT_NEAR(q.d0[m], exact.d0[m], 5e-6) << "D0 m=" << m;
    EXPECT_NEAR(q.p0[m], exact.p0[m], 5e-6) << "P0 m=" << m;
    EXPECT_NEAR(q.p00[m], exact.p00[m], 5e-6) << "P00 m=" << m;
  }
}

TEST(Connection, PublishedMomentumBandsAgreeWithRationals) {
  const auto p = wqft::published_tables();
  for (int m = 0; m <= 4; ++m) EXPECT_NEAR(p.p0[m], kExactP0[m], 5e-6) << "m=" << m;
}

}  // namespace
