#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cqnls/elliptic.hpp"
#include "cqnls/error.hpp"
#include "oracles.hpp"

using namespace cqnls;

TEST(Elliptic, CompleteIntegralsAtZero) {
  EXPECT_DOUBLE_EQ(complete_K(0.0), std::numbers::pi / 2);
  EXPECT_DOUBLE_EQ(complete_E(0.0), std::numbers::pi / 2);
  EXPECT_DOUBLE_EQ(complete_E(1.0), 1.0);
}

TEST(Elliptic, CompleteIntegralsMatchQuadrature) {
  for (double m : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99}) {
    const double k_ref = oracle::K(m);
    const double e_ref = oracle::E(m);
    EXPECT_NEAR(complete_K(m) / k_ref, 1.0, 1e-12) << "m = " << m;
    EXPECT_NEAR(complete_E(m) / e_ref, 1.0, 1e-12) << "m = " << m;
  }
  EXPECT_NEAR(complete_K(0.5), 1.8540746773013719, 1e-13);
  EXPECT_NEAR(complete_E(0.5), 1.3506438810476755, 1e-13);
}

TEST(Elliptic, KIncreasingAndDivergent) {
  EXPECT_GT(complete_K(0.99), complete_K(0.5));
  EXPECT_GT(complete_K(0.99), 3.0);
  double prev = complete_K(0.0);
  for (int i = 1; i < 100; ++i) {
    const double k = complete_K(i / 100.0);
    EXPECT_GT(k, prev);
    prev = k;
  }
  // K ~ log(4 / k') near m = 1
  const double mc = 1e-12;
  const double K = complete_K(EllipticModulus::from_complement(mc));
  EXPECT_NEAR(K, std::log(4.0 / std::sqrt(mc)), 1e-10);
}

TEST(Elliptic, DomainErrors) {
  EXPECT_THROW(complete_K(1.0), DomainError);
  EXPECT_THROW(complete_K(-0.1), DomainError);
  EXPECT_THROW(complete_E(1.5), DomainError);
  EXPECT_THROW(EllipticModulus::from_pair(0.3, 0.3), DomainError);
}

TEST(Elliptic, KDerivativeMatchesDifference) {
  for (double m : {0.05, 0.3, 0.7, 0.95}) {
    const double k = std::sqrt(m);
    const double h = 1e-6;
    const double fd = (complete_K((k + h) * (k + h)) - complete_K((k - h) * (k - h))) / (2 * h);
    const auto mod = EllipticModulus::from_parameter(m);
    EXPECT_NEAR(complete_K_dk(mod) / fd, 1.0, 1e-8);
    EXPECT_NEAR(complete_K_dk_over_k(mod) * k / fd, 1.0, 1e-8);
  }
  EXPECT_NEAR(complete_K_dk_over_k(EllipticModulus::from_parameter(0.0)),
              std::numbers::pi / 4, 1e-15);
}

TEST(Elliptic, JacobiSpecialValues) {
  for (double m : {0.0, 0.3, 0.9}) {
    const auto z = jacobi_sn_cn_dn(0.0, m);
    EXPECT_EQ(z.sn, 0.0);
    EXPECT_EQ(z.cn, 1.0);
    EXPECT_EQ(z.dn, 1.0);
    const auto q = jacobi_sn_cn_dn(complete_K(m), m);
    EXPECT_NEAR(q.sn, 1.0, 1e-14);
    EXPECT_NEAR(q.cn, 0.0, 1e-14);
    EXPECT_NEAR(q.dn, std::sqrt(1.0 - m), 1e-14);
  }
}

TEST(Elliptic, JacobiMatchesOde) {
  const auto ode = oracle::jacobi_ode(0.7, 0.5);
  const auto z = jacobi_sn_cn_dn(0.7, 0.5);
  EXPECT_NEAR(z.sn, ode[0], 1e-12);
  EXPECT_NEAR(z.cn, ode[1], 1e-12);
  EXPECT_NEAR(z.dn, ode[2], 1e-12);
  EXPECT_NEAR(z.sn * z.sn + z.cn * z.cn, 1.0, 1e-12);
  EXPECT_NEAR(z.dn * z.dn + 0.5 * z.sn * z.sn, 1.0, 1e-12);

  const auto far = oracle::jacobi_ode(5.3, 0.93, 20000);
  const auto zf = jacobi_sn_cn_dn(5.3, 0.93);
  EXPECT_NEAR(zf.sn, far[0], 1e-11);
  EXPECT_NEAR(zf.cn, far[1], 1e-11);
  EXPECT_NEAR(zf.dn, far[2], 1e-11);
}

TEST(Elliptic, PythagoreanIdentitiesRandom) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> um(0.0, 0.999);
  std::uniform_real_distribution<double> uu(-20.0, 20.0);
  for (int i = 0; i < 1000; ++i) {
    const double m = um(rng);
    const double u = uu(rng);
    const auto z = jacobi_sn_cn_dn(u, m);
    ASSERT_LE(std::abs(z.sn * z.sn + z.cn * z.cn - 1.0), 1e-12) << u << " " << m;
    ASSERT_LE(std::abs(z.dn * z.dn + m * z.sn * z.sn - 1.0), 1e-12) << u << " " << m;
  }
}

TEST(Elliptic, DegenerateLimits) {
  for (double u = -3.0; u <= 3.0; u += 0.25) {
    const auto lo = jacobi_sn_cn_dn(u, 1e-8);
    EXPECT_NEAR(lo.sn, std::sin(u), 1e-3);
    EXPECT_NEAR(lo.dn, 1.0, 1e-3);
    const auto hi = jacobi_sn_cn_dn(u, 1.0 - 1e-8);
    EXPECT_NEAR(hi.sn, std::tanh(u), 1e-3);
    EXPECT_NEAR(hi.dn, 1.0 / std::cosh(u), 1e-3);
  }
}

TEST(Elliptic, OddEvenSymmetry) {
  for (double u : {0.4, 1.7, 9.1}) {
    const auto p = jacobi_sn_cn_dn(u, 0.6);
    const auto n = jacobi_sn_cn_dn(-u, 0.6);
    EXPECT_DOUBLE_EQ(n.sn, -p.sn);
    EXPECT_DOUBLE_EQ(n.cn, p.cn);
    EXPECT_DOUBLE_EQ(n.dn, p.dn);
  }
}
