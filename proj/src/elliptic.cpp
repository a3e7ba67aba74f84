#include "cqnls/elliptic.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cqnls/error.hpp"

namespace cqnls {

namespace {

constexpr double kAgmTolerance = 1e-15;
constexpr int kMaxAgmSteps = 64;

}  // namespace

EllipticModulus EllipticModulus::from_parameter(double m) {
  if (!(m >= 0.0 && m <= 1.0)) {
    throw DomainError("elliptic parameter m must lie in [0, 1], got " +
                      std::to_string(m));
  }
  return EllipticModulus(m, 1.0 - m);
}

EllipticModulus EllipticModulus::from_complement(double mc) {
  if (!(mc >= 0.0 && mc <= 1.0)) {
    throw DomainError("complementary parameter 1 - m must lie in [0, 1], got " +
                      std::to_string(mc));
  }
  return EllipticModulus(1.0 - mc, mc);
}

EllipticModulus EllipticModulus::from_pair(double m, double mc) {
  if (!(m >= 0.0 && m <= 1.0 && mc >= 0.0 && mc <= 1.0) ||
      std::abs(m + mc - 1.0) > 8.0 * std::numeric_limits<double>::epsilon()) {
    throw DomainError("inconsistent elliptic parameter pair m = " + std::to_string(m) +
                      ", 1 - m = " + std::to_string(mc));
  }
  return EllipticModulus(m, mc);
}

double EllipticModulus::k() const noexcept { return std::sqrt(m_); }
double EllipticModulus::k_prime() const noexcept { return std::sqrt(mc_); }

CompleteIntegrals complete_integrals(const EllipticModulus& mod) {
  if (mod.complement() <= 0.0) {
    throw DomainError("complete elliptic integral K diverges at m = 1");
  }
  // a_0 = 1, b_0 = k', c_0 = k. E/K = 1 - sum 2^(n-1) c_n^2.
  double a = 1.0;
  double b = mod.k_prime();
  double c = mod.k();
  double tail = 0.0;
  double weight = 0.5;
  for (int step = 0; step < kMaxAgmSteps; ++step) {
    if (std::abs(a - b) <= kAgmTolerance * a) break;
    const double a_next = 0.5 * (a + b);
    // c_{n+1} = (a_n - b_n)/2 = c_n^2 / (4 a_{n+1}), the second form has no
    // cancellation.
    c = c * c / (4.0 * a_next);
    b = std::sqrt(a * b);
    a = a_next;
    weight *= 2.0;
    tail += weight * c * c;
  }
  const double K = std::numbers::pi / (2.0 * a);
  return {K, K * (1.0 - 0.5 * mod.m() - tail), tail};
}

double complete_K(const EllipticModulus& mod) {
  return complete_integrals(mod).K;
}

double complete_E(const EllipticModulus& mod) {
  if (mod.complement() == 0.0) return 1.0;
  return complete_integrals(mod).E;
}

double complete_K(double m) {
  if (m >= 1.0) {
    throw DomainError("complete elliptic integral K diverges for m >= 1");
  }
  return complete_K(EllipticModulus::from_parameter(m));
}

double complete_E(double m) {
  return complete_E(EllipticModulus::from_parameter(m));
}

double complete_K_dk(const EllipticModulus& mod) {
  if (mod.complement() <= 0.0) throw DegenerateError("dK/dk diverges at m = 1");
  return complete_K_dk_over_k(mod) * mod.k();
}

double complete_K_dk_over_k(const EllipticModulus& mod) {
  if (mod.complement() <= 0.0) throw DegenerateError("dK/dk diverges at m = 1");
  const auto ki = complete_integrals(mod);
  if (mod.m() == 0.0) return std::numbers::pi / 4.0;
  // (E - k'^2 K) / (k^2 k'^2) = K (1/2 - tail/m) / k'^2
  return ki.K * (0.5 - ki.tail / mod.m()) / mod.complement();
}

JacobiTriple jacobi_sn_cn_dn(double u, const EllipticModulus& mod) {
  const double mc = mod.complement();
  if (mc == 0.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  if (mod.m() == 0.0) {
    return {std::sin(u), std::cos(u), 1.0};
  }

  // Descending Landen: build the AGM ladder, then walk the amplitude back.
  std::array<double, kMaxAgmSteps + 1> a{};
  std::array<double, kMaxAgmSteps + 1> c{};
  a[0] = 1.0;
  c[0] = mod.k();
  double b = mod.k_prime();
  int n = 0;
  while (n < kMaxAgmSteps &&
         c[n] > std::numeric_limits<double>::epsilon() * a[n]) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = c[n] * c[n] / (4.0 * a[n + 1]);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int j = n; j > 0; --j) {
    phi = 0.5 * (phi + std::asin(c[j] / a[j] * std::sin(phi)));
  }
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  // dn^2 = 1 - m sn^2 = cn^2 + (1 - m) sn^2, free of cancellation.
  const double dn = std::sqrt(cn * cn + mc * sn * sn);
  return {sn, cn, dn};
}

JacobiTriple jacobi_sn_cn_dn(double u, double m) {
  return jacobi_sn_cn_dn(u, EllipticModulus::from_parameter(m));
}

}  // namespace cqnls
