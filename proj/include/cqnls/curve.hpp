#ifndef CQNLS_CURVE_HPP
#define CQNLS_CURVE_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cqnls/wave.hpp"

// The fixed-period family omega -> phi_omega and the quantities differentiated
// along it.

namespace cqnls {

struct CurveSample {
  static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

  double omega = kUnset;
  double L = kUnset;
  std::size_t N = 0;
  double alpha1 = kUnset;
  double alpha2 = kUnset;
  double alpha3 = kUnset;
  double B = kUnset;
  double m = kUnset;
  double m_complement = kUnset;
  double K = kUnset;
  double E = kUnset;
  double phi_max = kUnset;
  double phi_min = kUnset;

  double mass = kUnset;        // int phi^2
  double p4 = kUnset;          // int phi^4
  double p6 = kUnset;          // int phi^6
  double inv2 = kUnset;        // int 1/phi^2, elliptic closed form
  double inv2_quad = kUnset;   // int 1/phi^2, trapezoid
  double dphi2 = kUnset;       // int phi'^2
  double dphi2_over_phi2 = kUnset;  // int phi'^2 / phi^2

  double dmass_domega = kUnset;
  double d2_dd = kUnset;       // d''(w) = dmass/dw / 2

  std::optional<std::string> error;
  bool ok() const noexcept { return !error.has_value(); }
};

/// Closed form of int_0^L 1/phi^2 in terms of the roots and E/K.
double inverse_square_integral(const WaveParams& wp);

CurveSample curve_point(double L, double omega, std::size_t N);

/// One sample per omega, in input order. Failing points carry an error
/// message; the sweep continues. Derivative fields use centred differences
/// over successful neighbours (one-sided at the ends).
std::vector<CurveSample> sample_curve(double L, std::span<const double> omegas,
                                      std::size_t N, unsigned jobs = 1);

struct SampleInvariants {
  double energy_identity;   // 2w M2 - 3/2 M4 - 4/3 M6 + B L, relative
  double inverse_identity;  // M2/2 + 2/3 M4 + B inv2, relative
  double inv2_mismatch;     // |inv2_quad - inv2| / inv2
  bool positive;            // all integrals > 0, p6 < p4 max(phi^2)
  bool above_trough;        // phi >= sqrt(a2) > 0 on the grid
};

SampleInvariants sample_invariants(const CurveSample& s);

double default_step(double omega);

struct DerivativeAudit {
  double L = 0.0;
  double omega = 0.0;
  double h = 0.0;
  double alpha3 = 0.0;

  double dLambda = 0.0;
  double dk = 0.0;            // total dk/dw along the curve
  double dB = 0.0;
  double dalpha1 = 0.0;
  double dalpha2 = 0.0;
  double dk_partial_fd = 0.0;      // dk/dw at fixed alpha = Lambda(w)
  double dk_partial_closed = 0.0;  // closed form at the same point
  double dk_partial_rel_err = 0.0;
  double margin = 0.0;        // w - Lambda^2 - Lambda

  bool dLambda_positive() const noexcept { return dLambda > 0.0; }
  bool dk_negative() const noexcept { return dk < 0.0; }
  bool dB_negative() const noexcept { return dB < 0.0; }
  bool dalpha1_positive() const noexcept { return dalpha1 > 0.0; }
  bool dalpha2_negative() const noexcept { return dalpha2 < 0.0; }
  bool dk_closed_form_matches() const noexcept { return dk_partial_rel_err <= 1e-5; }
  bool dk_closed_form_negative() const noexcept { return dk_partial_closed < 0.0; }
  bool margin_positive() const noexcept { return margin > 0.0; }
};

DerivativeAudit derivative_audit(double L, double omega, double h);

/// (mass(w+h) - mass(w-h)) / (4h).
double d2d_direct(double L, double omega, double h, std::size_t N = 256);

struct IdentityEstimate {
  double d2 = 0.0;
  double term_inv2 = 0.0;    // -3/4 B' inv2
  double term_length = 0.0;  // -B' L
  double term_dinv2 = 0.0;   // -3/4 B inv2'
  double dB = 0.0;
  double dinv2 = 0.0;
  double alpha1 = 0.0;
  double dalpha1 = 0.0;
  /// -B' + 3/4 - a1' (a1/2 + 3/8)
  double R = 0.0;
  /// a1^-1 d/dk[(K - E)/K] dk/dw with dk/dw the total derivative
  double third_term = 0.0;
  /// d/dw [E / (K a2)]
  double dE_over_K_alpha2 = 0.0;
};

/// d''(w) from the identity (2w + 3/8) M2' = -3/4 B' inv2 - B' L - 3/4 B inv2',
/// inv2 by its closed form and derivatives by centred differences.
IdentityEstimate d2d_identity(double L, double omega, double h);

struct IdentityResiduals {
  double mass_from_moments;  // 1/2 M4' + 2/3 M6' = M2
  double virial;             // 1/2 int phi'^2 + w/2 M2 - 1/2 M4 - 1/2 M6 = 0
  double mass_derivative;    // 2w M2' = 1/2 M4' - B' L
  double log_derivative;     // -int phi'^2/phi^2 + w L - M2 - M4 = 0
  double max() const noexcept;
};

/// Residuals relative to the largest term of each identity. The three
/// samples must be consecutive with uniform spacing.
IdentityResiduals identity_audit(const CurveSample& sample, const CurveSample& prev,
                                 const CurveSample& next);

/// E(k)/K(k) as a function of the parameter m.
double e_over_k(double m);

}  // namespace cqnls

#endif  // CQNLS_CURVE_HPP
