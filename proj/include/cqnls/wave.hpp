#ifndef CQNLS_WAVE_HPP
#define CQNLS_WAVE_HPP

#include <cstddef>
#include <vector>

#include "cqnls/elliptic.hpp"

// Dnoidal standing waves phi of  -phi'' + omega phi - phi^3 - phi^5 = 0.
//
// With psi = phi^2 the first integral
//   (phi')^2 = -phi^6/3 - phi^4/2 + omega phi^2 + B
// becomes (psi')^2 = (4/3) psi (psi - a1)(psi - a2)(a3 - psi) with roots
// a1 < 0 < a2 < a3 of P(s) = -s^4 - 3s^3/2 + 3 omega s^2 + 3 B s. Everything
// here is parametrised by a3 = phi(0)^2 (called alpha) and omega.

namespace cqnls {

/// Closed-form lower frequency bound,
/// (sqrt(L^2 + 16 pi)/L + 8 pi / L^2 - 1) / 8.
double omega_threshold(double L);

/// Exact infimum of the frequencies that admit a dnoidal wave of period L,
/// obtained by inverting period_infimum(). Always above omega_threshold().
double omega_existence_threshold(double L);

/// Infimum of the dnoidal period at fixed omega (the equilibrium limit),
/// 2 pi / ((4w+1)^(1/4) sqrt(sqrt(4w+1) - 1)).
double period_infimum(double omega);

struct AlphaBounds {
  double lo;  // (sqrt(1 + 4w) - 1) / 2, double root a2 = a3 (k -> 0)
  double hi;  // (sqrt(48w + 9) - 3) / 4, a2 -> 0 (k -> 1)
};

AlphaBounds alpha_bounds(double omega);

/// Interior point (alpha, omega) of the admissible set, with the distances to
/// both ends of alpha_bounds(omega) held separately so that a2 and 1 - m keep
/// full relative precision next to the upper end.
class AdmissiblePoint {
 public:
  /// Rejects alpha outside the open interval (DomainError) and within 1e-9
  /// of either end (DegenerateError).
  static AdmissiblePoint from_alpha(double alpha, double omega);
  /// alpha = hi - gap. Only the lower (m -> 0) end is treated as degenerate.
  static AdmissiblePoint from_upper_gap(double gap, double omega);

  double omega() const noexcept { return omega_; }
  double alpha() const noexcept { return alpha_; }
  double gap_lo() const noexcept { return gap_lo_; }
  double gap_hi() const noexcept { return gap_hi_; }

  /// q(alpha) = 16w - 4 alpha^2 - 4 alpha + 3 (positive on the admissible set).
  double q() const noexcept;
  double alpha1() const noexcept;
  double alpha2() const noexcept;
  /// alpha - a2 and alpha - a1, formed without subtracting nearby roots.
  double alpha3_minus_alpha2() const noexcept;
  double alpha3_minus_alpha1() const noexcept;
  double alpha2_minus_alpha1() const noexcept;
  EllipticModulus modulus() const;
  /// B = -alpha w + alpha^3/3 + alpha^2/2, in factored form.
  double integration_constant() const noexcept;

 private:
  AdmissiblePoint(double omega, double alpha, double gap_lo, double gap_hi)
      : omega_(omega), alpha_(alpha), gap_lo_(gap_lo), gap_hi_(gap_hi) {}
  double omega_;
  double alpha_;
  double gap_lo_;
  double gap_hi_;
};

struct QuarticRoots {
  double alpha1;
  double alpha2;
};

/// a1, a2 from a3 via the closed forms with sqrt(3 q(a3)). Accepts the closed
/// interval alpha_bounds(omega) so that the degenerate limits can be probed.
QuarticRoots roots_from_alpha3(double alpha3, double omega);

/// m = k^2 from (alpha, omega):
/// (sqrt3 a sqrt q - 12 w + 6 a^2 + 9 a) / (2 sqrt3 a sqrt q).
double modulus_from(double alpha3, double omega);

/// m = k^2 from the three roots: -a1 (a3 - a2) / (a3 (a2 - a1)).
double modulus_from_roots(double alpha1, double alpha2, double alpha3);

/// Period map Psi(alpha, w) = sqrt8 3^(1/4) K(m) / (sqrt(alpha) q^(1/4)).
double period_map(double alpha3, double omega);
double period_map(const AdmissiblePoint& pt);

/// Same period through the roots: 2 sqrt3 K / sqrt(a3 (a2 - a1)).
double period_map_from_roots(double alpha3, double omega);

/// dPsi/dalpha from the closed form with dK/dk and dk/dalpha.
double period_map_dalpha(double alpha3, double omega);
double period_map_dalpha(const AdmissiblePoint& pt);

/// dk/dalpha = r(alpha) / (k sqrt3 q^(3/2) alpha^2),
/// r = 6a^3 + 9a^2 - 18 w a + 48 w^2 + 9 w.
double modulus_dalpha(double alpha3, double omega);

/// Partial dk/domega at fixed alpha: -sqrt3 (2a + 8w + 3) / (k a q^(3/2)).
double modulus_domega(double alpha3, double omega);

/// alpha sqrt(3q) (16w - 8a^2 - 6a + 3) / (2 r(alpha)). Values below one are
/// what makes dPsi/dalpha positive.
double monotonicity_ratio(double alpha3, double omega);

/// B from a3 (literal cubic) and from a1; the two agree on any admissible point.
double integration_constant(double alpha3, double omega);
double integration_constant_from_alpha1(double alpha1, double omega);

/// B at the double root (alpha = lo): (1 - (4w+1)^(3/2) + 6w) / 12.
double integration_constant_floor(double omega);

/// Unique admissible point with Psi = L. Throws NoSolutionError when
/// L <= period_infimum(omega).
AdmissiblePoint solve_period(double L, double omega);
double solve_alpha3(double L, double omega);

/// Period at fixed omega as a function of B in (floor(omega), 0).
double period_of_B(double B, double omega);
/// Admissible point whose integration constant is B.
AdmissiblePoint point_of_B(double B, double omega);

/// Sech-type solitary wave, the L -> infinity limit of the dnoidal family.
double solitary_profile(double omega, double x);

struct WaveParams {
  double L = 0.0;
  double omega = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
  double m = 0.0;
  double m_complement = 1.0;
  double g = 0.0;
  double beta_sq = 0.0;
  double B = 0.0;

  EllipticModulus modulus() const;
  /// Multiplier of x inside dn and sn: 2 / (sqrt3 g).
  double argument_scale() const noexcept;
  double quarter_period() const;  // K(m)

  /// Closed-form profile sqrt(a3) dn(z) / sqrt(1 + beta^2 sn(z)^2), z = scale x.
  /// The argument is reduced to [-L/2, L/2] first.
  double profile_at(double x) const;
  /// Analytic derivative of profile_at.
  double profile_derivative_at(double x) const;
};

WaveParams make_wave_params(double L, const AdmissiblePoint& pt);

struct VietaDefects {
  double sum;          // |a1 + a2 + a3 + 3/2|
  double pair_sum;     // |a1 a2 + a1 a3 + a2 a3 + 3 w|
  double product;      // |a1 a2 a3 - 3 B|
};

VietaDefects vieta_defects(const WaveParams& wp);

struct Profile {
  double L = 0.0;
  std::size_t N = 0;
  std::vector<double> x;
  std::vector<double> phi;
  std::vector<double> dphi;
};

struct Wave {
  WaveParams params;
  Profile profile;
};

/// Solves for the wave of period L and frequency omega and samples it on N
/// points (power of two, N >= 64). phi' is the spectral derivative.
Wave build_wave(double L, double omega, std::size_t N);

/// Samples an existing parameter set. Same grid rules as build_wave.
Profile sample_profile(const WaveParams& wp, std::size_t N);

struct Residuals {
  double r_quad;  // max |phi'^2 + phi^6/3 + phi^4/2 - w phi^2 - B|
  double r_ode;   // max |-phi'' + w phi - phi^3 - phi^5|
};

Residuals quadrature_residual(const Profile& prof, const WaveParams& wp);

struct ProfileDefects {
  double min_value;       // positivity requires > 0
  double evenness;        // max |phi_j - phi_{N-j}|
  double peak;            // |phi_0^2 - a3|
  double trough;          // |phi_{N/2}^2 - a2|
  std::size_t argmax;
  std::size_t argmin;
};

ProfileDefects profile_defects(const Profile& prof, const WaveParams& wp);

}  // namespace cqnls

#endif  // CQNLS_WAVE_HPP
