#ifndef CQNLS_ELLIPTIC_HPP
#define CQNLS_ELLIPTIC_HPP

namespace cqnls {

/// Squared modulus m = k^2 of the Jacobi elliptic functions.
///
/// Both m and its complement 1 - m are stored. Near m = 1 the complement is
/// the quantity that carries the information (K ~ log(4/k')), so callers that
/// know 1 - m to full relative precision should construct through
/// from_complement() instead of forming m first.
class EllipticModulus {
 public:
  /// Requires 0 <= m <= 1; throws DomainError otherwise.
  static EllipticModulus from_parameter(double m);
  /// Requires 0 <= mc <= 1; m is taken as 1 - mc.
  static EllipticModulus from_complement(double mc);
  /// Both halves known independently (e.g. from factored root gaps); they
  /// must sum to 1 within a few ulps.
  static EllipticModulus from_pair(double m, double mc);

  double m() const noexcept { return m_; }
  double complement() const noexcept { return mc_; }
  double k() const noexcept;
  double k_prime() const noexcept;

 private:
  EllipticModulus(double m, double mc) : m_(m), mc_(mc) {}
  double m_;
  double mc_;
};

struct CompleteIntegrals {
  double K;
  double E;
  /// sum_{n>=1} 2^(n-1) c_n^2 from the AGM ladder, so that
  /// E = K (1 - m/2 - tail) and E - (1-m) K = K (m/2 - tail) without
  /// cancellation at small m.
  double tail;
};

/// K(m) and E(m) from a single arithmetic-geometric-mean run.
/// Requires m < 1 (K diverges at m = 1).
CompleteIntegrals complete_integrals(const EllipticModulus& mod);

double complete_K(const EllipticModulus& mod);
double complete_E(const EllipticModulus& mod);
double complete_K(double m);
double complete_E(double m);

/// dK/dk = (E - k'^2 K) / (k k'^2), for 0 < m < 1.
double complete_K_dk(const EllipticModulus& mod);

/// (dK/dk) / k, finite as m -> 0 (limit pi/4).
double complete_K_dk_over_k(const EllipticModulus& mod);

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

/// sn, cn, dn at real argument u via the descending Landen (AGM) scheme.
JacobiTriple jacobi_sn_cn_dn(double u, const EllipticModulus& mod);
JacobiTriple jacobi_sn_cn_dn(double u, double m);

}  // namespace cqnls

#endif  // CQNLS_ELLIPTIC_HPP
