#ifndef CQNLS_HILL_HPP
#define CQNLS_HILL_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cqnls/matrix.hpp"
#include "cqnls/wave.hpp"

// Linearised operators around the standing wave,
//   L1 = -d^2/dx^2 + w - 3 phi^2 - 5 phi^4   (kernel phi')
//   L2 = -d^2/dx^2 + w - phi^2 - phi^4       (kernel phi)
// discretised by Fourier collocation on the profile grid.

namespace cqnls {

enum class OperatorKind { L1, L2 };
enum class Parity { even, odd, mixed };

const char* to_string(OperatorKind k) noexcept;
const char* to_string(Parity p) noexcept;

struct HillOperatorSpec {
  OperatorKind kind = OperatorKind::L1;
  WaveParams wp;
  Profile prof;
};

std::vector<double> hill_potential(const HillOperatorSpec& spec);

/// -D2 + diag(potential) for the Fourier second-derivative matrix of period L.
Matrix collocation_matrix(std::span<const double> potential, double L);
Matrix collocation_matrix(const HillOperatorSpec& spec);

/// Identifies the wave a report was computed from.
struct WaveTag {
  double L = 0.0;
  double omega = 0.0;
  double alpha3 = 0.0;
  std::size_t N = 0;
  bool operator==(const WaveTag&) const = default;
};

struct SpectrumReport {
  OperatorKind kind = OperatorKind::L1;
  WaveTag wave;
  double tol_zero = 0.0;
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;  // unit Euclidean norm
  std::vector<Parity> parity;
  std::vector<double> parity_defect;
  std::vector<int> sign_changes;
  int n_negative = 0;
  std::optional<std::size_t> zero_index;
  int zero_multiplicity = 0;
  /// Distance between the zero eigenvector and the normalised kernel element
  /// (phi' for L1, phi for L2), minimised over sign. Infinite if no zero.
  double zero_match_error = 0.0;
  double max_residual = 0.0;  // max ||Mv - lv|| / ||M||_F
};

double default_tol_zero(double omega);

SpectrumReport spectrum_report(const HillOperatorSpec& spec, double tol_zero);
SpectrumReport spectrum_report(const HillOperatorSpec& spec);

struct CombinedCounts {
  int full_negative = 0;
  int full_zero = 0;
  int even_negative = 0;
  int even_zero = 0;
  /// Operator carrying the zero modes that survive the even restriction.
  std::vector<OperatorKind> even_zero_carriers;
};

/// Counts for diag(L1, L2) in the full periodic space and on even functions.
CombinedCounts combined_counts(const SpectrumReport& r1, const SpectrumReport& r2);

/// Cyclic sign changes of a grid function, ignoring entries below
/// rel_floor * max|v|.
int sign_changes(std::span<const double> v, double rel_floor = 1e-8);

/// Classifies v under j -> (N - j) mod N. defect is the smaller of the even
/// and odd defects (max-norm); mixed when it exceeds tol.
Parity classify_parity(std::span<const double> v, double tol, double* defect = nullptr);

struct ThetaResult {
  double theta = 0.0;
  double phi_dd0 = 0.0;        // phi''(0) = w phi0 - phi0^3 - phi0^5
  double y_end = 0.0;          // y(L)
  double dy_end = 0.0;         // y'(L)
  double wronskian_defect = 0.0;  // max |phi' y' - phi'' y - 1|
  std::size_t steps = 0;
};

/// theta from -y'' + (w - 3 phi^2 - 5 phi^4) y = 0, y(0) = -1/phi''(0),
/// y'(0) = 0, integrated over one period by classical RK4 with step <= dt.
ThetaResult theta_constant(const WaveParams& wp, double dt);
ThetaResult theta_constant(const WaveParams& wp, const Profile& prof, double dt);

}  // namespace cqnls

#endif  // CQNLS_HILL_HPP
