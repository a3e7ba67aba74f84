#ifndef CQNLS_SPECTRAL_HPP
#define CQNLS_SPECTRAL_HPP

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace cqnls {

using Complex = std::complex<double>;

bool is_power_of_two(std::size_t n) noexcept;

/// Uniform periodic grid x_j = j L / N with FFT-based spectral operators.
///
/// Plans are built once per grid. Executing transforms is thread-safe;
/// construction and destruction serialise on a process-wide planner lock.
class FourierGrid {
 public:
  FourierGrid(std::size_t n, double period);
  ~FourierGrid();
  FourierGrid(const FourierGrid&) = delete;
  FourierGrid& operator=(const FourierGrid&) = delete;
  FourierGrid(FourierGrid&&) noexcept;
  FourierGrid& operator=(FourierGrid&&) noexcept;

  std::size_t size() const noexcept { return n_; }
  double period() const noexcept { return period_; }
  double spacing() const noexcept { return period_ / static_cast<double>(n_); }
  double node(std::size_t j) const noexcept { return static_cast<double>(j) * spacing(); }
  std::vector<double> nodes() const;

  /// Signed angular wavenumbers xi_j = 2 pi j / L in FFT order.
  std::span<const double> wavenumbers() const noexcept { return xi_; }

  /// Unnormalised forward / backward DFT (backward(forward(f)) = N f).
  void forward(std::span<const Complex> in, std::span<Complex> out) const;
  void backward(std::span<const Complex> in, std::span<Complex> out) const;

  /// Spectral derivative of the given order. Odd orders zero the Nyquist
  /// coefficient so real input gives real output.
  std::vector<Complex> derivative(std::span<const Complex> f, int order) const;
  std::vector<double> derivative(std::span<const double> f, int order) const;

 private:
  std::size_t n_;
  double period_;
  std::vector<double> xi_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

/// Periodic trapezoid rule: (L/N) sum f_j.
double periodic_trapezoid(std::span<const double> f, double period);

/// Index of the mirror node under x -> -x on the periodic grid.
inline std::size_t mirror_index(std::size_t j, std::size_t n) noexcept {
  return (n - j) % n;
}

}  // namespace cqnls

#endif  // CQNLS_SPECTRAL_HPP
