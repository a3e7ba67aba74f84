#include "cqnls/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "cqnls/error.hpp"

namespace cqnls {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

fftw_complex* as_fftw(const Complex* p) {
  return reinterpret_cast<fftw_complex*>(const_cast<Complex*>(p));
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

struct FourierGrid::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

FourierGrid::FourierGrid(std::size_t n, double period)
    : n_(n), period_(period), plans_(std::make_unique<Plans>()) {
  if (n < 2 || n % 2 != 0) {
    throw ConfigError("Fourier grid size must be even and at least 2");
  }
  if (!(period > 0.0)) throw ConfigError("grid period must be positive");

  xi_.resize(n);
  const double base = 2.0 * std::numbers::pi / period;
  for (std::size_t j = 0; j < n; ++j) {
    const auto signed_j = j <= n / 2 ? static_cast<double>(j)
                                     : static_cast<double>(j) - static_cast<double>(n);
    xi_[j] = base * signed_j;
  }

  std::vector<Complex> scratch_in(n), scratch_out(n);
  const int size = static_cast<int>(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  plans_->forward = fftw_plan_dft_1d(size, as_fftw(scratch_in.data()),
                                     as_fftw(scratch_out.data()), FFTW_FORWARD, flags);
  plans_->backward = fftw_plan_dft_1d(size, as_fftw(scratch_in.data()),
                                      as_fftw(scratch_out.data()), FFTW_BACKWARD, flags);
  if (plans_->forward == nullptr || plans_->backward == nullptr) {
    throw NumericError("FFTW failed to create a plan");
  }
}

namespace {

void destroy_plans(fftw_plan& forward, fftw_plan& backward) {
  std::lock_guard lock(planner_mutex());
  if (forward) fftw_destroy_plan(forward);
  if (backward) fftw_destroy_plan(backward);
  forward = nullptr;
  backward = nullptr;
}

}  // namespace

FourierGrid::~FourierGrid() {
  if (plans_) destroy_plans(plans_->forward, plans_->backward);
}

FourierGrid::FourierGrid(FourierGrid&&) noexcept = default;

FourierGrid& FourierGrid::operator=(FourierGrid&& other) noexcept {
  if (this != &other) {
    if (plans_) destroy_plans(plans_->forward, plans_->backward);
    n_ = other.n_;
    period_ = other.period_;
    xi_ = std::move(other.xi_);
    plans_ = std::move(other.plans_);
  }
  return *this;
}

std::vector<double> FourierGrid::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t j = 0; j < n_; ++j) x[j] = node(j);
  return x;
}

void FourierGrid::forward(std::span<const Complex> in, std::span<Complex> out) const {
  fftw_execute_dft(plans_->forward, as_fftw(in.data()), as_fftw(out.data()));
}

void FourierGrid::backward(std::span<const Complex> in, std::span<Complex> out) const {
  fftw_execute_dft(plans_->backward, as_fftw(in.data()), as_fftw(out.data()));
}

std::vector<Complex> FourierGrid::derivative(std::span<const Complex> f, int order) const {
  if (f.size() != n_) throw ContractError("field size does not match the grid");
  std::vector<Complex> spectrum(n_);
  forward(f, spectrum);
  const Complex i_unit(0.0, 1.0);
  const double inv_n = 1.0 / static_cast<double>(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    Complex factor = inv_n;
    for (int p = 0; p < order; ++p) factor *= i_unit * xi_[j];
    spectrum[j] *= factor;
  }
  if (order % 2 == 1) spectrum[n_ / 2] = 0.0;
  std::vector<Complex> out(n_);
  backward(spectrum, out);
  return out;
}

std::vector<double> FourierGrid::derivative(std::span<const double> f, int order) const {
  std::vector<Complex> tmp(f.begin(), f.end());
  const auto d = derivative(std::span<const Complex>(tmp), order);
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = d[j].real();
  return out;
}

double periodic_trapezoid(std::span<const double> f, double period) {
  double sum = 0.0;
  for (double v : f) sum += v;
  return sum * period / static_cast<double>(f.size());
}

}  // namespace cqnls
