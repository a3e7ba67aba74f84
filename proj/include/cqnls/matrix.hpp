#ifndef CQNLS_MATRIX_HPP
#define CQNLS_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace cqnls {

/// Dense square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {a_.data() + i * n_, n_};
  }

  double frobenius_norm() const noexcept;
  double max_abs() const noexcept;
  double symmetry_defect() const noexcept;  // max |a_ij - a_ji|

  std::vector<double> apply(std::span<const double> v) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

struct EigenDecomposition {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
  int sweeps = 0;
};

/// Full eigendecomposition of a real symmetric matrix by cyclic Jacobi
/// rotations. Vectors are orthonormal; each is signed so that its
/// largest-magnitude entry (first one on ties) is positive.
/// Throws ContractError if the input is asymmetric beyond 1e-10.
EigenDecomposition sym_eig(const Matrix& m);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace cqnls

#endif  // CQNLS_MATRIX_HPP
