#include "cqnls/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cqnls/error.hpp"

namespace cqnls {

double Matrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double Matrix::max_abs() const noexcept {
  double s = 0.0;
  for (double v : a_) s = std::max(s, std::abs(v));
  return s;
}

double Matrix::symmetry_defect() const noexcept {
  double d = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      d = std::max(d, std::abs((*this)(i, j) - (*this)(j, i)));
    }
  }
  return d;
}

std::vector<double> Matrix::apply(std::span<const double> v) const {
  if (v.size() != n_) throw ContractError("vector length does not match the matrix");
  std::vector<double> out(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) out[i] = dot(row(i), v);
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

namespace {

constexpr int kMaxSweeps = 60;

double off_norm(const Matrix& a) {
  double s = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
  }
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition sym_eig(const Matrix& m) {
  const std::size_t n = m.size();
  if (m.symmetry_defect() > 1e-10) {
    throw ContractError("sym_eig requires a symmetric matrix (defect " +
                        std::to_string(m.symmetry_defect()) + ")");
  }
  Matrix a = m;
  // Columns of v are the eigenvectors; stored transposed (row k = vector k)
  // so the rotation touches two contiguous rows.
  Matrix vt(n);
  for (std::size_t i = 0; i < n; ++i) vt(i, i) = 1.0;

  const double stop = 1e-15 * m.frobenius_norm();
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_norm(a) <= stop) break;
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Negligible against both diagonal entries: drop it.
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(app) + g == std::abs(app) &&
            std::abs(aqq) + g == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vp = vt(p, k);
          const double vq = vt(q, k);
          vt(p, k) = c * vp - s * vq;
          vt(q, k) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigenDecomposition out;
  out.sweeps = sweep;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (std::size_t idx : order) {
    out.values.push_back(a(idx, idx));
    std::vector<double> v(vt.row(idx).begin(), vt.row(idx).end());
    std::size_t big = 0;
    for (std::size_t k = 1; k < n; ++k) {
      if (std::abs(v[k]) > std::abs(v[big])) big = k;
    }
    if (v[big] < 0.0) {
      for (double& x : v) x = -x;
    }
    out.vectors.push_back(std::move(v));
  }
  return out;
}

}  // namespace cqnls
