// Reference computations used only by the tests. Nothing here calls into the
// library, so agreement with it is an independent check.
#ifndef CQNLS_TESTS_ORACLES_HPP
#define CQNLS_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

// Adaptive Gauss-Kronrod (7/15) quadrature.
inline double gk15(const std::function<double(double)>& f, double a, double b, double* err) {
  static constexpr double xk[8] = {0.991455371120812639206854697526329,
                                   0.949107912342758524526189684047851,
                                   0.864864423359769072789712788640926,
                                   0.741531185599394439863864773280788,
                                   0.586087235467691130294144845693013,
                                   0.405845151377397166906606412076961,
                                   0.207784955007898467600689403773245,
                                   0.000000000000000000000000000000000};
  static constexpr double wk[8] = {0.022935322010529224963732008058970,
                                   0.063092092629978553290700663189204,
                                   0.104790010322250183839876322541518,
                                   0.140653259715525918745189590510238,
                                   0.169004726639267902826583426598550,
                                   0.190350578064785409913256402421014,
                                   0.204432940075298892414161999234649,
                                   0.209482141084727828012999174891714};
  static constexpr double wg[4] = {0.129484966168869693270611432679082,
                                   0.279705391489276667901467771423780,
                                   0.381830050505118944950369775488975,
                                   0.417959183673469387755102040816327};
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double f0 = f(c);
  double kron = wk[7] * f0;
  double gauss = wg[3] * f0;
  for (int i = 0; i < 7; ++i) {
    const double s = f(c - h * xk[i]) + f(c + h * xk[i]);
    kron += wk[i] * s;
    if (i % 2 == 1) gauss += wg[i / 2] * s;
  }
  *err = std::abs(h * (kron - gauss));
  return h * kron;
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-15, int depth = 40) {
  double err = 0.0;
  const double v = gk15(f, a, b, &err);
  // the Gauss-7 gap overestimates the Kronrod error by orders of magnitude
  if (depth == 0 || err <= tol * std::max(1.0, std::abs(v)) * 1e3) return v;
  const double m = 0.5 * (a + b);
  return integrate(f, a, m, tol / 2, depth - 1) + integrate(f, m, b, tol / 2, depth - 1);
}

inline double K(double m) {
  return integrate([m](double t) { return 1.0 / std::sqrt(1.0 - m * std::sin(t) * std::sin(t)); },
                   0.0, std::numbers::pi / 2);
}

inline double E(double m) {
  return integrate([m](double t) { return std::sqrt(1.0 - m * std::sin(t) * std::sin(t)); },
                   0.0, std::numbers::pi / 2);
}

// Classic RK4 for y' = f(y) on a fixed-size state.
template <std::size_t D, class F>
std::array<double, D> rk4_step(const F& f, const std::array<double, D>& y, double h) {
  auto axpy = [](const std::array<double, D>& a, const std::array<double, D>& b, double s) {
    std::array<double, D> r{};
    for (std::size_t i = 0; i < D; ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  const auto k1 = f(y);
  const auto k2 = f(axpy(y, k1, h / 2));
  const auto k3 = f(axpy(y, k2, h / 2));
  const auto k4 = f(axpy(y, k3, h));
  std::array<double, D> out{};
  for (std::size_t i = 0; i < D; ++i) {
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

// sn, cn, dn at u from the Jacobi ODE system started at (0, 1, 1).
inline std::array<double, 3> jacobi_ode(double u, double m, int steps = 4000) {
  auto f = [m](const std::array<double, 3>& y) {
    return std::array<double, 3>{y[1] * y[2], -y[0] * y[2], -m * y[0] * y[1]};
  };
  std::array<double, 3> y{0.0, 1.0, 1.0};
  const double h = u / steps;
  for (int i = 0; i < steps; ++i) y = rk4_step<3>(f, y, h);
  return y;
}

// Shooting for phi'' = w phi - phi^3 - phi^5 from (phi0, 0).
struct Orbit {
  std::vector<double> t;
  std::vector<double> phi;
  double half_period;  // first return of phi' to zero (the trough)
};

inline Orbit shoot(double omega, double phi0, double t_end, double h) {
  auto f = [omega](const std::array<double, 2>& y) {
    const double p2 = y[0] * y[0];
    return std::array<double, 2>{y[1], omega * y[0] - y[0] * p2 - y[0] * p2 * p2};
  };
  Orbit o{{0.0}, {phi0}, std::nan("")};
  std::array<double, 2> y{phi0, 0.0};
  const auto n = static_cast<long>(std::ceil(t_end / h));
  const double dt = t_end / static_cast<double>(n);
  for (long i = 1; i <= n; ++i) {
    const auto prev = y;
    y = rk4_step<2>(f, y, dt);
    const double t = dt * static_cast<double>(i);
    if (std::isnan(o.half_period) && prev[1] < 0.0 && y[1] >= 0.0) {
      // refine the crossing of phi' = 0 by Newton on the RK4 map
      double tau = dt * prev[1] / (prev[1] - y[1]);
      for (int it = 0; it < 30; ++it) {
        const auto z = rk4_step<2>(f, prev, tau);
        const double slope = f(z)[1];
        const double step = z[1] / slope;
        tau -= step;
        if (std::abs(step) < 1e-15) break;
      }
      o.half_period = t - dt + tau;
    }
    o.t.push_back(t);
    o.phi.push_back(y[0]);
  }
  return o;
}

// Eigenvalues of [[a, b], [b, c]], ascending.
inline std::array<double, 2> eig2(double a, double b, double c) {
  const double mean = 0.5 * (a + c);
  const double r = std::hypot(0.5 * (a - c), b);
  return {mean - r, mean + r};
}

// Sorted spectrum of the periodic second-derivative operator -d^2/dx^2 on
// N Fourier modes (Nyquist mode included once).
inline std::vector<double> free_laplacian_spectrum(std::size_t N, double L) {
  std::vector<double> ev;
  const double s = 2.0 * std::numbers::pi / L;
  const long half = static_cast<long>(N / 2);
  for (long k = -half + 1; k <= half; ++k) {
    ev.push_back(s * s * static_cast<double>(k * k));
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace oracle

#endif  // CQNLS_TESTS_ORACLES_HPP
