#include "cqnls/hill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "cqnls/error.hpp"
#include "cqnls/spectral.hpp"

namespace cqnls {

const char* to_string(OperatorKind k) noexcept {
  return k == OperatorKind::L1 ? "L1" : "L2";
}

const char* to_string(Parity p) noexcept {
  switch (p) {
    case Parity::even:
      return "even";
    case Parity::odd:
      return "odd";
    default:
      return "mixed";
  }
}

std::vector<double> hill_potential(const HillOperatorSpec& spec) {
  const double w = spec.wp.omega;
  std::vector<double> v(spec.prof.phi.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double p2 = spec.prof.phi[j] * spec.prof.phi[j];
    v[j] = spec.kind == OperatorKind::L1 ? w - 3.0 * p2 - 5.0 * p2 * p2
                                         : w - p2 - p2 * p2;
  }
  return v;
}

Matrix collocation_matrix(std::span<const double> potential, double L) {
  const std::size_t n = potential.size();
  if (n < 2 || n % 2 != 0) throw ConfigError("collocation grid size must be even");
  if (!(L > 0.0)) throw ConfigError("collocation period must be positive");
  const double pi = std::numbers::pi;
  const double h = 2.0 * pi / static_cast<double>(n);
  const double scale = (2.0 * pi / L) * (2.0 * pi / L);
  Matrix m(n);
  // -D2 on [0, 2 pi): diagonal pi^2/(3h^2) + 1/6,
  // off-diagonal (-1)^(j-k) / (2 sin^2((j-k) h / 2)).
  const double diag = (pi * pi / (3.0 * h * h) + 1.0 / 6.0) * scale;
  std::vector<double> band(n, 0.0);
  for (std::size_t d = 1; d < n; ++d) {
    const double s = std::sin(static_cast<double>(d) * h / 2.0);
    band[d] = (d % 2 == 0 ? 1.0 : -1.0) / (2.0 * s * s) * scale;
  }
  for (std::size_t j = 0; j < n; ++j) {
    m(j, j) = diag + potential[j];
    for (std::size_t k = j + 1; k < n; ++k) {
      m(j, k) = band[k - j];
      m(k, j) = band[k - j];
    }
  }
  return m;
}

Matrix collocation_matrix(const HillOperatorSpec& spec) {
  if (spec.prof.phi.size() != spec.prof.N) {
    throw ContractError("profile does not match its grid size");
  }
  const auto v = hill_potential(spec);
  return collocation_matrix(v, spec.prof.L);
}

double default_tol_zero(double omega) { return 1e-6 * std::max(1.0, omega); }

int sign_changes(std::span<const double> v, double rel_floor) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  const double floor = rel_floor * vmax;
  std::vector<int> signs;
  for (double x : v) {
    if (std::abs(x) > floor) signs.push_back(x > 0.0 ? 1 : -1);
  }
  if (signs.size() < 2) return 0;
  int changes = 0;
  for (std::size_t j = 0; j < signs.size(); ++j) {
    if (signs[j] != signs[(j + 1) % signs.size()]) ++changes;
  }
  return changes;
}

Parity classify_parity(std::span<const double> v, double tol, double* defect) {
  const std::size_t n = v.size();
  double de = 0.0;
  double dodd = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double r = v[mirror_index(j, n)];
    de = std::max(de, std::abs(v[j] - r));
    dodd = std::max(dodd, std::abs(v[j] + r));
  }
  if (defect != nullptr) *defect = std::min(de, dodd);
  if (de <= tol && de <= dodd) return Parity::even;
  if (dodd <= tol) return Parity::odd;
  return Parity::mixed;
}

namespace {

constexpr double kParityTol = 1e-6;

std::vector<double> reflect(std::span<const double> v) {
  std::vector<double> r(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) r[j] = v[mirror_index(j, v.size())];
  return r;
}

double rayleigh(const Matrix& m, std::span<const double> v) {
  return dot(v, m.apply(v)) / dot(v, v);
}

// Within each cluster of nearly equal eigenvalues replace the basis by
// eigenvectors of the reflection restricted to the cluster.
void rotate_clusters(const Matrix& m, EigenDecomposition& eig) {
  const std::size_t n = eig.values.size();
  const double gap = 1e-8 * std::max(1.0, m.max_abs());
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && eig.values[end] - eig.values[end - 1] < gap) ++end;
    const std::size_t c = end - start;
    if (c > 1) {
      Matrix r(c);
      std::vector<std::vector<double>> refl;
      for (std::size_t a = 0; a < c; ++a) refl.push_back(reflect(eig.vectors[start + a]));
      for (std::size_t a = 0; a < c; ++a) {
        for (std::size_t b = 0; b < c; ++b) {
          r(a, b) = 0.5 * (dot(eig.vectors[start + a], refl[b]) +
                           dot(eig.vectors[start + b], refl[a]));
        }
      }
      const auto sub = sym_eig(r);
      std::vector<std::pair<double, std::vector<double>>> rotated;
      for (std::size_t k = 0; k < c; ++k) {
        std::vector<double> v(n, 0.0);
        for (std::size_t a = 0; a < c; ++a) {
          const double coef = sub.vectors[k][a];
          const auto& src = eig.vectors[start + a];
          for (std::size_t j = 0; j < n; ++j) v[j] += coef * src[j];
        }
        const double nv = norm2(v);
        for (double& x : v) x /= nv;
        const double lam = rayleigh(m, v);
        rotated.emplace_back(lam, std::move(v));
      }
      std::stable_sort(rotated.begin(), rotated.end(),
                       [](const auto& x, const auto& y) { return x.first < y.first; });
      for (std::size_t k = 0; k < c; ++k) {
        eig.values[start + k] = rotated[k].first;
        eig.vectors[start + k] = std::move(rotated[k].second);
      }
    }
    start = end;
  }
}

}  // namespace

SpectrumReport spectrum_report(const HillOperatorSpec& spec, double tol_zero) {
  if (!(tol_zero > 0.0)) throw ConfigError("zero tolerance must be positive");
  const Matrix m = collocation_matrix(spec);
  auto eig = sym_eig(m);
  rotate_clusters(m, eig);

  const std::size_t n = eig.values.size();
  SpectrumReport rep;
  rep.kind = spec.kind;
  rep.wave = {spec.wp.L, spec.wp.omega, spec.wp.alpha3, spec.prof.N};
  rep.tol_zero = tol_zero;

  const double mnorm = m.frobenius_norm();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& v = eig.vectors[k];
    auto mv = m.apply(v);
    double res = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = mv[j] - eig.values[k] * v[j];
      res += d * d;
    }
    rep.max_residual = std::max(rep.max_residual, std::sqrt(res) / mnorm);
  }
  if (rep.max_residual > 1e-9) {
    throw NumericError("eigenpair residual " + std::to_string(rep.max_residual) +
                       " exceeds 1e-9 relative to ||M||");
  }

  rep.parity.reserve(n);
  rep.parity_defect.reserve(n);
  rep.sign_changes.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    double defect = 0.0;
    rep.parity.push_back(classify_parity(eig.vectors[k], kParityTol, &defect));
    rep.parity_defect.push_back(defect);
    rep.sign_changes.push_back(sign_changes(eig.vectors[k]));
    const double lam = eig.values[k];
    if (lam < -tol_zero) ++rep.n_negative;
    if (std::abs(lam) <= tol_zero) {
      ++rep.zero_multiplicity;
      if (!rep.zero_index) rep.zero_index = k;
    }
  }

  rep.zero_match_error = std::numeric_limits<double>::infinity();
  if (rep.zero_index) {
    const auto& kernel =
        spec.kind == OperatorKind::L1 ? spec.prof.dphi : spec.prof.phi;
    const double kn = norm2(kernel);
    const auto& v = eig.vectors[*rep.zero_index];
    const double sgn = dot(v, kernel) < 0.0 ? -1.0 : 1.0;
    double err = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = v[j] - sgn * kernel[j] / kn;
      err += d * d;
    }
    rep.zero_match_error = std::sqrt(err);
  }

  rep.eigenvalues = std::move(eig.values);
  rep.eigenvectors = std::move(eig.vectors);
  return rep;
}

SpectrumReport spectrum_report(const HillOperatorSpec& spec) {
  return spectrum_report(spec, default_tol_zero(spec.wp.omega));
}

CombinedCounts combined_counts(const SpectrumReport& r1, const SpectrumReport& r2) {
  if (r1.kind != OperatorKind::L1 || r2.kind != OperatorKind::L2) {
    throw ContractError("combined counts expect an L1 report and an L2 report");
  }
  if (!(r1.wave == r2.wave)) {
    throw ContractError("spectrum reports come from different waves");
  }
  CombinedCounts c;
  for (const auto* r : {&r1, &r2}) {
    for (std::size_t k = 0; k < r->eigenvalues.size(); ++k) {
      const double lam = r->eigenvalues[k];
      const bool neg = lam < -r->tol_zero;
      const bool zero = std::abs(lam) <= r->tol_zero;
      c.full_negative += neg;
      c.full_zero += zero;
      if (r->parity[k] == Parity::even) {
        c.even_negative += neg;
        c.even_zero += zero;
        if (zero) c.even_zero_carriers.push_back(r->kind);
      }
    }
  }
  return c;
}

namespace {

struct ThetaState {
  double y;
  double dy;
};

}  // namespace

ThetaResult theta_constant(const WaveParams& wp, double dt) {
  const double L = wp.L;
  if (!(dt > 0.0) || dt > L / 1e5) {
    throw ConfigError("theta integration step must lie in (0, L/1e5]");
  }
  const double w = wp.omega;
  const double p0 = std::sqrt(wp.alpha3);
  const double phi_dd0 = w * p0 - p0 * p0 * p0 - p0 * p0 * p0 * p0 * p0;
  if (std::abs(phi_dd0) < 1e-12) {
    throw DegenerateError("phi''(0) vanishes: the wave is at the equilibrium");
  }

  const auto steps = static_cast<std::size_t>(std::ceil(L / dt));
  const double h = L / static_cast<double>(steps);
  // Potential at every half step.
  std::vector<double> pot(2 * steps + 1);
  for (std::size_t i = 0; i < pot.size(); ++i) {
    const double p = wp.profile_at(0.5 * h * static_cast<double>(i));
    const double p2 = p * p;
    pot[i] = w - 3.0 * p2 - 5.0 * p2 * p2;
  }

  auto rhs = [](const ThetaState& s, double v) { return ThetaState{s.dy, v * s.y}; };
  ThetaState s{-1.0 / phi_dd0, 0.0};
  ThetaResult out;
  out.phi_dd0 = phi_dd0;
  out.steps = steps;
  for (std::size_t i = 0; i < steps; ++i) {
    const double v0 = pot[2 * i];
    const double vh = pot[2 * i + 1];
    const double v1 = pot[2 * i + 2];
    const auto k1 = rhs(s, v0);
    const auto k2 = rhs({s.y + 0.5 * h * k1.y, s.dy + 0.5 * h * k1.dy}, vh);
    const auto k3 = rhs({s.y + 0.5 * h * k2.y, s.dy + 0.5 * h * k2.dy}, vh);
    const auto k4 = rhs({s.y + h * k3.y, s.dy + h * k3.dy}, v1);
    s.y += h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
    s.dy += h / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy);

    const double x = h * static_cast<double>(i + 1);
    const double p = wp.profile_at(x);
    const double pdd = w * p - p * p * p - p * p * p * p * p;
    const double wr = wp.profile_derivative_at(x) * s.dy - pdd * s.y;
    out.wronskian_defect = std::max(out.wronskian_defect, std::abs(wr - 1.0));
  }
  out.y_end = s.y;
  out.dy_end = s.dy;
  out.theta = s.dy / phi_dd0;
  return out;
}

ThetaResult theta_constant(const WaveParams& wp, const Profile& prof, double dt) {
  if (prof.L != wp.L) throw ContractError("profile and parameters have different periods");
  return theta_constant(wp, dt);
}

}  // namespace cqnls
