#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "vibrelevel/potential.hpp"
#include "vibrelevel/quadrature.hpp"
#include "vibrelevel/units.hpp"

// WKB quantization and the near-dissociation law for -Cn/r^n tails.

namespace vibrelevel {

// Near-dissociation model: (-E_v)^kappa = (v_D - v) * H_n, kappa = (n-2)/2n.
struct LbModel {
  int n = 3;
  double H_n = 0.0;   // slope constant, cm^-kappa... units of (cm^-1)^kappa per v
  double v_D = 0.0;   // non-integer dissociation quantum number
  double kappa = 1.0 / 6.0;
};

inline double lb_kappa(int n) {
  require(n > 2, errc::domain_error, "near-dissociation law requires n > 2");
  return (n - 2.0) / (2.0 * n);
}

inline LbModel make_lb_model(int n, double H_n, double v_D) {
  require(H_n > 0.0, errc::domain_error, "LbModel: H_n must be positive");
  return LbModel{n, H_n, v_D, lb_kappa(n)};
}

inline double lb_energy(const LbModel& m, double v) {
  require(v < m.v_D, errc::domain_error,
          "lb_energy: v must lie below the dissociation quantum number");
  return -std::pow((m.v_D - v) * m.H_n, 1.0 / m.kappa);
}

inline double lb_quantum_number(const LbModel& m, double E) {
  require(E < 0.0, errc::domain_error, "lb_quantum_number: E must be negative");
  return m.v_D - std::pow(-E, m.kappa) / m.H_n;
}

namespace detail {

// Classical turning points V(r) = E around the well minimum.
inline std::pair<double, double> turning_points(const PotentialModel& p,
                                                double E) {
  require(p.has_well(), errc::domain_error, "turning points need a well");
  require(E > p.well_depth() && E < 0.0, errc::domain_error,
          "turning points need V_min < E < 0");
  const double rm = p.well_r();
  // Inner: walk down until V > E, then bisect.
  double lo = rm, step = 0.1 * rm;
  bool found = false;
  for (int it = 0; it < 4000; ++it) {
    double cand = lo - step;
    if (cand <= p.r_lo()) cand = 0.5 * (lo + p.r_lo());
    if (p.eval(cand) > E) {
      lo = cand;
      found = true;
      break;
    }
    lo = cand;
    step *= 1.7;
  }
  require(found, errc::domain_error, "inner turning point not found in domain");
  double a = lo, b = rm;
  for (int i = 0; i < 200 && (b - a) > 1e-15 * b; ++i) {
    const double mid = 0.5 * (a + b);
    (p.eval(mid) > E ? a : b) = mid;
  }
  const double r1 = 0.5 * (a + b);
  // Outer: expand until V > E.
  double hi = rm, stepo = 0.1 * rm;
  while (p.eval(hi + stepo) < E) {
    hi += stepo;
    stepo *= 1.7;
    require(hi < 1e12, errc::domain_error, "outer turning point not found");
  }
  a = hi;
  b = hi + stepo;
  for (int i = 0; i < 200 && (b - a) > 1e-15 * b; ++i) {
    const double mid = 0.5 * (a + b);
    (p.eval(mid) < E ? a : b) = mid;
  }
  return {r1, 0.5 * (a + b)};
}

}  // namespace detail

// Phase integral Phi(E) = (1/pi) Int sqrt((E - V)/k) dr between the turning
// points.  The inverse-square-root endpoint singularities are removed by the
// substitutions r = r1 + s^2 and r = r2 - s^2.
inline double wkb_phase(const PotentialModel& p, double mu, double E) {
  const double k = kinetic_coefficient(mu);
  const auto [r1, r2] = detail::turning_points(p, E);
  const double rm = std::clamp(p.well_r(), r1, r2);
  auto allowed = [&](double r) { return std::max(0.0, (E - p.eval(r)) / k); };
  const double left = integrate(
      [&](double s) { return 2.0 * s * std::sqrt(allowed(r1 + s * s)); }, 0.0,
      std::sqrt(rm - r1), 1e-12);
  const double right = integrate(
      [&](double s) { return 2.0 * s * std::sqrt(allowed(r2 - s * s)); }, 0.0,
      std::sqrt(r2 - rm), 1e-12);
  return (left + right) / M_PI;
}

// dPhi/dE = (1/(2 pi sqrt(k))) Int dr / sqrt(E - V), same substitutions.
inline double wkb_phase_derivative(const PotentialModel& p, double mu, double E) {
  const double k = kinetic_coefficient(mu);
  const auto [r1, r2] = detail::turning_points(p, E);
  const double rm = std::clamp(p.well_r(), r1, r2);
  auto gap = [&](double r) { return std::max(1e-300, E - p.eval(r)); };
  const double left = integrate(
      [&](double s) { return 2.0 * s / std::sqrt(gap(r1 + s * s)); }, 0.0,
      std::sqrt(rm - r1), 1e-12);
  const double right = integrate(
      [&](double s) { return 2.0 * s / std::sqrt(gap(r2 - s * s)); }, 0.0,
      std::sqrt(r2 - rm), 1e-12);
  return (left + right) / (2.0 * M_PI * std::sqrt(k));
}

// Semiclassical level: root of Phi(E) = v + 1/2.
inline double wkb_level(const PotentialModel& p, double mu, int v) {
  require(v >= 0, errc::domain_error, "wkb_level: v must be non-negative");
  require(p.has_well(), errc::domain_error, "wkb_level: potential has no well");
  const double vmin = p.well_depth();
  const double target = v + 0.5;
  double e_hi = -1e-13 * std::abs(vmin);
  require(wkb_phase(p, mu, e_hi) >= target, errc::domain_error,
          "wkb_level: level unbound semiclassically");
  double e_lo = vmin * (1.0 - 1e-12);
  // Bisect in t = sqrt(E - V_min) to keep resolution near both edges.
  auto t_of = [&](double E) { return std::sqrt(E - vmin); };
  auto e_of = [&](double t) { return vmin + t * t; };
  double t_lo = t_of(e_lo), t_hi = t_of(e_hi);
  for (int i = 0; i < 200 && (t_hi - t_lo) > 1e-12 * t_hi; ++i) {
    const double tm = 0.5 * (t_lo + t_hi);
    (wkb_phase(p, mu, e_of(tm)) < target ? t_lo : t_hi) = tm;
  }
  return e_of(0.5 * (t_lo + t_hi));
}

// Closed Gamma-function form of the near-dissociation slope, derived from the
// tail action integral:
//   H_n = (n-2) sqrt(pi k) Gamma(1 + 1/n) / (Gamma(1/2 + 1/n) Cn^{1/n})
inline double lb_slope_closed_form(int n, double Cn, double mu) {
  require(n > 2, errc::domain_error, "lb_slope: requires n > 2");
  require(Cn > 0.0, errc::domain_error, "lb_slope: Cn must be positive");
  const double k = kinetic_coefficient(mu);
  return (n - 2.0) * std::sqrt(M_PI * k) * std::tgamma(1.0 + 1.0 / n) /
         (std::tgamma(0.5 + 1.0 / n) * std::pow(Cn, 1.0 / n));
}

// Numerical route: H(E) = kappa (-E)^(kappa-1) / (dPhi/dE) on the pure tail
// V = -Cn/r^n, evaluated on a geometric E ladder and extrapolated to E -> 0-.
// dPhi/dE = (1/(2 pi sqrt k)) Int_0^{r2} dr/sqrt(E + Cn/r^n); the r -> 0 end
// is regularised by r = q^2 and the turning point by r = r2 - s^2.
inline double lb_slope(int n, double Cn, double mu) {
  require(n > 2, errc::domain_error, "lb_slope: requires n > 2");
  require(Cn > 0.0, errc::domain_error, "lb_slope: Cn must be positive");
  const double k = kinetic_coefficient(mu);
  const double kap = lb_kappa(n);

  auto H_at = [&](double E) {
    const double r2 = std::pow(Cn / -E, 1.0 / n);
    auto gap = [&](double r) {
      return std::max(1e-300, Cn * std::pow(r, -static_cast<double>(n)) + E);
    };
    const double rsplit = 0.5 * r2;
    const double inner = integrate(
        [&](double q) { return 2.0 * q / std::sqrt(gap(q * q)); }, 0.0,
        std::sqrt(rsplit), 1e-13);
    const double outer = integrate(
        [&](double s) { return 2.0 * s / std::sqrt(gap(r2 - s * s)); }, 0.0,
        std::sqrt(r2 - rsplit), 1e-13);
    const double dphi_de = (inner + outer) / (2.0 * M_PI * std::sqrt(k));
    return kap * std::pow(-E, kap - 1.0) / dphi_de;
  };

  // E scale: tail magnitude at 1 Angstrom.  H(E) is exactly E-independent for
  // the pure tail, so the ladder only averages out quadrature error.
  const double e0 = -Cn;
  const double h1 = H_at(1e-4 * e0);
  const double h2 = H_at(1e-5 * e0);
  const double h3 = H_at(1e-6 * e0);
  // Aitken step, guarded for the (expected) nearly-constant sequence.
  const double d1 = h2 - h1, d2 = h3 - h2;
  if (std::abs(d2 - d1) > 1e-30 && std::abs(d2) < std::abs(d1))
    return h3 - d2 * d2 / (d2 - d1);
  return h3;
}

}  // namespace vibrelevel
