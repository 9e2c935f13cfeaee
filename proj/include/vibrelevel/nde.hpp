#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "vibrelevel/semiclassical.hpp"

// Near-dissociation fit: least squares of (-E_v)^kappa against v recovers the
// slope H_n and the dissociation quantum number v_D, and extrapolates the
// unobserved levels the way near-threshold analyses extend a measured list.

namespace vibrelevel {

struct LevelPoint {
  int v = 0;
  double E = 0.0;
};

struct FitWindow {
  int v_lo = 0;
  int v_hi = 0;  // inclusive
  static FitWindow range(int lo, int hi) { return {lo, hi}; }
};

// Window covering the last k levels of a list.
inline FitWindow last_levels(const std::vector<LevelPoint>& levels, int k = 8) {
  require(!levels.empty(), errc::domain_error, "empty level list");
  const int hi = levels.back().v;
  const int lo = levels[levels.size() > static_cast<std::size_t>(k)
                            ? levels.size() - k
                            : 0]
                     .v;
  return {lo, hi};
}

struct LbFitResult {
  LbModel model;
  std::vector<double> residuals;  // (-E_v)^kappa - H_n (v_D - v), window order
  double rms = 0.0;
  FitWindow window;
  std::optional<double> inferred_Cn;  // via the H ~ Cn^{-1/n} scaling
  double mu_for_Cn = 0.0;
};

// Unweighted least squares by default; weighted = true applies weights
// proportional to (-E)^{-kappa} to counter threshold crowding.
inline LbFitResult fit_lb(const std::vector<LevelPoint>& levels, int n,
                          FitWindow window, bool weighted = false,
                          std::optional<double> mu_for_Cn = std::nullopt) {
  const double kappa = lb_kappa(n);
  std::vector<LevelPoint> sel;
  for (const auto& lp : levels)
    if (lp.v >= window.v_lo && lp.v <= window.v_hi) sel.push_back(lp);
  require(sel.size() >= 3, errc::domain_error,
          "fit_lb: window must contain at least 3 levels");
  for (const auto& lp : sel)
    require(lp.E < 0.0, errc::domain_error, "fit_lb: energies must be negative");

  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& lp : sel) {
    const double y = std::pow(-lp.E, kappa);
    const double w = weighted ? 1.0 / std::max(y, 1e-300) : 1.0;
    const double x = lp.v;
    sw += w;
    sx += w * x;
    sy += w * y;
    sxx += w * x * x;
    sxy += w * x * y;
  }
  const double det = sw * sxx - sx * sx;
  require(std::abs(det) > 0.0, errc::fit_degenerate, "fit_lb: singular design");
  const double slope = (sw * sxy - sx * sy) / det;
  const double intercept = (sxx * sy - sx * sxy) / det;

  const double H = -slope;
  const double y_scale = std::pow(std::abs(sel.front().E), kappa);
  require(H > 1e-12 * std::max(y_scale, 1e-300), errc::fit_degenerate,
          "fit_lb: near-zero slope, near-dissociation law not resolvable");

  LbFitResult res;
  res.model = make_lb_model(n, H, intercept / H);
  res.window = window;
  double ss = 0.0;
  for (const auto& lp : sel) {
    const double r = std::pow(-lp.E, kappa) - H * (res.model.v_D - lp.v);
    res.residuals.push_back(r);
    ss += r * r;
  }
  res.rms = std::sqrt(ss / static_cast<double>(sel.size()));
  if (mu_for_Cn) {
    // lb_slope(n, Cn, mu) = lb_slope(n, 1, mu) * Cn^{-1/n}
    const double h_unit = lb_slope_closed_form(n, 1.0, *mu_for_Cn);
    res.inferred_Cn = std::pow(h_unit / H, static_cast<double>(n));
    res.mu_for_Cn = *mu_for_Cn;
  }
  return res;
}

// Levels v_max+1 ... v_max+count predicted by the fitted law; stops at v_D.
inline std::vector<LevelPoint> extrapolate_levels(const LbFitResult& fit,
                                                  int count) {
  require(count >= 1, errc::domain_error, "extrapolate: count must be >= 1");
  std::vector<LevelPoint> out;
  for (int v = fit.window.v_hi + 1; v <= fit.window.v_hi + count; ++v) {
    if (static_cast<double>(v) >= fit.model.v_D) break;
    out.push_back({v, lb_energy(fit.model, v)});
  }
  return out;
}

}  // namespace vibrelevel
