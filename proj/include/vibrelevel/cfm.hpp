#pragma once

#include <array>
#include <cmath>
#include <string>

#include "vibrelevel/grid.hpp"
#include "vibrelevel/numerov.hpp"
#include "vibrelevel/potential.hpp"
#include "vibrelevel/units.hpp"

namespace vibrelevel {

struct CfmConfig {
  double plateau_rel_tol = 1e-10;  // relative spread over three checkpoints
  int checkpoint_stride = 32;      // nodes between checkpoints
};

struct Saturation {
  double value = 0.0;   // saturated ratio l = -beta/alpha = y(r0)/y'(r0)
  double error = 0.0;   // spread of the detected plateau
  double r = 0.0;       // radius of the checkpoint that saturated
  std::size_t node = 0; // propagation-order node index of that checkpoint
};

// Canonical pair propagated in one direction from the anchor: alpha starts
// with (y, y') = (1, 0), beta with (0, 1).  Both traces share rescale events
// so ratios and the Wronskian survive the joint renormalisation.
struct CanonicalHalf {
  SolutionTrace alpha;
  SolutionTrace beta;
  Saturation sat;
};

struct CanonicalPair {
  double anchor_r = 0.0;
  CanonicalHalf inward;   // anchor toward the origin-side boundary
  CanonicalHalf outward;  // anchor toward large r
};

namespace detail {

inline void finish_half(CanonicalHalf& half, double cum_log) {
  half.alpha.scale_exponent = half.beta.scale_exponent = cum_log;
  half.alpha.node_count =
      count_interior_nodes(std::span<const double>(half.alpha.y));
  half.beta.node_count =
      count_interior_nodes(std::span<const double>(half.beta.y));
  half.alpha.y_prime_end = half.alpha.y_prime.back();
  half.beta.y_prime_end = half.beta.y_prime.back();
}

// Classical RK4 on the first-order system (u, u')' = (u', g u), stepping the
// alpha/beta pair jointly.  Returns one CanonicalHalf; stops at saturation.
template <class G>
CanonicalHalf rk4_canonical_half(G&& g_of_w, const RadialGrid& grid,
                                 Direction dir, double r0,
                                 const CfmConfig& cfg, double ell_floor) {
  const std::size_t count = grid.nodes();
  const double h = (dir == Direction::Outward ? 1.0 : -1.0) * grid.dw;

  CanonicalHalf half;
  half.alpha.grid = half.beta.grid = grid;
  half.alpha.direction = half.beta.direction = dir;

  auto gidx = [&](std::size_t k) {
    return dir == Direction::Outward ? k : grid.n_steps - k;
  };
  const double w_begin = grid.w(gidx(0));

  // Initial conditions in y-space at the anchor, converted to working space.
  const bool logmap = grid.mapping == GridMapping::LogUniform;
  const double sr0 = logmap ? std::sqrt(r0) : 1.0;
  // state = (u_a, du_a, u_b, du_b)
  std::array<double, 4> st{};
  if (logmap) {
    st = {1.0 / sr0, -0.5 / sr0, 0.0, sr0};
  } else {
    st = {1.0, 0.0, 0.0, 1.0};
  }

  auto store = [&](std::size_t k, const std::array<double, 4>& s) {
    const double r = grid.r(gidx(k));
    half.alpha.y.push_back(y_of_u(grid, r, s[0]));
    half.alpha.y_prime.push_back(dydr_of(grid, r, s[0], s[1]));
    half.beta.y.push_back(y_of_u(grid, r, s[2]));
    half.beta.y_prime.push_back(dydr_of(grid, r, s[2], s[3]));
  };
  store(0, st);

  double cum_log = 0.0;
  double plateau[3] = {0, 0, 0};
  int n_checkpoints = 0;
  double g_next = g_of_w(w_begin);

  for (std::size_t k = 1; k < count; ++k) {
    const double w = w_begin + h * static_cast<double>(k - 1);
    const double g0 = g_next;
    const double gm = g_of_w(w + 0.5 * h);
    const double g1 = g_of_w(w + h);
    g_next = g1;

    auto deriv = [](const std::array<double, 4>& s, double g) {
      return std::array<double, 4>{s[1], g * s[0], s[3], g * s[2]};
    };
    const auto k1 = deriv(st, g0);
    std::array<double, 4> tmp;
    for (int j = 0; j < 4; ++j) tmp[j] = st[j] + 0.5 * h * k1[j];
    const auto k2 = deriv(tmp, gm);
    for (int j = 0; j < 4; ++j) tmp[j] = st[j] + 0.5 * h * k2[j];
    const auto k3 = deriv(tmp, gm);
    for (int j = 0; j < 4; ++j) tmp[j] = st[j] + h * k3[j];
    const auto k4 = deriv(tmp, g1);
    for (int j = 0; j < 4; ++j)
      st[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);

    double mag = 0.0;
    for (double v : st) mag = std::max(mag, std::abs(v));
    if (!std::isfinite(mag))
      fail(errc::integration_failure,
           "canonical pair overflow at node " + std::to_string(k));
    if (mag > kRescaleThreshold) {
      for (auto& v : st) v /= mag;
      cum_log += std::log(mag);
      half.alpha.rescales.push_back({k, cum_log});
      half.beta.rescales.push_back({k, cum_log});
    }
    store(k, st);

    if (cfg.checkpoint_stride > 0 &&
        k % static_cast<std::size_t>(cfg.checkpoint_stride) == 0) {
      const double ell = -st[2] / st[0];  // -beta/alpha, scale-invariant
      plateau[0] = plateau[1];
      plateau[1] = plateau[2];
      plateau[2] = ell;
      ++n_checkpoints;
      if (n_checkpoints >= 3) {
        const double lo = std::min({plateau[0], plateau[1], plateau[2]});
        const double hi = std::max({plateau[0], plateau[1], plateau[2]});
        const double spread = hi - lo;
        if (spread <= cfg.plateau_rel_tol * std::max(std::abs(ell), ell_floor)) {
          half.sat.value = ell;
          half.sat.error = spread;
          half.sat.r = grid.r(gidx(k));
          half.sat.node = k;
          finish_half(half, cum_log);
          return half;
        }
      }
    }
  }
  fail(errc::saturation_failure,
       "no log-derivative plateau reached before the domain edge; extend the "
       "integration domain");
}

}  // namespace detail

// Propagate the canonical pair from the anchor r0 toward both boundaries of
// the supplied grids (inner grid must end at r0, outer grid must start at
// r0).  Saturation of l(r) = -beta/alpha gives the inverse log-derivative of
// the boundary-decaying solution on each side.
inline CanonicalPair cfm_propagate(const PotentialModel& p, double mu, double E,
                                   double r0, const RadialGrid& inner,
                                   const RadialGrid& outer,
                                   const CfmConfig& cfg = {}) {
  require(E < 0.0, errc::domain_error, "cfm: bound states require E < 0");
  const double k = kinetic_coefficient(mu);
  require(p.eval(r0) < E, errc::domain_error,
          "cfm: anchor must lie strictly inside the classically allowed region");

  const double kappa0 = std::sqrt((E - p.eval(r0)) / k);
  const double ell_floor = 1e-2 / kappa0;

  auto g_maker = [&](const RadialGrid& grid) {
    const bool logmap = grid.mapping == GridMapping::LogUniform;
    return [&p, E, k, logmap](double w) {
      const double r = logmap ? std::exp(w) : w;
      const double f = (p.eval(r) - E) / k;
      return logmap ? r * r * f + 0.25 : f;
    };
  };

  CanonicalPair pair;
  pair.anchor_r = r0;
  pair.inward = detail::rk4_canonical_half(g_maker(inner), inner,
                                           Direction::Inward, r0, cfg, ell_floor);
  pair.outward = detail::rk4_canonical_half(g_maker(outer), outer,
                                            Direction::Outward, r0, cfg, ell_floor);
  return pair;
}

}  // namespace vibrelevel
