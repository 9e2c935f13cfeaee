#pragma once

#include <cmath>
#include <string>

#include "vibrelevel/grid.hpp"

namespace vibrelevel {

namespace detail {

inline constexpr double kRescaleThreshold = 1e100;

// Working-coordinate transform: on a log grid the equation y'' = f(r) y
// becomes u'' = g(x) u with x = ln r, y = sqrt(r) u, g = r^2 f + 1/4.
inline double g_of(const RadialGrid& grid, double r, double f_r) {
  return grid.mapping == GridMapping::Uniform ? f_r : r * r * f_r + 0.25;
}
inline double y_of_u(const RadialGrid& grid, double r, double u) {
  return grid.mapping == GridMapping::Uniform ? u : std::sqrt(r) * u;
}
inline double u_of_y(const RadialGrid& grid, double r, double y) {
  return grid.mapping == GridMapping::Uniform ? y : y / std::sqrt(r);
}
// dy/dr from (u, du/dw) at r.
inline double dydr_of(const RadialGrid& grid, double r, double u, double du) {
  return grid.mapping == GridMapping::Uniform ? du
                                              : (0.5 * u + du) / std::sqrt(r);
}

}  // namespace detail

// Three-term Numerov recurrence for y'' = f(r) y with local error O(h^6).
// y0 and y1 are the solution values at the first two nodes in propagation
// order (grid start for Outward, grid end for Inward).  The trace is jointly
// rescaled whenever the magnitude exceeds 1e100.
template <class F>
SolutionTrace numerov_propagate(F&& f, const RadialGrid& grid, double y0,
                                double y1, Direction dir) {
  const std::size_t count = grid.nodes();
  const double h = grid.dw;
  const double h2_12 = h * h / 12.0;

  SolutionTrace tr;
  tr.grid = grid;
  tr.direction = dir;
  tr.y.resize(count);

  auto gidx = [&](std::size_t k) {
    return dir == Direction::Outward ? k : grid.n_steps - k;
  };
  auto g_at = [&](std::size_t k) {
    const double r = grid.r(gidx(k));
    const double fr = f(r);
    if (!std::isfinite(fr))
      fail(errc::integration_failure,
           "non-finite coefficient at node " + std::to_string(k));
    return detail::g_of(grid, r, fr);
  };

  double u_prev = detail::u_of_y(grid, grid.r(gidx(0)), y0);
  double u_cur = detail::u_of_y(grid, grid.r(gidx(1)), y1);
  double p_prev = 1.0 - h2_12 * g_at(0);
  double p_cur = 1.0 - h2_12 * g_at(1);
  tr.y[0] = y0;
  tr.y[1] = y1;

  double cum_log = 0.0;
  // Ring of the most recent working values (current scale) for the end stencil.
  double ring[5] = {u_prev, u_cur, 0, 0, 0};
  int ring_n = 2;

  for (std::size_t k = 2; k < count; ++k) {
    const double p_next = 1.0 - h2_12 * g_at(k);
    double u_next = ((12.0 - 10.0 * p_cur) * u_cur - p_prev * u_prev) / p_next;
    if (!std::isfinite(u_next))
      fail(errc::integration_failure,
           "propagation overflow at node " + std::to_string(k));
    const double mag = std::max(std::abs(u_next), std::abs(u_cur));
    if (mag > detail::kRescaleThreshold ||
        (mag < 1.0 / detail::kRescaleThreshold && mag > 0.0)) {
      u_next /= mag;
      u_cur /= mag;
      cum_log += std::log(mag);
      tr.rescales.push_back({k, cum_log});
      for (int j = 0; j < ring_n; ++j) ring[j] /= mag;
    }
    u_prev = u_cur;
    u_cur = u_next;
    p_prev = p_cur;
    p_cur = p_next;
    tr.y[k] = detail::y_of_u(grid, grid.r(gidx(k)), u_cur);
    if (ring_n < 5) {
      ring[ring_n++] = u_cur;
    } else {
      for (int j = 0; j < 4; ++j) ring[j] = ring[j + 1];
      ring[4] = u_cur;
    }
  }

  tr.scale_exponent = cum_log;
  tr.node_count = count_interior_nodes(std::span<const double>(tr.y));

  // One-sided O(h^4) derivative at the final node, in working coordinates.
  const double s = dir == Direction::Outward ? h : -h;
  double du;
  if (ring_n >= 5) {
    du = (25.0 * ring[4] - 48.0 * ring[3] + 36.0 * ring[2] - 16.0 * ring[1] +
          3.0 * ring[0]) /
         (12.0 * s);
  } else {
    du = (ring[ring_n - 1] - ring[ring_n - 2]) / s;
  }
  const double r_last = grid.r(gidx(count - 1));
  tr.y_prime_end = detail::dydr_of(grid, r_last, u_cur, du);
  return tr;
}

}  // namespace vibrelevel
