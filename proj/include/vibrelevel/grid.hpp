#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "vibrelevel/errors.hpp"

namespace vibrelevel {

enum class GridMapping { Uniform, LogUniform };
enum class Direction { Outward, Inward };

// Node layout for one propagation run.  Uniform grids step in r directly;
// LogUniform grids step uniformly in x = ln r, which is what long-range tails
// need to reach thousands of Angstrom without wasting nodes.
struct RadialGrid {
  double r_start = 0.0;
  double r_end = 0.0;
  GridMapping mapping = GridMapping::Uniform;
  std::size_t n_steps = 0;
  double w0 = 0.0;  // working coordinate of node 0 (r or ln r)
  double dw = 0.0;  // working step

  static RadialGrid uniform(double r0, double r1, double h_target) {
    require(r1 > r0, errc::domain_error, "grid: r_end must exceed r_start");
    require(h_target > 0.0, errc::domain_error, "grid: step must be positive");
    RadialGrid g;
    g.r_start = r0;
    g.r_end = r1;
    g.mapping = GridMapping::Uniform;
    g.n_steps = std::max<std::size_t>(
        64, static_cast<std::size_t>(std::ceil((r1 - r0) / h_target)));
    g.w0 = r0;
    g.dw = (r1 - r0) / static_cast<double>(g.n_steps);
    return g;
  }

  static RadialGrid log_uniform(double r0, double r1, double dx_target) {
    require(r0 > 0.0, errc::domain_error, "grid: log mapping needs r_start > 0");
    require(r1 > r0, errc::domain_error, "grid: r_end must exceed r_start");
    require(dx_target > 0.0, errc::domain_error, "grid: step must be positive");
    RadialGrid g;
    g.r_start = r0;
    g.r_end = r1;
    g.mapping = GridMapping::LogUniform;
    const double span = std::log(r1 / r0);
    g.n_steps = std::max<std::size_t>(
        64, static_cast<std::size_t>(std::ceil(span / dx_target)));
    g.w0 = std::log(r0);
    g.dw = span / static_cast<double>(g.n_steps);
    return g;
  }

  std::size_t nodes() const { return n_steps + 1; }
  double step() const { return dw; }

  double w(std::size_t i) const { return w0 + dw * static_cast<double>(i); }

  double r(std::size_t i) const {
    if (i == n_steps) return r_end;  // land exactly on the declared edge
    return mapping == GridMapping::Uniform ? w(i) : std::exp(w(i));
  }
};

// Strict sign changes of a sample sequence; samples that touch zero are
// counted once (a zero between opposite signs is a single node).
inline int count_sign_changes(std::span<const double> y) {
  int count = 0;
  int last = 0;
  for (double v : y) {
    const int s = (v > 0.0) - (v < 0.0);
    if (s != 0) {
      if (last != 0 && s != last) ++count;
      last = s;
    }
  }
  return count;
}

struct RescaleEvent {
  std::size_t node = 0;          // propagation-order index where the rescale applied
  double cumulative_log = 0.0;   // total log-factor removed up to this node
};

// One propagated solution.  Values are stored in propagation order: y[0] is
// the starting boundary node (r_start for Outward, r_end for Inward).  Stored
// values are piecewise rescaled; `rescales` records the accumulated
// log-factor so the true amplitude is y[i] * exp(scale at i).
struct SolutionTrace {
  RadialGrid grid;
  Direction direction = Direction::Outward;
  std::vector<double> y;
  std::vector<double> y_prime;   // dy/dr per node when the engine provides it
  double y_prime_end = 0.0;      // dy/dr at the final node reached
  int node_count = 0;            // strict sign changes over interior nodes
  double scale_exponent = 0.0;   // final accumulated log rescale factor
  std::vector<RescaleEvent> rescales;

  std::size_t grid_index(std::size_t i) const {
    return direction == Direction::Outward ? i : grid.n_steps - i;
  }
  double r_at(std::size_t i) const { return grid.r(grid_index(i)); }

  // Accumulated log rescale factor in effect at propagation node i.
  double scale_log_at(std::size_t i) const {
    double s = 0.0;
    for (const auto& e : rescales) {
      if (e.node <= i) s = e.cumulative_log;
      else break;
    }
    return s;
  }
};

// Node count of a stored trace over all samples.
inline int count_nodes(const SolutionTrace& t) {
  return count_sign_changes(std::span<const double>(t.y));
}

// Interior count: endpoint samples (boundary values) excluded.
inline int count_interior_nodes(std::span<const double> y) {
  if (y.size() < 3) return 0;
  return count_sign_changes(y.subspan(1, y.size() - 2));
}

}  // namespace vibrelevel
