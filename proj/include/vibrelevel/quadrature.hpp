#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "vibrelevel/errors.hpp"

namespace vibrelevel {

namespace detail {

// 24-point Gauss-Legendre rule on [-1, 1]; nodes/weights computed once by
// Newton iteration on the Legendre polynomial.
struct GaussLegendre24 {
  std::array<double, 24> x{}, w{};
  GaussLegendre24() {
    constexpr int n = 24;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (z * p0 - p1) / (z * z - 1.0);
        const double dz = p0 / pp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = -z;
      x[n - 1 - i] = z;
      w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
  }
};

inline const GaussLegendre24& gl24() {
  static const GaussLegendre24 rule;
  return rule;
}

}  // namespace detail

// Composite Gauss-Legendre with panel doubling until the relative change is
// below rel_tol.  Intended for smooth integrands (callers remove endpoint
// singularities by substitution first).
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-12,
                 int max_doublings = 14) {
  const auto& rule = detail::gl24();
  double prev = 0.0;
  for (int d = 0; d <= max_doublings; ++d) {
    const std::size_t panels = std::size_t{1} << d;
    const double hp = (b - a) / static_cast<double>(panels);
    double sum = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
      const double lo = a + hp * static_cast<double>(p);
      const double mid = lo + 0.5 * hp;
      double acc = 0.0;
      for (int i = 0; i < 24; ++i) acc += rule.w[i] * f(mid + 0.5 * hp * rule.x[i]);
      sum += 0.5 * hp * acc;
    }
    if (d > 0 && std::abs(sum - prev) <=
                     rel_tol * std::max(std::abs(sum), 1e-300))
      return sum;
    prev = sum;
  }
  return prev;  // best effort; callers validate against independent anchors
}

}  // namespace vibrelevel
