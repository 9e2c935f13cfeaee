#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vibrelevel/errors.hpp"
#include "vibrelevel/spline.hpp"

namespace vibrelevel {

enum class PotentialKind { PowerTail, LennardJonesLike, Morse, Tabulated };

inline const char* kind_name(PotentialKind k) {
  switch (k) {
    case PotentialKind::PowerTail: return "power_tail";
    case PotentialKind::LennardJonesLike: return "lennard_jones";
    case PotentialKind::Morse: return "morse";
    case PotentialKind::Tabulated: return "tabulated";
  }
  return "unknown";
}

// Long-range behaviour V(r) -> -Cn / r^n.
struct TailSpec {
  int n = 0;
  double Cn = 0.0;  // cm^-1 A^n
};

// x^n for small integer n without libm pow.
inline double powi(double x, int n) {
  double r = 1.0, b = x;
  for (unsigned e = static_cast<unsigned>(n); e; e >>= 1) {
    if (e & 1u) r *= b;
    b *= b;
  }
  return r;
}

struct MorseParams {
  double De;  // well depth, cm^-1
  double a;   // inverse range, 1/A
  double re;  // equilibrium distance, A
};

namespace detail {

struct PowerTailParams {
  int n = 0;          // attractive exponent (0 = purely repulsive)
  double Cn = 0.0;    // cm^-1 A^n
  int m = 0;          // repulsive wall exponent
  double Cm = 0.0;    // cm^-1 A^m
};

struct TabulatedParams {
  CubicSpline spline;
  double blend_lo = 0.0;  // start of the spline/tail blend (second-to-last knot)
  TailSpec tail;
};

}  // namespace detail

// Radial potential model: evaluatable V(r) with declared long-range tail.
// Immutable after construction.
class PotentialModel {
 public:
  double eval(double r) const {
    if (r > r_lo_ && r <= r_hi_) [[likely]]
      return eval_unchecked(r);
    fail(errc::domain_error,
         "r=" + std::to_string(r) + " outside potential domain");
  }
  double operator()(double r) const { return eval(r); }

  PotentialKind kind() const { return kind_; }
  const std::optional<TailSpec>& tail() const { return tail_; }
  double r_lo() const { return r_lo_; }
  double r_hi() const { return r_hi_; }
  const std::string& id() const { return id_; }

  bool has_well() const { return has_well_; }
  double well_r() const {
    require(has_well_, errc::domain_error, "potential has no well");
    return well_r_;
  }
  double well_depth() const {  // V at the minimum (negative)
    require(has_well_, errc::domain_error, "potential has no well");
    return well_v_;
  }

  // V(r) = Cm/r^m - Cn/r^n with m > n; smooth repulsive wall plus power tail.
  static PotentialModel power_tail(int n, double Cn, int m, double Cm) {
    require(n >= 1, errc::domain_error, "power_tail: n must be >= 1");
    require(m > n, errc::domain_error, "power_tail: wall exponent m must exceed n");
    require(Cn > 0.0 && Cm > 0.0, errc::domain_error,
            "power_tail: coefficients must be positive");
    PotentialModel p;
    p.kind_ = PotentialKind::PowerTail;
    p.impl_ = detail::PowerTailParams{n, Cn, m, Cm};
    p.tail_ = TailSpec{n, Cn};
    p.well_r_ = std::pow(m * Cm / (n * Cn), 1.0 / (m - n));
    p.well_v_ = Cm * powi(1.0 / p.well_r_, m) - Cn * powi(1.0 / p.well_r_, n);
    p.has_well_ = true;
    p.id_ = "power_tail(n=" + std::to_string(n) + ",Cn=" + fmt(Cn) +
            ",m=" + std::to_string(m) + ",Cm=" + fmt(Cm) + ")";
    return p;
  }

  // Purely repulsive Cm/r^m (no tail, no well).
  static PotentialModel repulsive(int m, double Cm) {
    require(m >= 1 && Cm > 0.0, errc::domain_error, "repulsive: need m >= 1, Cm > 0");
    PotentialModel p;
    p.kind_ = PotentialKind::PowerTail;
    p.impl_ = detail::PowerTailParams{0, 0.0, m, Cm};
    p.id_ = "repulsive(m=" + std::to_string(m) + ",Cm=" + fmt(Cm) + ")";
    return p;
  }

  // V(r) = De((re/r)^12 - 2 (re/r)^6); depth De at re, tail -2 De re^6 / r^6.
  static PotentialModel lennard_jones(double De, double re) {
    require(De > 0.0 && re > 0.0, errc::domain_error, "lennard_jones: need De, re > 0");
    const double c6 = 2.0 * De * powi(re, 6);
    const double c12 = De * powi(re, 12);
    PotentialModel p;
    p.kind_ = PotentialKind::LennardJonesLike;
    p.impl_ = detail::PowerTailParams{6, c6, 12, c12};
    p.tail_ = TailSpec{6, c6};
    p.well_r_ = re;
    p.well_v_ = -De;
    p.has_well_ = true;
    p.id_ = "lennard_jones(De=" + fmt(De) + ",re=" + fmt(re) + ")";
    return p;
  }

  // V(r) = De(e^{-2a(r-re)} - 2 e^{-a(r-re)}); V(re) = -De, V(inf) = 0.
  // Exponential tail: no power-law TailSpec is declared.
  static PotentialModel morse(double De, double a, double re) {
    require(De > 0.0 && a > 0.0 && re > 0.0, errc::domain_error,
            "morse: need De, a, re > 0");
    PotentialModel p;
    p.kind_ = PotentialKind::Morse;
    p.impl_ = MorseParams{De, a, re};
    p.well_r_ = re;
    p.well_v_ = -De;
    p.has_well_ = true;
    p.id_ = "morse(De=" + fmt(De) + ",a=" + fmt(a) + ",re=" + fmt(re) + ")";
    return p;
  }

  // Cubic-spline interpolant through (r, V) points, blended into the analytic
  // -Cn/r^n tail across the final data interval, pure tail beyond the last
  // point.  The blend weight is a smoothstep so the model stays C^1.
  static PotentialModel tabulated(const std::vector<double>& r,
                                  const std::vector<double>& v, int tail_n,
                                  double tail_Cn) {
    require(r.size() == v.size(), errc::format_error, "tabulated: size mismatch");
    require(r.size() >= 8, errc::format_error, "tabulated: need at least 8 points");
    require(tail_n >= 1 && tail_Cn > 0.0, errc::domain_error,
            "tabulated: tail must have n >= 1, Cn > 0");
    require(r.front() > 0.0, errc::format_error, "tabulated: r must be positive");
    for (std::size_t i = 0; i < r.size(); ++i) {
      require(std::isfinite(r[i]) && std::isfinite(v[i]), errc::format_error,
              "tabulated: non-finite entry");
      if (i) require(r[i] > r[i - 1], errc::format_error,
                     "tabulated: r must be strictly increasing");
    }
    const double r_last = r.back();
    const double tail_last = -tail_Cn * powi(1.0 / r_last, tail_n);
    require(std::abs(v.back() - tail_last) <= 0.05 * std::abs(v.back()),
            errc::tail_mismatch,
            "tabulated: last point deviates from declared tail by more than 5%");

    PotentialModel p;
    p.kind_ = PotentialKind::Tabulated;
    detail::TabulatedParams tp;
    tp.spline = CubicSpline(r, v);
    tp.blend_lo = r[r.size() - 2];
    tp.tail = TailSpec{tail_n, tail_Cn};
    p.impl_ = std::move(tp);
    p.tail_ = TailSpec{tail_n, tail_Cn};
    p.r_lo_ = std::nextafter(r.front(), -1.0);  // first knot itself is valid
    p.find_tabulated_minimum(r, v);
    p.id_ = "tabulated(points=" + std::to_string(r.size()) +
            ",tail_n=" + std::to_string(tail_n) + ",tail_Cn=" + fmt(tail_Cn) + ")";
    return p;
  }

 private:
  double eval_unchecked(double r) const {
    switch (kind_) {
      case PotentialKind::PowerTail:
      case PotentialKind::LennardJonesLike: {
        const auto& q = std::get<detail::PowerTailParams>(impl_);
        const double inv = 1.0 / r;
        double val = q.Cm * powi(inv, q.m);
        if (q.n > 0) val -= q.Cn * powi(inv, q.n);
        return val;
      }
      case PotentialKind::Morse: {
        const auto& q = std::get<MorseParams>(impl_);
        const double e = std::exp(-q.a * (r - q.re));
        return q.De * (e * e - 2.0 * e);
      }
      case PotentialKind::Tabulated: {
        const auto& q = std::get<detail::TabulatedParams>(impl_);
        const double tail = -q.tail.Cn * powi(1.0 / r, q.tail.n);
        if (r >= q.spline.x_back()) return tail;
        if (r <= q.blend_lo) return q.spline(r);
        const double t = (r - q.blend_lo) / (q.spline.x_back() - q.blend_lo);
        const double w = t * t * (3.0 - 2.0 * t);
        return (1.0 - w) * q.spline(r) + w * tail;
      }
    }
    return 0.0;
  }

  void find_tabulated_minimum(const std::vector<double>& r,
                              const std::vector<double>& v) {
    std::size_t imin = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] < v[imin]) imin = i;
    if (v[imin] >= 0.0) return;  // no well
    // Golden-section refinement inside the bracketing knots.
    double a = r[imin > 0 ? imin - 1 : 0];
    double b = r[imin + 1 < r.size() ? imin + 1 : imin];
    const double gr = 0.618033988749894848;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = eval_unchecked(x1), f2 = eval_unchecked(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * (1.0 + b); ++it) {
      if (f1 < f2) {
        b = x2; x2 = x1; f2 = f1;
        x1 = b - gr * (b - a); f1 = eval_unchecked(x1);
      } else {
        a = x1; x1 = x2; f1 = f2;
        x2 = a + gr * (b - a); f2 = eval_unchecked(x2);
      }
    }
    well_r_ = 0.5 * (a + b);
    well_v_ = eval_unchecked(well_r_);
    has_well_ = well_v_ < 0.0;
  }

  static std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
  }

  PotentialKind kind_ = PotentialKind::PowerTail;
  std::variant<detail::PowerTailParams, MorseParams, detail::TabulatedParams> impl_;
  std::optional<TailSpec> tail_;
  double r_lo_ = 0.0;  // exclusive lower edge
  double r_hi_ = std::numeric_limits<double>::infinity();
  bool has_well_ = false;
  double well_r_ = 0.0;
  double well_v_ = 0.0;
  std::string id_;
};

}  // namespace vibrelevel
