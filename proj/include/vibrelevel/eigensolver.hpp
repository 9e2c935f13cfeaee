#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "vibrelevel/cfm.hpp"
#include "vibrelevel/grid.hpp"
#include "vibrelevel/numerov.hpp"
#include "vibrelevel/potential.hpp"
#include "vibrelevel/semiclassical.hpp"
#include "vibrelevel/units.hpp"

// Bound-level search: bracket by exact eigenvalue counting (node count plus
// matching-sign correction), refine by bisection/secant on the matching
// function, certify by grid-refinement extrapolation.  Root refinement runs
// in the transformed variable t = (-E)^q with q = (n-2)/(2n) for a declared
// power tail (q = 1/2 otherwise), which keeps relative resolution uniform
// across the nine-decade spread a long-range tail produces near threshold.

namespace vibrelevel {

enum class Engine { CFM, Numerov };

inline const char* engine_name(Engine e) {
  return e == Engine::CFM ? "cfm" : "numerov";
}

struct SolverConfig {
  double points_per_wave = 48.0;   // phase resolution of the base grid
  double tol = 1e-10;              // relative bracket width in t at the base grid
  int halvings = 3;                // accuracy-ladder grid halvings (rungs = halvings+1)
  double e_foldings = 30.0;        // forbidden-region decay margin at the edges
  double tail_drop = 1e-3;         // require |V(r_end)| <= tail_drop * |E|
  double threshold_floor_ratio = 1e-12;  // stop the scan at |E| = ratio * |V_min|
  double plateau_rel_tol = 1e-10;  // canonical-pair saturation tolerance
  int checkpoint_stride = 32;
  double anchor_r = 0.0;           // canonical-pair anchor; 0 = well minimum
  double log_switch_ratio = 50.0;  // LogUniform grids when r_end/r_start exceeds
  double step_scale = 1.0;         // internal: ladder rung scaling
};

struct MismatchResult {
  double value = 0.0;   // matching function; changes sign across an eigenvalue
  int nodes = 0;        // node count of the assembled solution
  int levels_below = 0; // exact count of discrete eigenvalues below E
};

struct LevelBracket {
  int v = 0;
  double e_lo = 0.0;
  double e_hi = 0.0;
};

struct AccuracyReport {
  std::vector<double> h_values;    // working step per rung
  std::vector<double> E_estimates; // converged eigenvalue per rung
  double E_extrapolated = 0.0;     // order-4 Richardson from the finest pair
  double err_estimate = 0.0;       // |E_finest - E_extrapolated|
  double observed_order = 0.0;     // log2 ratio of the last two differences
};

struct Level {
  int v = 0;
  double E = 0.0;  // extrapolated value
  AccuracyReport report;
};

struct LevelFailure {
  int v = 0;
  std::string reason;
};

struct LevelSpectrum {
  double mu = 0.0;
  std::string potential_id;
  Engine engine = Engine::Numerov;
  std::vector<Level> levels;
  std::vector<LevelFailure> failures;
  double threshold_floor = 0.0;  // |E| below which the scan does not resolve
  bool complete() const { return failures.empty(); }
};

namespace detail {

inline double root_exponent(const PotentialModel& p) {
  if (p.tail() && p.tail()->n > 2) {
    const double n = p.tail()->n;
    return (n - 2.0) / (2.0 * n);
  }
  return 0.5;
}

struct EnergyDomain {
  double r_start = 0.0;
  double r_end = 0.0;
  double r_turn_outer = 0.0;
};

// Outermost classical turning point at energy E (V monotone toward 0 beyond
// the well for every supported model family).
inline double outer_turning_point(const PotentialModel& p, double E) {
  double lo = p.well_r();
  double step = 0.25 * lo;
  double hi = lo + step;
  int guard = 0;
  while (p.eval(hi) < E) {
    lo = hi;
    step *= 1.8;
    hi += step;
    require(++guard < 400, errc::solver_failure, "outer turning point escaped");
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (p.eval(mid) < E ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double inner_turning_point(const PotentialModel& p, double E) {
  double hi = p.well_r();
  double lo = hi;
  double step = 0.1 * hi;
  int guard = 0;
  while (true) {
    double cand = lo - step;
    if (cand <= p.r_lo()) cand = 0.5 * (lo + p.r_lo());
    if (p.eval(cand) > E) {
      lo = cand;
      break;
    }
    hi = cand;
    lo = cand;
    step *= 1.7;
    require(++guard < 4000, errc::solver_failure, "inner turning point not found");
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-14 * std::max(hi, 1.0); ++i) {
    const double mid = 0.5 * (lo + hi);
    (p.eval(mid) > E ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Domain sized per energy: the inner edge accumulates the requested decay
// e-foldings inside the wall; the outer edge additionally requires the tail
// to have dropped below tail_drop * |E| (the outer turning point scales as
// (Cn/|E|)^{1/n}, so near-threshold levels push r_end to thousands of A).
inline EnergyDomain choose_domain(const PotentialModel& p, double kcoef,
                                  double E, const SolverConfig& cfg) {
  EnergyDomain dom;
  dom.r_turn_outer = outer_turning_point(p, E);
  const double r_in = inner_turning_point(p, E);

  auto kappa_at = [&](double r) {
    return std::sqrt(std::max(0.0, (p.eval(r) - E) / kcoef));
  };

  // Inward: geometric walk until the accumulated phase deficit suffices.
  double folds = 0.0;
  double r = r_in;
  const double shrink = 0.985;
  int guard = 0;
  while (folds < cfg.e_foldings && ++guard < 6000) {
    double rn = r * shrink;
    if (rn <= p.r_lo()) {
      rn = 0.5 * (r + p.r_lo());
      if (rn <= p.r_lo() || (r - rn) < 1e-12 * r) break;
    }
    folds += 0.5 * (kappa_at(r) + kappa_at(rn)) * (r - rn);
    r = rn;
  }
  dom.r_start = r;

  // Outward: geometric walk; both the e-folding and the tail-drop condition.
  folds = 0.0;
  r = dom.r_turn_outer;
  const double grow = 1.02;
  guard = 0;
  while ((folds < cfg.e_foldings ||
          std::abs(p.eval(r)) > cfg.tail_drop * std::abs(E)) &&
         ++guard < 8000) {
    const double rn = r * grow;
    folds += 0.5 * (kappa_at(r) + kappa_at(rn)) * (rn - r);
    r = rn;
  }
  dom.r_end = r;
  return dom;
}

// Grid step from a phase-resolution target over the classically allowed
// region (probed on a log mesh), capped so at least the well is resolved.
inline RadialGrid build_grid(const PotentialModel& p, double kcoef, double E,
                             const EnergyDomain& dom, const SolverConfig& cfg) {
  const bool logmap = dom.r_end / dom.r_start > cfg.log_switch_ratio;
  double max_measure = 0.0;  // max of kappa (uniform) or kappa * r (log)
  const int probes = 384;
  const double lx0 = std::log(dom.r_start), lx1 = std::log(dom.r_end);
  for (int i = 0; i <= probes; ++i) {
    const double r = std::exp(lx0 + (lx1 - lx0) * i / probes);
    const double kap =
        std::sqrt(std::abs(p.eval(r) - E) / kcoef);  // local wavenumber scale
    max_measure = std::max(max_measure, logmap ? kap * r : kap);
  }
  const double target = 2.0 * M_PI / (cfg.points_per_wave * max_measure) *
                        cfg.step_scale;
  if (logmap) {
    const double dx = std::min(target, std::log(dom.r_end / dom.r_start) / 64.0);
    return RadialGrid::log_uniform(dom.r_start, dom.r_end, dx);
  }
  const double h = std::min(target, (dom.r_end - dom.r_start) / 64.0);
  return RadialGrid::uniform(dom.r_start, dom.r_end, h);
}

struct NumerovMatch {
  double value = 0.0;
  int nodes = 0;
  int levels_below = 0;
};

inline NumerovMatch numerov_mismatch(const PotentialModel& p, double kcoef,
                                     double E, const RadialGrid& grid,
                                     double r_turn_outer) {
  auto f = [&](double r) { return (p.eval(r) - E) / kcoef; };
  const double h = grid.step();
  const double seed = 1e-6;

  SolutionTrace out = numerov_propagate(f, grid, 0.0, seed, Direction::Outward);
  SolutionTrace in = numerov_propagate(f, grid, 0.0, seed, Direction::Inward);

  // Match at the grid node nearest the outer turning point.
  const double w_turn = grid.mapping == GridMapping::Uniform
                            ? r_turn_outer
                            : std::log(r_turn_outer);
  std::size_t m = static_cast<std::size_t>(
      std::clamp((w_turn - grid.w0) / h, 2.0, grid.n_steps - 3.0));

  auto u_at = [&](const SolutionTrace& tr, std::size_t gi) {
    const std::size_t k = tr.direction == Direction::Outward ? gi : grid.n_steps - gi;
    return u_of_y(grid, grid.r(gi), tr.y[k]);
  };
  const double uo0 = u_at(out, m), uo1 = u_at(out, m + 1);
  const double ui0 = u_at(in, m), ui1 = u_at(in, m + 1);

  // Adjacent-node cross product: the discrete Wronskian up to a conserved
  // positive factor; zero exactly at a discrete eigenvalue.
  const double cross = uo1 * ui0 - uo0 * ui1;
  const double norm = std::sqrt((uo0 * uo0 + uo1 * uo1) * (ui0 * ui0 + ui1 * ui1));

  NumerovMatch res;
  res.value = norm > 0.0 ? cross / norm : 0.0;

  // Nodes of the assembled solution: outward piece to the match point plus
  // inward piece beyond it (the latter is node-free in the forbidden region).
  const auto& yo = out.y;
  const int n_out = count_sign_changes(
      std::span<const double>(yo.data() + 1, m));  // interior, up to match
  const auto& yi = in.y;  // propagation order: index 0 is r_end
  const std::size_t tail_len = grid.n_steps - m;
  const int n_in = count_sign_changes(
      std::span<const double>(yi.data() + 1, tail_len > 1 ? tail_len - 1 : 0));
  res.nodes = n_out + n_in;

  // Sign of L_out - L_in: cross ~ h * W(u_out, u_in) with
  // W = u_out' u_in - u_out u_in' = u_out u_in (L_out - L_in).
  const double s_o = uo0 >= 0.0 ? 1.0 : -1.0;
  const double s_i = ui0 >= 0.0 ? 1.0 : -1.0;
  const bool d_negative = res.value * s_o * s_i < 0.0;
  res.levels_below = res.nodes + (d_negative ? 1 : 0);
  return res;
}

struct CfmMatch {
  double value = 0.0;
  int nodes = 0;
  int levels_below = 0;
};

inline CfmMatch cfm_mismatch(const PotentialModel& p, double mu, double E,
                             const RadialGrid& inner, const RadialGrid& outer,
                             double anchor, const SolverConfig& cfg) {
  CfmConfig cc;
  cc.plateau_rel_tol = cfg.plateau_rel_tol;
  cc.checkpoint_stride = cfg.checkpoint_stride;
  const CanonicalPair pair = cfm_propagate(p, mu, E, anchor, inner, outer, cc);
  const double l_minus = pair.inward.sat.value;
  const double l_plus = pair.outward.sat.value;

  CfmMatch res;
  res.value = l_plus - l_minus;

  // Physical solutions on each side: psi = l * alpha + beta (anchor value l).
  // Deep in the forbidden region psi is a near-total cancellation of two huge
  // terms; samples below the cancellation floor are treated as exact zeros so
  // roundoff there cannot fake nodes.
  auto side_nodes = [&](const CanonicalHalf& half, double ell) {
    const std::size_t n = half.alpha.y.size();
    std::vector<double> psi(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = ell * half.alpha.y[i];
      const double b = half.beta.y[i];
      const double s = a + b;
      psi[i] = std::abs(s) < 1e-12 * (std::abs(a) + std::abs(b)) ? 0.0 : s;
    }
    // The anchor sample (psi(r0) = l) belongs to the count; a node exactly at
    // the anchor shows up as a zero there and is charged to neither side.
    return count_sign_changes(std::span<const double>(psi));
  };
  const int n_l = side_nodes(pair.inward, l_minus);
  const int n_r = side_nodes(pair.outward, l_plus);
  res.nodes = n_l + n_r;

  // [L_left - L_right < 0] with L = 1/l.
  const double d_l = (l_plus - l_minus) * l_plus * l_minus;
  res.levels_below = res.nodes + (d_l < 0.0 ? 1 : 0);
  return res;
}

}  // namespace detail

// Matching function at energy E.  The value is continuous between eigenvalues
// and changes sign across each one; levels_below counts discrete eigenvalues
// below E exactly (node count corrected by the matching sign).
inline MismatchResult mismatch(const PotentialModel& p, double mu, double E,
                               Engine engine, const SolverConfig& cfg = {}) {
  require(p.has_well(), errc::domain_error, "mismatch: potential has no well");
  require(E > p.well_depth() && E < 0.0, errc::domain_error,
          "mismatch: require V_min < E < 0");
  const double k = kinetic_coefficient(mu);
  const auto dom = detail::choose_domain(p, k, E, cfg);
  if (engine == Engine::Numerov) {
    const RadialGrid grid = detail::build_grid(p, k, E, dom, cfg);
    const auto r = detail::numerov_mismatch(p, k, E, grid, dom.r_turn_outer);
    return {r.value, r.nodes, r.levels_below};
  }
  const double anchor = cfg.anchor_r > 0.0 ? cfg.anchor_r : p.well_r();
  const RadialGrid inner = detail::build_grid(
      p, k, E, {dom.r_start, anchor, dom.r_turn_outer}, cfg);
  const RadialGrid outer = detail::build_grid(
      p, k, E, {anchor, dom.r_end, dom.r_turn_outer}, cfg);
  const auto r = detail::cfm_mismatch(p, mu, E, inner, outer, anchor, cfg);
  return {r.value, r.nodes, r.levels_below};
}

namespace detail {

// Fixed-grid evaluator reused across a root refinement so the discrete
// problem is identical for every trial energy.
struct FixedGridEval {
  const PotentialModel* p = nullptr;
  double mu = 0.0, k = 0.0;
  Engine engine = Engine::Numerov;
  SolverConfig cfg;
  RadialGrid grid;          // Numerov
  RadialGrid inner, outer;  // CFM
  double anchor = 0.0;
  double match_r = 0.0;     // frozen matching radius (Numerov)

  MismatchResult operator()(double E) const {
    if (engine == Engine::Numerov) {
      const auto r = numerov_mismatch(*p, k, E, grid, match_r);
      return {r.value, r.nodes, r.levels_below};
    }
    const auto r = cfm_mismatch(*p, mu, E, inner, outer, anchor, cfg);
    return {r.value, r.nodes, r.levels_below};
  }

  static FixedGridEval make(const PotentialModel& p, double mu, Engine engine,
                            double e_domain, const SolverConfig& cfg) {
    FixedGridEval ev;
    ev.p = &p;
    ev.mu = mu;
    ev.k = kinetic_coefficient(mu);
    ev.engine = engine;
    ev.cfg = cfg;
    const auto dom = choose_domain(p, ev.k, e_domain, cfg);
    if (engine == Engine::Numerov) {
      ev.grid = build_grid(p, ev.k, e_domain, dom, cfg);
      ev.match_r = dom.r_turn_outer;
    } else {
      ev.anchor = cfg.anchor_r > 0.0 ? cfg.anchor_r : p.well_r();
      ev.inner = build_grid(p, ev.k, e_domain,
                            {dom.r_start, ev.anchor, dom.r_turn_outer}, cfg);
      ev.outer = build_grid(p, ev.k, e_domain,
                            {ev.anchor, dom.r_end, dom.r_turn_outer}, cfg);
    }
    return ev;
  }

  // Same domain with every step exactly divided by `factor` (keeps the
  // Richardson ladder on perfectly nested grids).
  FixedGridEval refined(std::size_t factor) const {
    auto scale = [&](const RadialGrid& g) {
      RadialGrid r = g;
      r.n_steps = g.n_steps * factor;
      r.dw = (g.mapping == GridMapping::Uniform
                  ? (g.r_end - g.r_start)
                  : std::log(g.r_end / g.r_start)) /
             static_cast<double>(r.n_steps);
      return r;
    };
    FixedGridEval ev = *this;
    if (engine == Engine::Numerov) {
      ev.grid = scale(grid);
    } else {
      ev.inner = scale(inner);
      ev.outer = scale(outer);
    }
    return ev;
  }
};

}  // namespace detail

// One bracket per bound level, found by walking the exact eigenvalue count in
// the transformed variable.  Near-threshold scan spacing follows the
// near-dissociation slope so levels nine decades below the well depth are
// still separated.
inline std::vector<LevelBracket> bracket_levels(const PotentialModel& p,
                                                double mu, Engine engine,
                                                const SolverConfig& cfg = {}) {
  if (!p.has_well()) return {};
  const double vmin = p.well_depth();
  const double q = detail::root_exponent(p);
  auto t_of = [&](double E) { return std::pow(-E, q); };
  auto e_of = [&](double t) { return -std::pow(t, 1.0 / q); };

  const double e_floor = -cfg.threshold_floor_ratio * std::abs(vmin);
  const double e_deep = vmin * (1.0 - 1e-9);
  const double t_top = t_of(e_deep);     // largest t (deepest energy)
  const double t_bot = t_of(e_floor);    // smallest t (threshold side)
  if (t_top <= t_bot) return {};

  // Expected level spacing in t.
  double dt_est;
  if (p.tail() && p.tail()->n > 2) {
    dt_est = lb_slope_closed_form(p.tail()->n, p.tail()->Cn, mu);
  } else {
    // Harmonic estimate from the curvature at the minimum.
    const double k = kinetic_coefficient(mu);
    const double rm = p.well_r();
    const double dr = 1e-4 * rm;
    const double v2 =
        (p.eval(rm + dr) - 2.0 * p.eval(rm) + p.eval(rm - dr)) / (dr * dr);
    const double omega = std::sqrt(std::max(v2, 1e-30) * 2.0 * k);
    dt_est = 0.5 * omega / std::sqrt(std::abs(vmin));
  }
  dt_est = std::min(dt_est, (t_top - t_bot) / 8.0);

  auto count_at = [&](double t) {
    return mismatch(p, mu, e_of(t), engine, cfg).levels_below;
  };

  std::vector<LevelBracket> out;
  // March from deep energies toward threshold (t decreasing).
  double t_hi_side = t_top;               // deeper energy endpoint of the step
  int c_deep = count_at(t_hi_side);       // levels below the current deep edge
  const double t_step = dt_est / 3.0;
  while (t_hi_side > t_bot) {
    double t_next = std::max(t_hi_side - t_step, t_bot);
    int c_next = count_at(t_next);
    // c increases as E increases, i.e. as t decreases.
    if (c_next > c_deep) {
      // Subdivide until each bracket holds exactly one level.
      std::vector<std::pair<std::pair<double, int>, std::pair<double, int>>> work{
          {{t_hi_side, c_deep}, {t_next, c_next}}};
      while (!work.empty()) {
        auto [deep, shallow] = work.back();
        work.pop_back();
        if (shallow.second - deep.second == 1 ||
            (deep.first - shallow.first) < 1e-14 * deep.first) {
          for (int v = deep.second; v < shallow.second; ++v)
            out.push_back({v, e_of(deep.first), e_of(shallow.first)});
          continue;
        }
        const double tm = 0.5 * (deep.first + shallow.first);
        const int cm = count_at(tm);
        work.push_back({{tm, cm}, shallow});
        work.push_back({deep, {tm, cm}});
      }
      std::sort(out.begin(), out.end(),
                [](const LevelBracket& a, const LevelBracket& b) { return a.v < b.v; });
    }
    t_hi_side = t_next;
    c_deep = c_next;
  }
  return out;
}

namespace detail {

// Root refinement on a fixed grid: bisection on the eigenvalue count until
// sign-certain, then secant on the matching value with bisection fallback.
inline double refine_root(const FixedGridEval& ev, int v, double t_lo_e,
                          double t_hi_e, double q, double tol_t) {
  auto e_of = [&](double t) { return -std::pow(t, 1.0 / q); };
  // t decreases as E increases: a (deep) has count <= v, b (shallow) > v.
  double ta = t_lo_e;  // larger t, deeper E
  double tb = t_hi_e;  // smaller t, shallower E
  MismatchResult ma = ev(e_of(ta));
  MismatchResult mb = ev(e_of(tb));
  // Re-expand geometrically if this grid's discrete eigenvalue drifted out of
  // the supplied window.
  const double t_cap = std::pow(-ev.p->well_depth() * (1.0 - 1e-9), q);
  double grow = 1e-8;
  int guard = 0;
  while (ma.levels_below > v && ++guard < 80) {
    ta = std::min(ta * (1.0 + grow), t_cap);
    grow *= 2.0;
    ma = ev(e_of(ta));
  }
  grow = 1e-8;
  while (mb.levels_below <= v && ++guard < 160) {
    tb = std::max(tb / (1.0 + grow), 1e-300);
    grow *= 2.0;
    mb = ev(e_of(tb));
  }
  require(ma.levels_below <= v && mb.levels_below > v, errc::solver_failure,
          "refine: bracket lost on the refinement grid");

  auto width_ok = [&](double a, double b) {
    return (a - b) <= tol_t * std::max(std::abs(a), std::abs(b));
  };

  for (int it = 0; it < 400; ++it) {
    if (width_ok(ta, tb)) break;
    // Secant once the matching value has certain opposite signs and the node
    // count matches on both ends (no pole inside).
    if (ma.nodes == mb.nodes && ma.value * mb.value < 0.0) {
      double ts = tb - mb.value * (ta - tb) / (ma.value - mb.value);
      const double margin = 0.05 * (ta - tb);
      if (!(ts > tb + margin && ts < ta - margin)) ts = 0.5 * (ta + tb);
      const MismatchResult ms = ev(e_of(ts));
      if (ms.levels_below <= v) {
        ta = ts;
        ma = ms;
      } else {
        tb = ts;
        mb = ms;
      }
      continue;
    }
    const double tm = 0.5 * (ta + tb);
    const MismatchResult mm = ev(e_of(tm));
    if (mm.levels_below <= v) {
      ta = tm;
      ma = mm;
    } else {
      tb = tm;
      mb = mm;
    }
  }
  return e_of(0.5 * (ta + tb));
}

}  // namespace detail

// Solve level v from its bracket: refinement at the base grid plus
// `halvings` halved-step rungs, Richardson-extrapolated assuming fourth-order
// convergence.  The reported E is the extrapolated value.
inline std::pair<double, AccuracyReport> solve_level(
    const PotentialModel& p, double mu, const LevelBracket& bracket,
    Engine engine, const SolverConfig& cfg = {}) {
  const double q = detail::root_exponent(p);
  const double t_lo = std::pow(-bracket.e_lo, q);  // deep side (larger t)
  const double t_hi = std::pow(-bracket.e_hi, q);

  AccuracyReport rep;
  const int rungs = std::max(2, cfg.halvings + 1);
  const auto base = detail::FixedGridEval::make(p, mu, engine, bracket.e_hi, cfg);
  double ta = t_lo, tb = t_hi;
  for (int rung = 0; rung < rungs; ++rung) {
    const auto ev = rung == 0 ? base : base.refined(std::size_t{1} << rung);
    const double tol = std::max(cfg.tol * 1e-2, 1e-13);
    const double E = detail::refine_root(ev, bracket.v, ta, tb, q, tol);
    rep.h_values.push_back(engine == Engine::Numerov
                               ? ev.grid.step()
                               : std::max(ev.inner.step(), ev.outer.step()));
    rep.E_estimates.push_back(E);
    // Narrow the search window for the next rung around the converged value.
    const double tE = std::pow(-E, q);
    const double pad = std::max(64.0 * tol * tE, 1e-6 * tE);
    ta = tE + pad;
    tb = std::max(tE - pad, 1e-300);
  }
  const std::size_t nr = rep.E_estimates.size();
  const double e_f = rep.E_estimates[nr - 1];
  const double e_c = rep.E_estimates[nr - 2];
  rep.E_extrapolated = (16.0 * e_f - e_c) / 15.0;
  rep.err_estimate = std::abs(e_f - rep.E_extrapolated);
  if (nr >= 3) {
    const double d1 = rep.E_estimates[nr - 2] - rep.E_estimates[nr - 3];
    const double d2 = e_f - e_c;
    if (d2 != 0.0 && d1 / d2 > 0.0) rep.observed_order = std::log2(d1 / d2);
  }
  return {rep.E_extrapolated, rep};
}

// Convenience overload: brackets internally, then solves level v.
inline std::pair<double, AccuracyReport> solve_level(const PotentialModel& p,
                                                     double mu, int v,
                                                     Engine engine,
                                                     const SolverConfig& cfg = {}) {
  const auto brackets = bracket_levels(p, mu, engine, cfg);
  require(v >= 0 && v < static_cast<int>(brackets.size()), errc::solver_failure,
          "solve_level: no bound level with v=" + std::to_string(v));
  return solve_level(p, mu, brackets[static_cast<std::size_t>(v)], engine, cfg);
}

inline LevelSpectrum solve_spectrum(const PotentialModel& p, double mu,
                                    Engine engine, const SolverConfig& cfg = {}) {
  LevelSpectrum spec;
  spec.mu = mu;
  spec.potential_id = p.id();
  spec.engine = engine;
  if (p.has_well())
    spec.threshold_floor =
        cfg.threshold_floor_ratio * std::abs(p.well_depth());
  const auto brackets = bracket_levels(p, mu, engine, cfg);
  for (const auto& br : brackets) {
    try {
      auto [E, rep] = solve_level(p, mu, br, engine, cfg);
      spec.levels.push_back({br.v, E, std::move(rep)});
    } catch (const Error& e) {
      spec.failures.push_back({br.v, e.what()});
    }
  }
  // Monotonicity guard; violations are flagged as failures, not silently kept.
  for (std::size_t i = 1; i < spec.levels.size(); ++i) {
    if (spec.levels[i].E <= spec.levels[i - 1].E)
      spec.failures.push_back(
          {spec.levels[i].v, "non-monotone eigenvalue sequence"});
  }
  return spec;
}

}  // namespace vibrelevel
