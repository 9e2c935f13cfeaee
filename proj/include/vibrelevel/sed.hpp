#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "vibrelevel/errors.hpp"

// Scaled energy differences: sed_i = [(-E_{i-1})^kappa - (-E_i)^kappa] / H,
// the unit fixed point of the near-dissociation law.

namespace vibrelevel {

struct SedEntry {
  int index = 0;     // 1-based level index within the input list (>= 2)
  double energy = 0.0;
  double sed = 0.0;
};

struct SedSequence {
  double kappa = 0.0;
  double H = 0.0;
  std::string h_source;  // "explicit" | "calibrated" | "lb_slope"
  std::string source;    // spectrum / data identifier
  std::vector<SedEntry> entries;
};

namespace detail {

inline void check_energies(const std::vector<double>& e) {
  require(e.size() >= 2, errc::domain_error, "need at least 2 levels");
  for (std::size_t i = 0; i < e.size(); ++i) {
    require(e[i] < 0.0, errc::domain_error, "energies must be negative");
    if (i) require(e[i] > e[i - 1], errc::domain_error,
                   "energies must be strictly increasing");
  }
}

}  // namespace detail

inline SedSequence sed_sequence(const std::vector<double>& energies,
                                double kappa, double H,
                                std::string h_source = "explicit",
                                std::string source = "") {
  detail::check_energies(energies);
  require(H > 0.0, errc::domain_error, "sed: H must be positive");
  require(kappa > 0.0 && kappa < 1.0, errc::domain_error,
          "sed: kappa must lie in (0, 1)");
  SedSequence s;
  s.kappa = kappa;
  s.H = H;
  s.h_source = std::move(h_source);
  s.source = std::move(source);
  s.entries.reserve(energies.size() - 1);
  for (std::size_t i = 1; i < energies.size(); ++i) {
    const double d =
        std::pow(-energies[i - 1], kappa) - std::pow(-energies[i], kappa);
    s.entries.push_back({static_cast<int>(i) + 1, energies[i], d / H});
  }
  return s;
}

// H such that the entry at reference_index (1-based, >= 2) equals target.
inline double calibrate_H(const std::vector<double>& energies, double kappa,
                          int reference_index, double target) {
  detail::check_energies(energies);
  require(reference_index >= 2 &&
              reference_index <= static_cast<int>(energies.size()),
          errc::domain_error, "calibrate_H: reference index out of range");
  require(target > 0.0, errc::domain_error, "calibrate_H: target must be > 0");
  const double ea = -energies[reference_index - 2];
  const double eb = -energies[reference_index - 1];
  const double d = std::pow(ea, kappa) - std::pow(eb, kappa);
  require(d > 0.0, errc::domain_error, "calibrate_H: degenerate level pair");
  return d / target;
}

struct SedRun {
  int first = 0, last = 0;  // entry indices (1-based, inclusive)
  int direction = 0;        // +1 increasing, -1 decreasing
};

struct SedTrendReport {
  std::vector<double> deviations;  // |sed - 1| per entry
  int argmin_index = 0;            // entry index of the closest approach to 1
  double last_deviation = 0.0;
  int approach_from = 0;           // sign(sed_first - 1)
  std::vector<SedRun> runs;        // monotonic-run decomposition of sed values
  std::vector<int> outliers;       // entries whose jump from the previous one
                                   // exceeds 10x the median successive jump
};

inline SedTrendReport sed_trend_report(const SedSequence& s) {
  require(s.entries.size() >= 3, errc::domain_error,
          "trend report needs at least 3 entries");
  SedTrendReport rep;
  rep.deviations.reserve(s.entries.size());
  double best = 0.0;
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    const double d = std::abs(s.entries[i].sed - 1.0);
    rep.deviations.push_back(d);
    if (i == 0 || d < best) {
      best = d;
      rep.argmin_index = s.entries[i].index;
    }
  }
  rep.last_deviation = rep.deviations.back();
  const double f = s.entries.front().sed - 1.0;
  rep.approach_from = (f > 0.0) - (f < 0.0);

  // Monotonic runs over the sed values.
  std::size_t start = 0;
  int dir = 0;
  for (std::size_t i = 1; i < s.entries.size(); ++i) {
    const double step = s.entries[i].sed - s.entries[i - 1].sed;
    const int d = (step > 0.0) - (step < 0.0);
    if (dir == 0) {
      dir = d;
    } else if (d != 0 && d != dir) {
      rep.runs.push_back({s.entries[start].index, s.entries[i - 1].index, dir});
      start = i - 1;
      dir = d;
    }
  }
  if (s.entries.size() > 1 && dir != 0)
    rep.runs.push_back(
        {s.entries[start].index, s.entries.back().index, dir});

  // Outliers: successive jumps far above the median jump.
  std::vector<double> jumps;
  for (std::size_t i = 1; i < s.entries.size(); ++i)
    jumps.push_back(std::abs(s.entries[i].sed - s.entries[i - 1].sed));
  std::vector<double> sorted = jumps;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  if (median > 0.0) {
    for (std::size_t i = 0; i < jumps.size(); ++i)
      if (jumps[i] > 10.0 * median)
        rep.outliers.push_back(s.entries[i + 1].index);
  }
  return rep;
}

}  // namespace vibrelevel
