#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "vibrelevel/errors.hpp"

// Embedded reference table: two independent level lists for the same
// long-range well (an earlier published list and a canonical-function
// recalculation) with their scaled-energy-difference columns.  Energies in
// cm^-1.  A plain-text mirror lives in data/reference_levels.csv.

namespace vibrelevel {

struct PaperRow {
  int index = 0;  // 1-based level index; vibrational v = index - 1
  double e_stwalley = 0.0;
  std::optional<double> sed_stwalley;
  std::optional<double> e_cfm;
  std::optional<double> sed_cfm;
};

inline const std::array<PaperRow, 40>& paper_table() {
  static const std::array<PaperRow, 40> rows = {{
      {1, -1.7887, std::nullopt, -1.7864488, std::nullopt},
      {2, -1.5617, 0.9566, -1.5595638, 0.9571},
      {3, -1.3566, 0.9698, -1.3546072, 0.9702},
      {4, -1.1723, 0.9820, -1.1703990, 0.9827},
      {5, -1.0075, 0.9939, -1.0057071, 0.9946},
      {6, -0.86087, 1.0057, -0.8592631, 1.0059},
      {7, -0.73125, 1.0159, -0.7297908, 1.0164},
      {8, -0.61729, 1.0259, -0.6159534, 1.0265},
      {9, -0.51770, 1.0352, -0.5164882, 1.0358},
      {10, -0.43120, 1.0440, -0.4301217, 1.0444},
      {11, -0.35657, 1.0520, -0.3556148, 1.0525},
      {12, -0.29261, 1.0595, -0.2917693, 1.0601},
      {13, -0.23820, 1.0662, -0.2374560, 1.0669},
      {14, -0.19224, 1.0727, -0.1916002, 1.0732},
      {15, -0.15374, 1.0783, -0.1531893, 1.0789},
      {16, -0.12176, 1.0832, -0.1212854, 1.0840},
      {17, -9.5438e-02, 1.0873, -9.5022588e-02, 1.0886},
      {18, -7.3940e-02, 1.0929, -7.3608452e-02, 1.0926},
      {19, -5.6599e-02, 1.0957, -5.6325744e-02, 1.0962},
      {20, -4.2754e-02, 1.0988, -4.2530867e-02, 1.0994},
      {21, -3.1831e-02, 1.1014, -3.1650591e-02, 1.1021},
      {22, -2.3323e-02, 1.1039, -2.3180420e-02, 1.1044},
      {23, -1.6791e-02, 1.1058, -1.6679756e-02, 1.1064},
      {24, -1.1854e-02, 1.1075, -1.1768655e-02, 1.1081},
      {25, -8.1873e-03, 1.1088, -8.1228816e-03, 1.1094},
      {26, -5.5165e-03, 1.1100, -5.4689541e-03, 1.1106},
      {27, -3.6136e-03, 1.1109, -3.5793742e-03, 1.1115},
      {28, -2.2916e-03, 1.1116, -2.2676168e-03, 1.1122},
      {29, -1.3995e-03, 1.1122, -1.3831806e-03, 1.1128},
      {30, -8.1747e-04, 1.1128, -8.0683859e-04, 1.1133},
      {31, -4.5276e-04, 1.1132, -4.4613249e-04, 1.1138},
      {32, -2.3503e-04, 1.1135, -2.3110168e-04, 1.1142},
      {33, -1.1252e-04, 1.1141, -1.1035443e-04, 1.1146},
      {34, -4.8564e-05, 1.1146, -4.7468345e-05, 1.1152},
      {35, -1.8262e-05, 1.1153, -1.7767388e-05, 1.1160},
      {36, -5.6648e-06, 1.1165, -5.4747950e-06, 1.1172},
      {37, -1.3175e-06, 1.1185, -1.2597092e-06, 1.1194},
      {38, -1.9247e-07, 1.1148, -1.2716754e-07, 1.2814},
      {39, -1.1215e-08, 1.1131, std::nullopt, std::nullopt},
      {40, -4.1916e-11, 1.1131, std::nullopt, std::nullopt},
  }};
  return rows;
}

inline std::vector<double> reference_energies_stwalley() {
  std::vector<double> e;
  for (const auto& r : paper_table()) e.push_back(r.e_stwalley);
  return e;
}

inline std::vector<double> reference_energies_cfm() {
  std::vector<double> e;
  for (const auto& r : paper_table())
    if (r.e_cfm) e.push_back(*r.e_cfm);
  return e;
}

// FNV-1a over a canonical formatting of every cell; pinned in tests so any
// transcription edit surfaces.
inline std::uint64_t reference_table_checksum() {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  char buf[48];
  auto cell = [&](const std::optional<double>& v) {
    if (!v) {
      mix("-");
      return;
    }
    std::snprintf(buf, sizeof buf, "%.10e", *v);
    mix(buf);
  };
  for (const auto& r : paper_table()) {
    std::snprintf(buf, sizeof buf, "%d", r.index);
    mix(buf);
    cell(r.e_stwalley);
    cell(r.sed_stwalley);
    cell(r.e_cfm);
    cell(r.sed_cfm);
  }
  return h;
}

struct CompareEntry {
  int index = 0;        // shared 1-based index
  double e_a = 0.0;
  double e_b = 0.0;
  double delta_e = 0.0;       // e_b - e_a
  double delta_t = 0.0;       // (-e_b)^kappa - (-e_a)^kappa
  double rel_t = 0.0;         // |delta_t| / (-e_a)^kappa
};

struct CompareReport {
  double kappa = 0.0;
  std::vector<CompareEntry> entries;
  std::vector<int> only_a, only_b;  // unmatched indices
  double max_rel_t = 0.0;
  int max_rel_index = 0;
};

// Aligned per-level diff of two lists indexed from `first_index`.
inline CompareReport compare_spectra(const std::vector<double>& a,
                                     const std::vector<double>& b,
                                     double kappa = 1.0 / 6.0,
                                     int first_index_a = 1,
                                     int first_index_b = 1) {
  CompareReport rep;
  rep.kappa = kappa;
  const int lo = std::max(first_index_a, first_index_b);
  const int hi_a = first_index_a + static_cast<int>(a.size()) - 1;
  const int hi_b = first_index_b + static_cast<int>(b.size()) - 1;
  const int hi = std::min(hi_a, hi_b);
  require(lo <= hi, errc::domain_error, "compare: index ranges do not overlap");
  for (int i = first_index_a; i < lo; ++i) rep.only_a.push_back(i);
  for (int i = first_index_b; i < lo; ++i) rep.only_b.push_back(i);
  for (int i = hi + 1; i <= hi_a; ++i) rep.only_a.push_back(i);
  for (int i = hi + 1; i <= hi_b; ++i) rep.only_b.push_back(i);
  for (int i = lo; i <= hi; ++i) {
    const double ea = a[static_cast<std::size_t>(i - first_index_a)];
    const double eb = b[static_cast<std::size_t>(i - first_index_b)];
    require(ea < 0.0 && eb < 0.0, errc::domain_error,
            "compare: energies must be negative");
    const double ta = std::pow(-ea, kappa);
    const double tb = std::pow(-eb, kappa);
    CompareEntry ce{i, ea, eb, eb - ea, tb - ta, std::abs(tb - ta) / ta};
    if (ce.rel_t > rep.max_rel_t) {
      rep.max_rel_t = ce.rel_t;
      rep.max_rel_index = i;
    }
    rep.entries.push_back(ce);
  }
  return rep;
}

}  // namespace vibrelevel
