#pragma once

#include "vibrelevel/errors.hpp"

// Unit conventions shared by the whole library: energies in cm^-1, lengths in
// Angstrom, masses in amu.  The radial equation is always handled pre-scaled
// as y''(r) = f(r) y(r) with f = (V - E) / kinetic_coefficient(mu), so this
// header is the single conversion site.

namespace vibrelevel {

// CODATA 2018 adjustment. h and c are exact by SI definition; hbar is the
// exact-derived value h/2pi rounded to the published 10 digits; the atomic
// mass constant carries the 2018 uncertainty in its last two digits.
namespace codata {
inline constexpr double planck_J_s = 6.62607015e-34;
inline constexpr double hbar_J_s = 1.054571817e-34;
inline constexpr double c_m_per_s = 299792458.0;
inline constexpr double amu_kg = 1.66053906660e-27;
}  // namespace codata

// cm^-1 per Joule (E / hc with c in cm/s).
inline constexpr double wavenumber_per_joule =
    1.0 / (codata::planck_J_s * codata::c_m_per_s * 100.0);

// hbar^2 / (2 * 1 amu * 1 A^2) expressed in cm^-1; equals 16.857629171 cm^-1.
inline constexpr double hbar2_over_2m_cm1 =
    codata::hbar_J_s * codata::hbar_J_s / (2.0 * codata::amu_kg * 1e-20) *
    wavenumber_per_joule;

struct UnitSystem {
  const char* energy_unit = "cm^-1";
  const char* length_unit = "angstrom";
  const char* mass_unit = "amu";
  double hbar2_over_2m = hbar2_over_2m_cm1;
};

inline constexpr UnitSystem unit_system() { return UnitSystem{}; }

// hbar^2/(2 mu) in cm^-1 A^2 for a reduced mass given in amu.
inline double kinetic_coefficient(double mu_amu) {
  require(mu_amu > 0.0, errc::domain_error, "reduced mass must be positive");
  return hbar2_over_2m_cm1 / mu_amu;
}

}  // namespace vibrelevel
