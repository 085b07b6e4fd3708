// Closed-form gravitational-sensitivity estimates for the cat-superposition
// discussion: accumulated phase, the g-resolution for a pi phase shift, and
// the field of the cat itself.

#pragma once

#include <stdexcept>

namespace ewfsim::estimates {

inline constexpr double kHbar = 1.054571817e-34;  // J s (CODATA)
inline constexpr double kG = 6.67430e-11;         // m^3 kg^-1 s^-2 (CODATA)

// m*g*dx*t / hbar, in radians.
double accumulated_phase(double mass_kg, double g_ms2, double dx_m, double t_s);

// The change in g that shifts the accumulated phase by pi: pi*hbar/(m*dx*t).
double delta_g_for_pi(double mass_kg, double dx_m, double t_s);

// Newtonian field G*m/r^2.
double gravitational_acceleration(double mass_kg, double r_m);

}  // namespace ewfsim::estimates
