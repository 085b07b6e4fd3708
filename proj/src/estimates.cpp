#include "ewfsim/estimates.hpp"

#include <cmath>
#include <numbers>

namespace ewfsim::estimates {

double accumulated_phase(double mass_kg, double g_ms2, double dx_m, double t_s) {
  if (!std::isfinite(mass_kg) || !std::isfinite(g_ms2) || !std::isfinite(dx_m) ||
      !std::isfinite(t_s))
    throw std::invalid_argument("accumulated_phase: non-finite input");
  if (mass_kg < 0 || dx_m < 0 || t_s < 0)
    throw std::invalid_argument("accumulated_phase: negative mass, separation or time");
  return mass_kg * g_ms2 * dx_m * t_s / kHbar;
}

double delta_g_for_pi(double mass_kg, double dx_m, double t_s) {
  if (mass_kg <= 0 || dx_m <= 0 || t_s <= 0)
    throw std::invalid_argument("delta_g_for_pi: inputs must be positive");
  return std::numbers::pi * kHbar / (mass_kg * dx_m * t_s);
}

double gravitational_acceleration(double mass_kg, double r_m) {
  if (mass_kg < 0) throw std::invalid_argument("gravitational_acceleration: negative mass");
  if (r_m <= 0) throw std::invalid_argument("gravitational_acceleration: radius must be positive");
  return kG * mass_kg / (r_m * r_m);
}

}  // namespace ewfsim::estimates
