#pragma once

#include <cmath>
#include <vector>

#include "ewfsim/qstate.hpp"
#include "ewfsim/rng.hpp"

namespace ewfsim::testing {

inline StateVector random_state(const SubsystemLayout& layout, RngStream& rng) {
  std::vector<Cplx> amps(layout.dim());
  for (Cplx& a : amps) a = Cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
  return StateVector(layout, std::move(amps)).normalized();
}

inline double fidelity(const StateVector& a, const StateVector& b) {
  return std::abs(overlap(a, b));
}

}  // namespace ewfsim::testing
