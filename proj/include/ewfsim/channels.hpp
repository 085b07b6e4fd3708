// Decoherence and permanent-record models: the probe+record entangled state,
// qubit loss, phase randomization, pure dephasing, and the predicate saying
// whether a record can still be quantum-erased.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "ewfsim/qstate.hpp"
#include "ewfsim/rng.hpp"

namespace ewfsim {

struct RecordModel {
  std::size_t n_qubits = 1;
  double alpha = 0.0;
  std::optional<std::size_t> lost_qubit_index;  // record-qubit index in [0, n)
  bool phase_random = false;                    // when true, alpha is resampled per trial
};

// (|0>|0...0> + e^{i alpha} |1>|1...1>)/sqrt(2) over subsystems S, m0..m{n-1}.
StateVector build_record_state(std::size_t n, double alpha);

// Partial trace over one qubit; qubit_position 0 is the probe S, 1..n are the
// record qubits m0..m{n-1}.
DensityMatrix lose_qubit(const StateVector& psi, std::size_t qubit_position);

// (1/samples) * sum_k |psi(a_k)><psi(a_k)| with a_k uniform iid on [0, 2*pi).
DensityMatrix phase_average(const std::function<StateVector(double)>& builder,
                            std::size_t samples, std::uint64_t rng_seed);

// Pure dephasing toward the pointer basis: diagonal blocks kept, off-diagonal
// blocks damped by exp(-gamma*dt). The basis must be complete on rho's full
// space.
DensityMatrix dephase_step(const DensityMatrix& rho, const MeasurementBasis& pointer_basis,
                           double gamma, double dt);

// True iff nothing was lost and the phase is stable and reproducible.
bool erasure_possible(const RecordModel& model);

}  // namespace ewfsim
