// Quantum erasure: measuring the record system in the superposition basis
// {|+_n>, |-_n>} so the probe's relative phase becomes observable again,
// plus the Monte Carlo visibility check and the cat-revival unitary.

#pragma once

#include <cstdint>

#include "ewfsim/channels.hpp"
#include "ewfsim/qstate.hpp"

namespace ewfsim {

struct ErasureOutcome {
  std::string branch;            // "plus_n" or "minus_n"
  StateVector conditional_state; // normalized probe state on S
  bool recovered_phase_visible;  // conditional state carries both amplitudes
};

// Basis on the n record qubits m0..m{n-1}: plus_n = (|0..0>+|1..1>)/sqrt(2),
// minus_n = (|0..0>-|1..1>)/sqrt(2), and "other" collecting the complement.
MeasurementBasis erasure_basis(std::size_t n);

// Same basis over an arbitrary subset of record qubits.
MeasurementBasis erasure_basis_for(std::vector<std::string> qubit_names);

// Measures the record part of psi (subsystems S, m0..m{n-1}) in the erasure
// basis and returns the branch together with the conditional probe state.
// An "other" outcome means psi was not of the entangled record form.
ErasureOutcome erase(const StateVector& psi, std::size_t n, double rng_draw);

// Monte Carlo interference visibility |P(match) - P(mismatch)| after erasure
// followed by a Hadamard-basis measurement of S. Full control gives |cos a|;
// a lost qubit or randomized phase gives 0.
double interference_visibility(const RecordModel& model, std::size_t trials,
                               std::uint64_t rng_seed);

// Two-level cat space {A, D} and the revival unitary:
// U|A> = (|A>+|D>)/sqrt(2), U|D> = (|A>-|D>)/sqrt(2).
SubsystemLayout cat_layout();
Operator cat_unitary();

// Hadamard-type basis {plus, minus} on a single named two-level subsystem.
MeasurementBasis hadamard_basis(const std::string& subsystem_name);

}  // namespace ewfsim
