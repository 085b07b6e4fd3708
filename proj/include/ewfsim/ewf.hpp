// The extended Wigner's friend protocol state machine: the four-subsystem
// space Fbar x Sbar x F x S, steps 1-5 with configurable interaction phases,
// the superobserver bases, and the C-qubit confirmation extension.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "ewfsim/qstate.hpp"
#include "ewfsim/rng.hpp"

namespace ewfsim {

// Fbar: {i, Hmem, Tmem}; Sbar: {h, t}; F: {i, Up, Dn};
// S: spin x position = {up', dn', up, dn} (primed = near Fbar). Dim 72.
SubsystemLayout ewf_layout();

// nullopt means "draw uniformly on [0, 2*pi) per trial".
struct PhaseConfig {
  std::optional<double> alpha_bar = 0.0;
  std::optional<double> alpha = 0.0;
  bool correlated = false;  // share one draw between both phases
};

struct ProtocolResult {
  StateVector final_state;
  std::string wbar_outcome;  // "plus" | "minus"
  std::string w_outcome;
  double wbar_prob;          // Born probability of wbar_outcome
  double w_prob;             // conditional probability of w_outcome after wbar
  std::pair<double, double> phases_used;  // (alpha_bar, alpha)
};

// sqrt(1/3)|i h, i dn'> + sqrt(2/3)|i t, i dn'>
StateVector step1_prepare();

// Coin observation on Fbar x Sbar: |i,h> -> |Hmem,h>, |i,t> -> e^{i ab}|Tmem,t>.
StateVector step2_coin_interaction(const StateVector& psi, double alpha_bar);

// Controlled spin preparation: when Fbar = Tmem and the spin sits primed,
// |dn> -> (|dn>+|up>)/sqrt(2), |up> -> (|up>-|dn>)/sqrt(2).
StateVector step3_prepare_spin(const StateVector& psi);

// Position swap primed <-> unprimed on S.
StateVector step4_move_spin(const StateVector& psi);

// Spin observation on F x S (unprimed position only):
// |i,up> -> |Up,up>, |i,dn> -> e^{i a}|Dn,dn>.
StateVector step5_spin_measurement_interaction(const StateVector& psi, double alpha);

// The underlying unitaries, exposed for unitarity checks and composition.
Operator coin_interaction_op(double alpha_bar);
Operator spin_prep_op();
Operator move_spin_op();
Operator spin_measurement_op(double alpha);

// Steps 1-5 composed; phases (0,0) give psi5, general phases give psi5-tilde.
StateVector protocol_state(double alpha_bar, double alpha);

// |+'> = (|Hmem h> + |Tmem t>)/sqrt(2) etc. on Fbar x Sbar, complement "other".
MeasurementBasis wbar_basis();
// |+> = (|Up up> + |Dn dn>)/sqrt(2) etc. on F x S, complement "other".
MeasurementBasis w_basis();

ProtocolResult run_protocol(const PhaseConfig& phases, std::uint64_t rng_seed);
ProtocolResult run_protocol(const PhaseConfig& phases, RngStream& rng);

// Confirmation probability p = |<psi5|state>|^2 for the superobserver's
// psi5-eigenstate measurement; the C qubit is set to "1" on confirmation.
struct KastnerResult {
  std::string c_state;  // "0" | "1"
  double probability;
  std::pair<double, double> phases_used;
};
KastnerResult kastner_extension(const PhaseConfig& phases, std::uint64_t rng_seed);

// Closed form (e^{ia} + e^{i(ab+a)} + e^{iab})/3 for <psi5|psi5-tilde>.
Cplx psi5_overlap_formula(double alpha_bar, double alpha);

}  // namespace ewfsim
