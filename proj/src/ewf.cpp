#include "ewfsim/ewf.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace ewfsim {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Local index helpers matching ewf_layout() label order.
enum FbarIdx { kFbarInit = 0, kHmem = 1, kTmem = 2 };
enum SbarIdx { kHeads = 0, kTails = 1 };
enum FIdx { kFInit = 0, kUp = 1, kDn = 2 };
enum SIdx { kUpPrimed = 0, kDnPrimed = 1, kUpUnprimed = 2, kDnUnprimed = 3 };

std::vector<Cplx> identity_matrix(std::size_t d) {
  std::vector<Cplx> m(d * d, Cplx(0, 0));
  for (std::size_t i = 0; i < d; ++i) m[i * d + i] = Cplx(1, 0);
  return m;
}

// Phased transposition a <-> b: forward phase on column a, conjugate on the
// reverse. Leaves every other basis state alone, so the completion never
// disturbs the protocol states.
void phased_swap(std::vector<Cplx>& m, std::size_t d, std::size_t a, std::size_t b,
                 Cplx phase) {
  m[a * d + a] = Cplx(0, 0);
  m[b * d + b] = Cplx(0, 0);
  m[b * d + a] = phase;
  m[a * d + b] = std::conj(phase);
}

}  // namespace

SubsystemLayout ewf_layout() {
  return SubsystemLayout({
      {"Fbar", 3, {"i", "Hmem", "Tmem"}},
      {"Sbar", 2, {"h", "t"}},
      {"F", 3, {"i", "Up", "Dn"}},
      {"S", 4, {"up'", "dn'", "up", "dn"}},
  });
}

StateVector step1_prepare() {
  SubsystemLayout layout = ewf_layout();
  std::vector<Cplx> amps(layout.dim(), Cplx(0, 0));
  const std::size_t heads[] = {kFbarInit, kHeads, kFInit, kDnPrimed};
  const std::size_t tails[] = {kFbarInit, kTails, kFInit, kDnPrimed};
  amps[layout.pack(heads)] = Cplx(std::sqrt(1.0 / 3.0), 0);
  amps[layout.pack(tails)] = Cplx(std::sqrt(2.0 / 3.0), 0);
  return StateVector(std::move(layout), std::move(amps));
}

Operator coin_interaction_op(double alpha_bar) {
  // Basis index on Fbar x Sbar: fbar*2 + sbar.
  const std::size_t d = 6;
  auto m = identity_matrix(d);
  phased_swap(m, d, kFbarInit * 2 + kHeads, kHmem * 2 + kHeads, Cplx(1, 0));
  phased_swap(m, d, kFbarInit * 2 + kTails, kTmem * 2 + kTails,
              std::polar(1.0, alpha_bar));
  return Operator({"Fbar", "Sbar"}, std::move(m), true);
}

Operator spin_prep_op() {
  // Basis index on Fbar x S: fbar*4 + s. Rotation fires only in the
  // (Tmem, primed) block.
  const std::size_t d = 12;
  auto m = identity_matrix(d);
  const std::size_t up = kTmem * 4 + kUpPrimed;
  const std::size_t dn = kTmem * 4 + kDnPrimed;
  m[up * d + up] = Cplx(kInvSqrt2, 0);
  m[dn * d + up] = Cplx(-kInvSqrt2, 0);
  m[dn * d + dn] = Cplx(kInvSqrt2, 0);
  m[up * d + dn] = Cplx(kInvSqrt2, 0);
  return Operator({"Fbar", "S"}, std::move(m), true);
}

Operator move_spin_op() {
  const std::size_t d = 4;
  std::vector<Cplx> m(d * d, Cplx(0, 0));
  m[kUpUnprimed * d + kUpPrimed] = Cplx(1, 0);
  m[kUpPrimed * d + kUpUnprimed] = Cplx(1, 0);
  m[kDnUnprimed * d + kDnPrimed] = Cplx(1, 0);
  m[kDnPrimed * d + kDnUnprimed] = Cplx(1, 0);
  return Operator({"S"}, std::move(m), true);
}

Operator spin_measurement_op(double alpha) {
  // Basis index on F x S: f*4 + s. Acts only on unprimed positions; F cannot
  // reach a spin still inside the other lab.
  const std::size_t d = 12;
  auto m = identity_matrix(d);
  phased_swap(m, d, kFInit * 4 + kUpUnprimed, kUp * 4 + kUpUnprimed, Cplx(1, 0));
  phased_swap(m, d, kFInit * 4 + kDnUnprimed, kDn * 4 + kDnUnprimed,
              std::polar(1.0, alpha));
  return Operator({"F", "S"}, std::move(m), true);
}

StateVector step2_coin_interaction(const StateVector& psi, double alpha_bar) {
  return apply_operator(coin_interaction_op(alpha_bar), psi);
}

StateVector step3_prepare_spin(const StateVector& psi) {
  return apply_operator(spin_prep_op(), psi);
}

StateVector step4_move_spin(const StateVector& psi) {
  return apply_operator(move_spin_op(), psi);
}

StateVector step5_spin_measurement_interaction(const StateVector& psi, double alpha) {
  return apply_operator(spin_measurement_op(alpha), psi);
}

StateVector protocol_state(double alpha_bar, double alpha) {
  StateVector psi = step1_prepare();
  psi = step2_coin_interaction(psi, alpha_bar);
  psi = step3_prepare_spin(psi);
  psi = step4_move_spin(psi);
  return step5_spin_measurement_interaction(psi, alpha);
}

MeasurementBasis wbar_basis() {
  const std::size_t d = 6;
  std::vector<Cplx> plus(d, Cplx(0, 0)), minus(d, Cplx(0, 0));
  const std::size_t hh = kHmem * 2 + kHeads;
  const std::size_t tt = kTmem * 2 + kTails;
  plus[hh] = Cplx(kInvSqrt2, 0);
  plus[tt] = Cplx(kInvSqrt2, 0);
  minus[hh] = Cplx(kInvSqrt2, 0);
  minus[tt] = Cplx(-kInvSqrt2, 0);
  MeasurementBasis basis({"Fbar", "Sbar"},
                         {{"plus", {std::move(plus)}}, {"minus", {std::move(minus)}}});
  return basis.with_completion();
}

MeasurementBasis w_basis() {
  const std::size_t d = 12;
  std::vector<Cplx> plus(d, Cplx(0, 0)), minus(d, Cplx(0, 0));
  const std::size_t upup = kUp * 4 + kUpUnprimed;
  const std::size_t dndn = kDn * 4 + kDnUnprimed;
  plus[upup] = Cplx(kInvSqrt2, 0);
  plus[dndn] = Cplx(kInvSqrt2, 0);
  minus[upup] = Cplx(kInvSqrt2, 0);
  minus[dndn] = Cplx(-kInvSqrt2, 0);
  MeasurementBasis basis({"F", "S"},
                         {{"plus", {std::move(plus)}}, {"minus", {std::move(minus)}}});
  return basis.with_completion();
}

ProtocolResult run_protocol(const PhaseConfig& phases, RngStream& rng) {
  double alpha_bar, alpha;
  if (phases.correlated && !phases.alpha_bar && !phases.alpha) {
    alpha_bar = alpha = rng.uniform_angle();
  } else {
    alpha_bar = phases.alpha_bar ? *phases.alpha_bar : rng.uniform_angle();
    alpha = phases.alpha ? *phases.alpha : rng.uniform_angle();
  }

  StateVector psi = protocol_state(alpha_bar, alpha);
  const MeasurementResult wbar = measure(psi, wbar_basis(), rng.uniform());
  const MeasurementResult w = measure(wbar.post_state, w_basis(), rng.uniform());
  if (wbar.label == "other" || w.label == "other")
    throw InvariantViolation("run_protocol: 'other' outcome reached");
  return {std::move(psi), wbar.label, w.label, wbar.probability, w.probability,
          {alpha_bar, alpha}};
}

ProtocolResult run_protocol(const PhaseConfig& phases, std::uint64_t rng_seed) {
  RngStream rng(rng_seed);
  return run_protocol(phases, rng);
}

Cplx psi5_overlap_formula(double alpha_bar, double alpha) {
  return (std::polar(1.0, alpha) + std::polar(1.0, alpha_bar + alpha) +
          std::polar(1.0, alpha_bar)) /
         3.0;
}

KastnerResult kastner_extension(const PhaseConfig& phases, std::uint64_t rng_seed) {
  RngStream rng(rng_seed);
  double alpha_bar, alpha;
  if (phases.correlated && !phases.alpha_bar && !phases.alpha) {
    alpha_bar = alpha = rng.uniform_angle();
  } else {
    alpha_bar = phases.alpha_bar ? *phases.alpha_bar : rng.uniform_angle();
    alpha = phases.alpha ? *phases.alpha : rng.uniform_angle();
  }
  const StateVector psi5 = protocol_state(0.0, 0.0);
  const StateVector state = protocol_state(alpha_bar, alpha);
  const Cplx ov = overlap(psi5, state);
  const double p = std::norm(ov);
  const bool confirmed = rng.uniform() < p;
  return {confirmed ? "1" : "0", p, {alpha_bar, alpha}};
}

}  // namespace ewfsim
