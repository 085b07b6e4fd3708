#include "ewfsim/agents.hpp"

#include "ewfsim/channels.hpp"

namespace ewfsim {

void validate_model(const EvolutionModel& model) {
  const bool fixed = model.phase_config.alpha_bar.has_value() &&
                     model.phase_config.alpha.has_value();
  const bool random = !model.phase_config.alpha_bar.has_value() &&
                      !model.phase_config.alpha.has_value();
  if (model.kind == EvolutionKind::UnitaryControlled && !fixed)
    throw std::invalid_argument("unitary_controlled model requires fixed phases");
  if (model.kind == EvolutionKind::ObjectiveCollapse && !random)
    throw std::invalid_argument("objective_collapse model requires random phases");
}

Prediction predict(ReasoningRule rule, const EvolutionModel& model,
                   const std::string& wbar_outcome) {
  if (wbar_outcome != "plus" && wbar_outcome != "minus")
    throw std::invalid_argument("predict: wbar outcome must be plus or minus");
  switch (rule) {
    case ReasoningRule::A1:
      // Naive certainty chain: minus implies |-', Up up>, implies tails,
      // implies psi5', implies W sees plus.
      if (wbar_outcome == "minus") return {PredictionContent::CertainPlus};
      return {PredictionContent::Uncertain};
    case ReasoningRule::A2:
      // Unitarity-aware: "I see tails" is one term of an entangled state, so
      // no certainty is ever warranted.
      return {PredictionContent::Uncertain};
    case ReasoningRule::A3:
      // Erasure-qualified certainty: the A1 chain applies only when the tails
      // record is permanent, unerased, and the continuation is unitary. A
      // collapse-style evolution never satisfies the unitary-continuation leg.
      if (model.record_permanent && model.kind == EvolutionKind::UnitaryControlled &&
          wbar_outcome == "minus")
        return {PredictionContent::CertainPlus};
      return {PredictionContent::Uncertain};
  }
  throw std::logic_error("predict: unknown rule");
}

ContradictionStats contradiction_rate(ReasoningRule rule, const EvolutionModel& model,
                                      std::size_t trials, std::uint64_t rng_seed) {
  if (trials == 0) throw std::invalid_argument("contradiction_rate: trials must be >= 1");
  validate_model(model);

  std::size_t contradictions = 0;
  std::map<std::string, std::size_t> counts;
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream rng = RngStream::derived(rng_seed, t);
    const ProtocolResult run = run_protocol(model.phase_config, rng);
    const Prediction pred = predict(rule, model, run.wbar_outcome);
    bool contradiction = false;
    if (pred.content == PredictionContent::CertainPlus)
      contradiction = run.w_outcome != "plus";
    else if (pred.content == PredictionContent::CertainMinus)
      contradiction = run.w_outcome != "minus";
    if (contradiction) ++contradictions;
    ++counts[run.wbar_outcome + "," + run.w_outcome];
  }
  return {static_cast<double>(contradictions) / static_cast<double>(trials),
          contradictions, trials, std::move(counts)};
}

bool is_observation(const EvolutionModel& model) {
  RecordModel record;
  record.phase_random = model.kind == EvolutionKind::ObjectiveCollapse;
  if (model.record_permanent) record.lost_qubit_index = 0;
  return !erasure_possible(record);
}

const char* to_string(ReasoningRule rule) {
  switch (rule) {
    case ReasoningRule::A1: return "A1";
    case ReasoningRule::A2: return "A2";
    case ReasoningRule::A3: return "A3";
  }
  return "?";
}

const char* to_string(EvolutionKind kind) {
  return kind == EvolutionKind::UnitaryControlled ? "unitary" : "collapse";
}

const char* to_string(PredictionContent content) {
  switch (content) {
    case PredictionContent::CertainPlus: return "certain_plus";
    case PredictionContent::CertainMinus: return "certain_minus";
    case PredictionContent::Uncertain: return "uncertain";
  }
  return "?";
}

}  // namespace ewfsim
