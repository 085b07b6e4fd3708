// Reasoning rules A1/A2/A3 as prediction functions over observed outcomes,
// plus Monte Carlo contradiction-rate measurement over protocol runs.

#pragma once

#include <cstdint>
#include <map>

#include "ewfsim/ewf.hpp"

namespace ewfsim {

enum class ReasoningRule { A1, A2, A3 };

enum class EvolutionKind { UnitaryControlled, ObjectiveCollapse };

struct EvolutionModel {
  EvolutionKind kind = EvolutionKind::UnitaryControlled;
  PhaseConfig phase_config;
  bool record_permanent = false;
};

// UnitaryControlled requires fixed phases; ObjectiveCollapse realizes collapse
// by per-trial random phases. Throws on an inconsistent combination.
void validate_model(const EvolutionModel& model);

enum class PredictionContent { CertainPlus, CertainMinus, Uncertain };

struct Prediction {
  PredictionContent content = PredictionContent::Uncertain;
};

struct TrialRecord {
  std::pair<double, double> phases;
  std::string wbar_outcome;
  Prediction prediction;
  std::string w_outcome;
  bool contradiction;
};

// A1 on wbar=minus asserts W will see plus; A2 never asserts certainty; A3
// asserts certainty only when the tails record is permanent and unerased,
// which the collapse model never provides.
Prediction predict(ReasoningRule rule, const EvolutionModel& model,
                   const std::string& wbar_outcome);

struct ContradictionStats {
  double rate;
  std::size_t contradictions;
  std::size_t trials;
  std::map<std::string, std::size_t> outcome_counts;  // "wbar,w" -> count
};

ContradictionStats contradiction_rate(ReasoningRule rule, const EvolutionModel& model,
                                      std::size_t trials, std::uint64_t rng_seed);

// Definition: an interaction counts as an observation iff its record cannot be
// quantum-erased.
bool is_observation(const EvolutionModel& model);

const char* to_string(ReasoningRule rule);
const char* to_string(EvolutionKind kind);
const char* to_string(PredictionContent content);

}  // namespace ewfsim
