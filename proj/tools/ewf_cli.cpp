// Command-line harness for the extended Wigner's friend simulation:
// protocol runs, contradiction rates, phase sweeps, erasure visibility,
// record models and the gravitational estimates, with json/csv/table output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <regex>
#include <string>

#include "ewfsim/agents.hpp"
#include "ewfsim/channels.hpp"
#include "ewfsim/erasure.hpp"
#include "ewfsim/estimates.hpp"
#include "ewfsim/ewf.hpp"

using json = nlohmann::ordered_json;
using namespace ewfsim;
using std::numbers::pi;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInvariant = 3;

// Accepts a decimal value, the literal "random", or fractions of pi such as
// "pi", "2pi/3", "-pi/2".
std::optional<double> parse_phase(const std::string& text) {
  if (text == "random") return std::nullopt;
  static const std::regex pi_form(R"(^([+-]?)(\d+(?:\.\d+)?)?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d+)?))?$)");
  std::smatch m;
  if (std::regex_match(text, m, pi_form)) {
    double value = pi;
    if (m[2].matched) value *= std::stod(m[2].str());
    if (m[3].matched) value /= std::stod(m[3].str());
    if (m[1].str() == "-") value = -value;
    return value;
  }
  try {
    std::size_t consumed = 0;
    const double value = std::stod(text, &consumed);
    if (consumed != text.size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse phase '" + text +
                                "' (expected radians, 'Npi/M' or 'random')");
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string cell_to_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return fmt(v.get<double>());
  if (v.is_null()) return "";
  return v.dump();
}

// RFC-4180: comma separated, CRLF line endings, header from the first row.
std::string to_csv(const json& rows) {
  std::string out;
  if (rows.empty()) return out;
  bool first = true;
  for (const auto& [key, value] : rows[0].items()) {
    (void)value;
    if (!first) out += ",";
    out += csv_escape(key);
    first = false;
  }
  out += "\r\n";
  for (const auto& row : rows) {
    first = true;
    for (const auto& [key, value] : row.items()) {
      (void)key;
      if (!first) out += ",";
      out += csv_escape(cell_to_string(value));
      first = false;
    }
    out += "\r\n";
  }
  return out;
}

std::string to_table(const json& report) {
  std::string out = report["command"].get<std::string>();
  out += " (seed " + cell_to_string(report["seed"]) + ")\n";
  const json& rows = report["results"];
  if (!rows.empty()) {
    std::vector<std::string> keys;
    std::vector<std::size_t> widths;
    for (const auto& [key, value] : rows[0].items()) {
      (void)value;
      keys.push_back(key);
      widths.push_back(key.size());
    }
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : rows) {
      std::vector<std::string> line;
      for (std::size_t i = 0; i < keys.size(); ++i) {
        line.push_back(cell_to_string(row[keys[i]]));
        widths[i] = std::max(widths[i], line.back().size());
      }
      cells.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string>& line) {
      for (std::size_t i = 0; i < line.size(); ++i) {
        out += line[i];
        if (i + 1 < line.size()) out += std::string(widths[i] - line[i].size() + 2, ' ');
      }
      out += "\n";
    };
    emit(keys);
    for (const auto& line : cells) emit(line);
  }
  if (report.contains("exact_reference_values")) {
    out += "reference values:\n";
    for (const auto& [key, value] : report["exact_reference_values"].items())
      out += "  " + key + " = " + cell_to_string(value["value"]) + "  (" +
             value["provenance"].get<std::string>() + ")\n";
  }
  return out;
}

int emit(const json& report, const std::string& format, const std::string& out_path) {
  std::string text;
  if (format == "json") text = report.dump(2) + "\n";
  else if (format == "csv") text = to_csv(report["results"]);
  else text = to_table(report);

  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << text;
  }
  return kExitOk;
}

json phase_to_json(const std::optional<double>& p) {
  if (!p) return "random";
  return *p;
}

struct CommonOpts {
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::string alpha = "0";
  std::string alpha_bar = "0";
  std::string format = "table";
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_phases = true) {
  cmd->add_option("--trials", opts.trials, "number of Monte Carlo trials")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts.seed, "RNG seed");
  if (with_phases) {
    cmd->add_option("--alpha", opts.alpha, "spin-interaction phase (radians, 'Npi/M' or 'random')");
    cmd->add_option("--alpha-bar", opts.alpha_bar, "coin-interaction phase");
  }
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  cmd->add_option("--out", opts.out_path, "write output to file instead of stdout");
}

json base_report(const std::string& command, const CommonOpts& opts, json config) {
  json report;
  report["command"] = command;
  config["format"] = opts.format;
  report["config"] = std::move(config);
  report["results"] = json::array();
  report["seed"] = opts.seed;
  return report;
}

int cmd_protocol(const CommonOpts& opts) {
  const PhaseConfig phases{parse_phase(opts.alpha_bar), parse_phase(opts.alpha), false};
  std::map<std::string, std::size_t> counts = {
      {"plus,plus", 0}, {"plus,minus", 0}, {"minus,plus", 0}, {"minus,minus", 0}};
  json trial_record;
  for (std::size_t t = 0; t < opts.trials; ++t) {
    RngStream rng = RngStream::derived(opts.seed, t);
    const ProtocolResult r = run_protocol(phases, rng);
    ++counts[r.wbar_outcome + "," + r.w_outcome];
    if (opts.trials == 1) {
      trial_record = {{"alpha_bar", r.phases_used.first},
                      {"alpha", r.phases_used.second},
                      {"wbar_outcome", r.wbar_outcome},
                      {"w_outcome", r.w_outcome},
                      {"wbar_prob", r.wbar_prob},
                      {"w_prob", r.w_prob}};
    }
  }

  const bool zero_phases = phases.alpha_bar && phases.alpha &&
                           *phases.alpha_bar == 0.0 && *phases.alpha == 0.0;
  const std::map<std::string, double> exact_zero = {{"plus,plus", 3.0 / 4.0},
                                                    {"plus,minus", 1.0 / 12.0},
                                                    {"minus,plus", 1.0 / 12.0},
                                                    {"minus,minus", 1.0 / 12.0}};
  json report = base_report("protocol", opts,
                            {{"trials", opts.trials},
                             {"alpha", phase_to_json(phases.alpha)},
                             {"alpha_bar", phase_to_json(phases.alpha_bar)}});
  for (const auto& [outcome, count] : counts) {
    json row = {{"outcome", outcome},
                {"count", count},
                {"frequency", static_cast<double>(count) / opts.trials}};
    row["exact"] = zero_phases ? json(exact_zero.at(outcome)) : json(nullptr);
    report["results"].push_back(std::move(row));
  }
  if (!trial_record.is_null()) report["trial"] = std::move(trial_record);
  if (zero_phases) {
    report["exact_reference_values"] = {
        {"P_wbar_plus",
         {{"value", 5.0 / 6.0},
          {"provenance", "closed-form Born probability of the superobserver plus outcome "
                         "on the step-5 state"}}},
        {"P_wbar_minus",
         {{"value", 1.0 / 6.0},
          {"provenance", "closed-form Born probability of the superobserver minus outcome "
                         "on the step-5 state"}}},
        {"P_minus_minus",
         {{"value", 1.0 / 12.0},
          {"provenance", "closed-form joint probability of the Frauchiger-Renner "
                         "contradiction event at controlled phases"}}}};
  }
  return emit(report, opts.format, opts.out_path);
}

int cmd_contradiction(const CommonOpts& opts, const std::string& rule_name,
                      const std::string& model_name) {
  ReasoningRule rule = rule_name == "A1"   ? ReasoningRule::A1
                       : rule_name == "A2" ? ReasoningRule::A2
                                           : ReasoningRule::A3;
  EvolutionModel model;
  if (model_name == "unitary") {
    model.kind = EvolutionKind::UnitaryControlled;
    model.phase_config = {parse_phase(opts.alpha_bar), parse_phase(opts.alpha), false};
    model.record_permanent = false;
  } else {
    model.kind = EvolutionKind::ObjectiveCollapse;
    model.phase_config = {std::nullopt, std::nullopt, false};
    model.record_permanent = true;
  }

  const ContradictionStats stats = contradiction_rate(rule, model, opts.trials, opts.seed);
  const double half_width =
      1.96 * std::sqrt(stats.rate * (1 - stats.rate) / static_cast<double>(stats.trials));

  json report = base_report("contradiction", opts,
                            {{"trials", opts.trials},
                             {"rule", rule_name},
                             {"model", model_name},
                             {"alpha", phase_to_json(model.phase_config.alpha)},
                             {"alpha_bar", phase_to_json(model.phase_config.alpha_bar)}});
  report["results"].push_back({{"rule", rule_name},
                               {"model", model_name},
                               {"contradictions", stats.contradictions},
                               {"trials", stats.trials},
                               {"rate", stats.rate},
                               {"ci95_low", std::max(0.0, stats.rate - half_width)},
                               {"ci95_high", std::min(1.0, stats.rate + half_width)}});
  for (const auto& [outcome, count] : stats.outcome_counts)
    report["outcome_counts"][outcome] = count;
  report["exact_reference_values"] = {
      {"rate_A1_unitary",
       {{"value", 1.0 / 12.0},
        {"provenance", "every controlled-phase minus,minus event contradicts the naive "
                       "certainty chain"}}},
      {"rate_A2", {{"value", 0.0}, {"provenance", "a rule that never asserts certainty "
                                                  "cannot be contradicted"}}},
      {"rate_A1_collapse",
       {{"value", 1.0 / 4.0},
        {"provenance", "Born probabilities of the equal-weight three-branch mixture "
                       "reached under randomized phases"}}}};
  return emit(report, opts.format, opts.out_path);
}

int cmd_sweep(const CommonOpts& opts, std::size_t grid) {
  json report = base_report("sweep", opts, {{"grid", grid}});
  for (std::size_t i = 0; i < grid; ++i) {
    for (std::size_t j = 0; j < grid; ++j) {
      const double alpha_bar = 2 * pi * static_cast<double>(i) / static_cast<double>(grid);
      const double alpha = 2 * pi * static_cast<double>(j) / static_cast<double>(grid);
      const double p = std::norm(psi5_overlap_formula(alpha_bar, alpha));
      report["results"].push_back({{"alpha_bar", alpha_bar},
                                   {"alpha", alpha},
                                   {"confirm_probability", p}});
    }
  }
  report["exact_reference_values"] = {
      {"max", {{"value", 1.0}, {"provenance", "identical phases leave the step-5 state "
                                              "unchanged"}}},
      {"min",
       {{"value", 0.0},
        {"provenance", "the three branch phases cancel at (alpha, alpha_bar) = "
                       "(2pi/3, 4pi/3)"}}}};
  return emit(report, opts.format, opts.out_path);
}

int cmd_erasure(const CommonOpts& opts, std::size_t n_qubits, std::size_t grid,
                std::optional<std::size_t> lost_qubit, bool phase_random) {
  json report = base_report("erasure", opts,
                            {{"trials", opts.trials},
                             {"n_qubits", n_qubits},
                             {"grid", grid},
                             {"lost_qubit", lost_qubit ? json(*lost_qubit) : json(nullptr)},
                             {"phase_random", phase_random}});
  for (std::size_t k = 0; k < grid; ++k) {
    const double alpha = 2 * pi * static_cast<double>(k) / static_cast<double>(grid);
    RecordModel model{n_qubits, alpha, lost_qubit, phase_random};
    const double v = interference_visibility(model, opts.trials, opts.seed + k);
    report["results"].push_back(
        {{"alpha", alpha},
         {"visibility", v},
         {"reference", erasure_possible(model) ? json(std::abs(std::cos(alpha)))
                                               : json(0.0)},
         {"erasure_possible", erasure_possible(model)}});
  }
  return emit(report, opts.format, opts.out_path);
}

int cmd_record(const CommonOpts& opts, std::size_t n_qubits, std::size_t samples) {
  json report =
      base_report("record", opts, {{"n_qubits", n_qubits}, {"samples", samples}});
  for (int k = 0; k < 8; ++k) {
    const double alpha = 2 * pi * k / 8.0;
    const StateVector psi = build_record_state(n_qubits, alpha);
    const DensityMatrix rho = lose_qubit(psi, n_qubits);  // last record qubit escapes
    double max_offdiag = 0;
    for (std::size_t r = 0; r < rho.dim(); ++r)
      for (std::size_t c = 0; c < rho.dim(); ++c)
        if (r != c) max_offdiag = std::max(max_offdiag, std::abs(rho.entry(r, c)));
    report["results"].push_back({{"alpha", alpha},
                                 {"max_offdiagonal_after_loss", max_offdiag},
                                 {"purity", rho.purity()}});
  }

  const DensityMatrix averaged = phase_average(
      [&](double a) { return build_record_state(n_qubits, a); }, samples, opts.seed);
  double max_coherence = 0;
  for (std::size_t r = 0; r < averaged.dim(); ++r)
    for (std::size_t c = 0; c < averaged.dim(); ++c)
      if (r != c) max_coherence = std::max(max_coherence, std::abs(averaged.entry(r, c)));
  report["phase_average_max_offdiagonal"] = max_coherence;
  report["erasure_possible"] = {
      {"full_control", erasure_possible({n_qubits, 0.0, std::nullopt, false})},
      {"lost_qubit", erasure_possible({n_qubits, 0.0, 0, false})},
      {"random_phase", erasure_possible({n_qubits, 0.0, std::nullopt, true})}};
  return emit(report, opts.format, opts.out_path);
}

int cmd_estimate(const CommonOpts& opts, double mass, double dx, double t, double r) {
  namespace est = ewfsim::estimates;
  const double dg = est::delta_g_for_pi(mass, dx, t);
  const double g_cat = est::gravitational_acceleration(mass, r);
  const double phase = est::accumulated_phase(mass, dg, dx, t);

  json report = base_report("estimate", opts,
                            {{"mass_kg", mass}, {"dx_m", dx}, {"t_s", t}, {"r_m", r}});
  report["results"].push_back({{"quantity", "delta_g_for_pi [m/s^2]"},
                               {"computed", dg},
                               {"reference", 1e-33},
                               {"note", "order-of-magnitude figure"}});
  report["results"].push_back({{"quantity", "gravitational_acceleration [m/s^2]"},
                               {"computed", g_cat},
                               {"reference", 3e-8},
                               {"note", "one-significant-figure value"}});
  report["results"].push_back({{"quantity", "accumulated_phase(delta_g) [rad]"},
                               {"computed", phase},
                               {"reference", pi},
                               {"note", "round-trip identity"}});
  report["exact_reference_values"] = {
      {"delta_g_for_pi",
       {{"value", 1e-33},
        {"provenance", "quoted g-resolution for a pi phase shift of a 4 kg mass over "
                       "10 cm and 1 s"}}},
      {"cat_field",
       {{"value", 3e-8},
        {"provenance", "quoted Newtonian field of a 4 kg mass at 10 cm"}}}};
  return emit(report, opts.format, opts.out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extended Wigner's friend protocol simulator"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string rule = "A1";
  std::string model = "unitary";
  std::size_t grid = 12;
  std::size_t n_qubits = 2;
  std::size_t samples = 20000;
  std::optional<std::size_t> lost_qubit;
  bool phase_random = false;
  double mass = 4.0, dx = 0.1, t_s = 1.0, radius = 0.1;

  CLI::App* protocol = app.add_subcommand("protocol", "run the five-step protocol");
  add_common(protocol, opts);

  CLI::App* contradiction =
      app.add_subcommand("contradiction", "measure agent contradiction rates");
  add_common(contradiction, opts);
  contradiction->add_option("--rule", rule, "reasoning rule")
      ->check(CLI::IsMember({"A1", "A2", "A3"}));
  contradiction->add_option("--model", model, "evolution model")
      ->check(CLI::IsMember({"unitary", "collapse"}));

  CLI::App* sweep = app.add_subcommand("sweep", "confirmation probability over phases");
  add_common(sweep, opts, false);
  sweep->add_option("--grid", grid, "grid points per axis")->check(CLI::Range(2, 1000));

  CLI::App* erasure_cmd = app.add_subcommand("erasure", "interference visibility vs alpha");
  add_common(erasure_cmd, opts, false);
  erasure_cmd->add_option("--n", n_qubits, "record qubits")->check(CLI::PositiveNumber);
  erasure_cmd->add_option("--grid", grid, "alpha grid points")->check(CLI::Range(2, 1000));
  erasure_cmd->add_option("--lost-qubit", lost_qubit, "index of an escaped record qubit");
  erasure_cmd->add_flag("--phase-random", phase_random, "randomize alpha per trial");

  CLI::App* record = app.add_subcommand("record", "permanent-record density matrices");
  add_common(record, opts, false);
  record->add_option("--n", n_qubits, "record qubits")->check(CLI::PositiveNumber);
  record->add_option("--samples", samples, "phase-average samples")
      ->check(CLI::PositiveNumber);

  CLI::App* estimate = app.add_subcommand("estimate", "gravitational sensitivity numbers");
  add_common(estimate, opts, false);
  estimate->add_option("--mass", mass, "superposed mass in kg");
  estimate->add_option("--dx", dx, "separation in m");
  estimate->add_option("--time", t_s, "duration in s");
  estimate->add_option("--radius", radius, "field evaluation distance in m");

  try {
    app.parse(argc, argv);
    if (protocol->parsed()) return cmd_protocol(opts);
    if (contradiction->parsed()) return cmd_contradiction(opts, rule, model);
    if (sweep->parsed()) return cmd_sweep(opts, grid);
    if (erasure_cmd->parsed())
      return cmd_erasure(opts, n_qubits, grid == 12 ? 9 : grid, lost_qubit, phase_random);
    if (record->parsed()) return cmd_record(opts, n_qubits, samples);
    if (estimate->parsed()) return cmd_estimate(opts, mass, dx, t_s, radius);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
