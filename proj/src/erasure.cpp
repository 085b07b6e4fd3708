#include "ewfsim/erasure.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace ewfsim {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

MeasurementBasis erasure_basis_for(std::vector<std::string> qubit_names) {
  if (qubit_names.empty())
    throw std::invalid_argument("erasure_basis: need at least one qubit");
  const std::size_t dim = std::size_t{1} << qubit_names.size();
  std::vector<Cplx> plus(dim, Cplx(0, 0));
  std::vector<Cplx> minus(dim, Cplx(0, 0));
  plus.front() = Cplx(kInvSqrt2, 0);
  plus.back() = Cplx(kInvSqrt2, 0);
  minus.front() = Cplx(kInvSqrt2, 0);
  minus.back() = Cplx(-kInvSqrt2, 0);
  MeasurementBasis basis(std::move(qubit_names),
                         {{"plus_n", {std::move(plus)}}, {"minus_n", {std::move(minus)}}});
  return basis.with_completion();
}

MeasurementBasis erasure_basis(std::size_t n) {
  if (n == 0) throw std::invalid_argument("erasure_basis: n must be >= 1");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("m" + std::to_string(i));
  return erasure_basis_for(std::move(names));
}

ErasureOutcome erase(const StateVector& psi, std::size_t n, double rng_draw) {
  if (psi.layout().count() != n + 1 || !psi.layout().has("S"))
    throw LayoutError("erase: state must live on S plus n record qubits");
  const MeasurementResult result = measure(psi, erasure_basis(n), rng_draw);
  if (result.label == "other")
    throw InvariantViolation("erase: 'other' branch reached; input was not a record state");

  // The post-measurement state is a product of the record branch and the
  // conditional probe state; read off the latter by a partial inner product
  // against the branch vector.
  const MeasurementBasis basis = erasure_basis(n);
  const auto& branch_vec =
      basis.outcomes()[result.label == "plus_n" ? 0 : 1].vectors[0];
  const std::size_t record_dim = branch_vec.size();
  std::vector<Cplx> probe(2, Cplx(0, 0));
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t m = 0; m < record_dim; ++m)
      probe[s] += std::conj(branch_vec[m]) * result.post_state.amplitude(s * record_dim + m);

  SubsystemLayout s_layout({{"S", 2, {"0", "1"}}});
  StateVector conditional = StateVector(std::move(s_layout), std::move(probe)).normalized();
  const bool visible = std::abs(conditional.amplitude(std::size_t{0})) > 1e-6 &&
                       std::abs(conditional.amplitude(std::size_t{1})) > 1e-6;
  return {result.label, std::move(conditional), visible};
}

double interference_visibility(const RecordModel& model, std::size_t trials,
                               std::uint64_t rng_seed) {
  if (trials == 0) throw std::invalid_argument("interference_visibility: trials must be >= 1");
  if (model.lost_qubit_index && *model.lost_qubit_index >= model.n_qubits)
    throw std::invalid_argument("interference_visibility: lost qubit index out of range");

  const MeasurementBasis s_basis = hadamard_basis("S");
  std::size_t matches = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream rng = RngStream::derived(rng_seed, t);
    const double alpha = model.phase_random ? rng.uniform_angle() : model.alpha;
    StateVector psi = build_record_state(model.n_qubits, alpha);

    std::vector<std::string> record_names;
    for (std::size_t i = 0; i < model.n_qubits; ++i)
      record_names.push_back("m" + std::to_string(i));

    if (model.lost_qubit_index) {
      // The escaped qubit decoheres in the computational basis; its outcome is
      // unavailable to the eraser.
      const std::string lost = "m" + std::to_string(*model.lost_qubit_index);
      std::vector<Cplx> zero = {Cplx(1, 0), Cplx(0, 0)};
      std::vector<Cplx> one = {Cplx(0, 0), Cplx(1, 0)};
      MeasurementBasis comp({lost}, {{"0", {zero}}, {"1", {one}}});
      psi = measure(psi, comp, rng.uniform()).post_state;
      std::erase(record_names, lost);
    }

    std::string branch = "plus_n";
    if (!record_names.empty()) {
      const MeasurementResult er =
          measure(psi, erasure_basis_for(record_names), rng.uniform());
      branch = er.label;
      psi = er.post_state;
    }

    const MeasurementResult sr = measure(psi, s_basis, rng.uniform());
    const bool match = (branch == "plus_n" && sr.label == "plus") ||
                       (branch == "minus_n" && sr.label == "minus");
    if (match) ++matches;
  }
  const double p_match = static_cast<double>(matches) / static_cast<double>(trials);
  return std::abs(2.0 * p_match - 1.0);
}

SubsystemLayout cat_layout() {
  return SubsystemLayout({{"cat", 2, {"A", "D"}}});
}

Operator cat_unitary() {
  // Row order (A, D): U|A> = (|A>+|D>)/sqrt(2), U|D> = (|A>-|D>)/sqrt(2).
  std::vector<Cplx> m = {Cplx(kInvSqrt2, 0), Cplx(kInvSqrt2, 0),
                         Cplx(kInvSqrt2, 0), Cplx(-kInvSqrt2, 0)};
  return Operator({"cat"}, std::move(m), true);
}

MeasurementBasis hadamard_basis(const std::string& subsystem_name) {
  std::vector<Cplx> plus = {Cplx(kInvSqrt2, 0), Cplx(kInvSqrt2, 0)};
  std::vector<Cplx> minus = {Cplx(kInvSqrt2, 0), Cplx(-kInvSqrt2, 0)};
  return MeasurementBasis({subsystem_name},
                          {{"plus", {std::move(plus)}}, {"minus", {std::move(minus)}}});
}

}  // namespace ewfsim
