#include "ewfsim/channels.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace ewfsim {

namespace {

SubsystemLayout record_layout(std::size_t n) {
  std::vector<Subsystem> subs;
  subs.push_back({"S", 2, {"0", "1"}});
  for (std::size_t i = 0; i < n; ++i)
    subs.push_back({"m" + std::to_string(i), 2, {"0", "1"}});
  return SubsystemLayout(std::move(subs));
}

}  // namespace

StateVector build_record_state(std::size_t n, double alpha) {
  if (n == 0) throw std::invalid_argument("build_record_state: n must be >= 1");
  SubsystemLayout layout = record_layout(n);
  std::vector<Cplx> amps(layout.dim(), Cplx(0, 0));
  const double r = 1.0 / std::sqrt(2.0);
  amps.front() = Cplx(r, 0);                                // |0>|0...0>
  amps.back() = std::polar(r, alpha);                       // e^{i alpha} |1>|1...1>
  return StateVector(std::move(layout), std::move(amps));
}

DensityMatrix lose_qubit(const StateVector& psi, std::size_t qubit_position) {
  if (qubit_position >= psi.layout().count())
    throw std::invalid_argument("lose_qubit: qubit position out of range");
  std::vector<std::string> keep;
  for (std::size_t i = 0; i < psi.layout().count(); ++i)
    if (i != qubit_position) keep.push_back(psi.layout().at(i).name);
  return partial_trace(psi, keep);
}

DensityMatrix phase_average(const std::function<StateVector(double)>& builder,
                            std::size_t samples, std::uint64_t rng_seed) {
  if (samples == 0) throw std::invalid_argument("phase_average: samples must be >= 1");
  const StateVector first = builder(0.0);
  const std::size_t d = first.dim();
  std::vector<Cplx> acc(d * d, Cplx(0, 0));
  for (std::size_t k = 0; k < samples; ++k) {
    RngStream rng = RngStream::derived(rng_seed, k);
    const StateVector psi = builder(rng.uniform_angle());
    if (!(psi.layout() == first.layout()))
      throw LayoutError("phase_average: builder changed layout");
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        acc[r * d + c] += psi.amplitude(r) * std::conj(psi.amplitude(c));
  }
  const double w = 1.0 / static_cast<double>(samples);
  for (Cplx& v : acc) v *= w;
  return DensityMatrix(first.layout(), std::move(acc));
}

DensityMatrix dephase_step(const DensityMatrix& rho, const MeasurementBasis& pointer_basis,
                           double gamma, double dt) {
  if (gamma < 0) throw std::invalid_argument("dephase_step: gamma must be >= 0");
  if (dt <= 0) throw std::invalid_argument("dephase_step: dt must be > 0");
  const std::size_t d = rho.dim();
  if (pointer_basis.subspace_dim() != d)
    throw LayoutError("dephase_step: pointer basis must cover the full space");
  if (pointer_basis.completeness_defect() > kTol)
    throw std::invalid_argument("dephase_step: pointer basis is not complete");

  // rho' = e^{-g dt} rho + (1 - e^{-g dt}) sum_k P_k rho P_k
  std::vector<Cplx> diag_part(d * d, Cplx(0, 0));
  for (const auto& outcome : pointer_basis.outcomes()) {
    // P rho P with P = sum_v |v><v|: accumulate <v|rho|w> v w^dag over the
    // outcome's vectors.
    const auto& vs = outcome.vectors;
    for (const auto& v : vs) {
      for (const auto& w : vs) {
        Cplx c(0, 0);
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t s = 0; s < d; ++s)
            c += std::conj(v[r]) * rho.entry(r, s) * w[s];
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t s = 0; s < d; ++s)
            diag_part[r * d + s] += c * v[r] * std::conj(w[s]);
      }
    }
  }
  const double damp = std::exp(-gamma * dt);
  std::vector<Cplx> out(d * d);
  for (std::size_t i = 0; i < d * d; ++i)
    out[i] = damp * rho.entries()[i] + (1.0 - damp) * diag_part[i];
  return DensityMatrix(rho.layout(), std::move(out));
}

bool erasure_possible(const RecordModel& model) {
  return !model.lost_qubit_index.has_value() && !model.phase_random;
}

}  // namespace ewfsim
