// Dense complex linear algebra over labeled tensor-product spaces:
// state vectors, operators, density matrices, projective measurement,
// partial trace and overlaps. Everything is a value; operations are pure.

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ewfsim/layout.hpp"

namespace ewfsim {

using Cplx = std::complex<double>;

inline constexpr double kTol = 1e-12;

struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class StateVector {
 public:
  StateVector(SubsystemLayout layout, std::vector<Cplx> amplitudes);

  // Computational basis state |labels...>, one label per subsystem in order.
  static StateVector basis_state(const SubsystemLayout& layout,
                                 std::span<const std::string> labels);

  const SubsystemLayout& layout() const { return layout_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Cplx>& amplitudes() const { return amps_; }
  Cplx amplitude(std::size_t i) const { return amps_.at(i); }
  Cplx amplitude(std::span<const std::string> labels) const;

  double norm() const;
  StateVector normalized() const;

 private:
  SubsystemLayout layout_;
  std::vector<Cplx> amps_;
};

class DensityMatrix {
 public:
  DensityMatrix(SubsystemLayout layout, std::vector<Cplx> entries);

  static DensityMatrix pure(const StateVector& psi);

  const SubsystemLayout& layout() const { return layout_; }
  std::size_t dim() const { return layout_.dim(); }
  Cplx entry(std::size_t row, std::size_t col) const { return entries_[row * dim() + col]; }
  const std::vector<Cplx>& entries() const { return entries_; }

  Cplx trace() const;
  double purity() const;  // tr(rho^2)
  double max_hermiticity_defect() const;
  double min_eigenvalue() const;
  double max_entrywise_distance(const DensityMatrix& other) const;

 private:
  SubsystemLayout layout_;
  std::vector<Cplx> entries_;
};

// Square matrix on a named subset of subsystems; identity elsewhere.
// The matrix indexes the acted-on subsystems in the order listed in acts_on
// (row-major, first name most significant).
class Operator {
 public:
  Operator(std::vector<std::string> acts_on, std::vector<Cplx> matrix, bool unitary);

  static Operator identity(std::vector<std::string> acts_on, std::size_t dim);

  const std::vector<std::string>& acts_on() const { return acts_on_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Cplx>& matrix() const { return matrix_; }
  bool is_unitary_flagged() const { return unitary_; }

  // max |(U^dag U - I)_{ij}|
  double unitarity_defect() const;

 private:
  std::vector<std::string> acts_on_;
  std::size_t dim_;
  std::vector<Cplx> matrix_;
  bool unitary_;
};

// One measurement outcome: a label and an orthonormal set spanning a subspace
// of the acted-on factor.
struct MeasurementOutcome {
  std::string label;
  std::vector<std::vector<Cplx>> vectors;
};

class MeasurementBasis {
 public:
  MeasurementBasis(std::vector<std::string> acts_on, std::vector<MeasurementOutcome> outcomes);

  // Adds an outcome collecting the orthogonal complement, built by
  // Gram-Schmidt over canonical basis vectors in index order. No-op when the
  // listed outcomes already span the space.
  MeasurementBasis with_completion(const std::string& label = "other") const;

  const std::vector<std::string>& acts_on() const { return acts_on_; }
  std::size_t subspace_dim() const { return subspace_dim_; }
  const std::vector<MeasurementOutcome>& outcomes() const { return outcomes_; }

  // max deviation of sum-of-projectors from identity on the acted-on factor.
  double completeness_defect() const;

 private:
  std::vector<std::string> acts_on_;
  std::size_t subspace_dim_;
  std::vector<MeasurementOutcome> outcomes_;
};

struct MeasurementResult {
  std::string label;
  StateVector post_state;
  double probability;
};

StateVector tensor_product(const StateVector& a, const StateVector& b);

StateVector apply_operator(const Operator& op, const StateVector& psi);

DensityMatrix partial_trace(const StateVector& psi, std::span<const std::string> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::string> keep);

std::vector<std::pair<std::string, double>> born_distribution(const StateVector& psi,
                                                              const MeasurementBasis& basis);

// Unnormalized projection of psi onto the given outcome's subspace.
StateVector project(const StateVector& psi, const MeasurementBasis& basis,
                    std::size_t outcome_index);

// Born-rule sampling: rng_draw in [0,1) is tested against the cumulative
// distribution in declared outcome order.
MeasurementResult measure(const StateVector& psi, const MeasurementBasis& basis,
                          double rng_draw);

Cplx overlap(const StateVector& a, const StateVector& b);  // <a|b>

}  // namespace ewfsim
