#include "ewfsim/qstate.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace ewfsim {

namespace {

void check_finite(const std::vector<Cplx>& values, const char* what) {
  for (const Cplx& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
  }
}

// Strides of each subsystem position in the packed global index.
std::vector<std::size_t> strides_of(const SubsystemLayout& layout) {
  std::vector<std::size_t> strides(layout.count());
  std::size_t s = 1;
  for (std::size_t i = layout.count(); i-- > 0;) {
    strides[i] = s;
    s *= layout.at(i).dim;
  }
  return strides;
}

// Global-index offsets for every value of the factor spanned by `positions`
// (packed in the order given), holding all other subsystems at 0.
std::vector<std::size_t> factor_offsets(const SubsystemLayout& layout,
                                        std::span<const std::size_t> positions) {
  const auto strides = strides_of(layout);
  std::size_t dim = 1;
  for (std::size_t p : positions) dim *= layout.at(p).dim;
  std::vector<std::size_t> offsets(dim, 0);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t rem = idx;
    for (std::size_t k = positions.size(); k-- > 0;) {
      const std::size_t d = layout.at(positions[k]).dim;
      offsets[idx] += (rem % d) * strides[positions[k]];
      rem /= d;
    }
  }
  return offsets;
}

std::vector<std::size_t> positions_of(const SubsystemLayout& layout,
                                      std::span<const std::string> names) {
  std::vector<std::size_t> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(layout.position_of(n));
  return out;
}

std::vector<std::size_t> complement_positions(const SubsystemLayout& layout,
                                              std::span<const std::size_t> positions) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < layout.count(); ++i)
    if (std::find(positions.begin(), positions.end(), i) == positions.end())
      out.push_back(i);
  return out;
}

Eigen::MatrixXcd to_eigen(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  Eigen::MatrixXcd m(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m(r, c) = rho.entry(r, c);
  return m;
}

}  // namespace

StateVector::StateVector(SubsystemLayout layout, std::vector<Cplx> amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
  if (amps_.size() != layout_.dim())
    throw LayoutError("StateVector: amplitude count does not match layout dimension");
  check_finite(amps_, "StateVector");
}

StateVector StateVector::basis_state(const SubsystemLayout& layout,
                                     std::span<const std::string> labels) {
  if (labels.size() != layout.count())
    throw LayoutError("basis_state: one label per subsystem required");
  std::vector<std::size_t> locals(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    locals[i] = layout.label_index(layout.at(i).name, labels[i]);
  std::vector<Cplx> amps(layout.dim(), Cplx(0, 0));
  amps[layout.pack(locals)] = Cplx(1, 0);
  return StateVector(layout, std::move(amps));
}

Cplx StateVector::amplitude(std::span<const std::string> labels) const {
  std::vector<std::size_t> locals(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    locals[i] = layout_.label_index(layout_.at(i).name, labels[i]);
  return amps_[layout_.pack(locals)];
}

double StateVector::norm() const {
  double s = 0;
  for (const Cplx& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n < 1e-300) throw InvariantViolation("normalize: zero-norm state");
  std::vector<Cplx> amps = amps_;
  for (Cplx& a : amps) a /= n;
  return StateVector(layout_, std::move(amps));
}

DensityMatrix::DensityMatrix(SubsystemLayout layout, std::vector<Cplx> entries)
    : layout_(std::move(layout)), entries_(std::move(entries)) {
  if (entries_.size() != layout_.dim() * layout_.dim())
    throw LayoutError("DensityMatrix: entry count does not match layout dimension");
  check_finite(entries_, "DensityMatrix");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const std::size_t d = psi.dim();
  std::vector<Cplx> entries(d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      entries[r * d + c] = psi.amplitude(r) * std::conj(psi.amplitude(c));
  return DensityMatrix(psi.layout(), std::move(entries));
}

Cplx DensityMatrix::trace() const {
  Cplx t(0, 0);
  for (std::size_t i = 0; i < dim(); ++i) t += entry(i, i);
  return t;
}

double DensityMatrix::purity() const {
  double p = 0;
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < dim(); ++c)
      p += std::real(entry(r, c) * entry(c, r));
  return p;
}

double DensityMatrix::max_hermiticity_defect() const {
  double m = 0;
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < dim(); ++c)
      m = std::max(m, std::abs(entry(r, c) - std::conj(entry(c, r))));
  return m;
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(*this));
  return solver.eigenvalues().minCoeff();
}

double DensityMatrix::max_entrywise_distance(const DensityMatrix& other) const {
  if (dim() != other.dim()) throw LayoutError("entrywise distance: dimension mismatch");
  double m = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    m = std::max(m, std::abs(entries_[i] - other.entries_[i]));
  return m;
}

Operator::Operator(std::vector<std::string> acts_on, std::vector<Cplx> matrix, bool unitary)
    : acts_on_(std::move(acts_on)), matrix_(std::move(matrix)), unitary_(unitary) {
  const double d = std::sqrt(static_cast<double>(matrix_.size()));
  dim_ = static_cast<std::size_t>(std::llround(d));
  if (dim_ * dim_ != matrix_.size())
    throw std::invalid_argument("Operator: matrix is not square");
  check_finite(matrix_, "Operator");
  if (unitary_ && unitarity_defect() > kTol)
    throw InvariantViolation("Operator flagged unitary fails U^dag U = I");
}

Operator Operator::identity(std::vector<std::string> acts_on, std::size_t dim) {
  std::vector<Cplx> m(dim * dim, Cplx(0, 0));
  for (std::size_t i = 0; i < dim; ++i) m[i * dim + i] = Cplx(1, 0);
  return Operator(std::move(acts_on), std::move(m), true);
}

double Operator::unitarity_defect() const {
  double worst = 0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      Cplx v(0, 0);
      for (std::size_t k = 0; k < dim_; ++k)
        v += std::conj(matrix_[k * dim_ + r]) * matrix_[k * dim_ + c];
      if (r == c) v -= Cplx(1, 0);
      worst = std::max(worst, std::abs(v));
    }
  }
  return worst;
}

MeasurementBasis::MeasurementBasis(std::vector<std::string> acts_on,
                                   std::vector<MeasurementOutcome> outcomes)
    : acts_on_(std::move(acts_on)), outcomes_(std::move(outcomes)) {
  if (outcomes_.empty() || outcomes_[0].vectors.empty())
    throw std::invalid_argument("MeasurementBasis: no outcome vectors");
  subspace_dim_ = outcomes_[0].vectors[0].size();
  for (const auto& o : outcomes_) {
    for (const auto& v : o.vectors) {
      if (v.size() != subspace_dim_)
        throw std::invalid_argument("MeasurementBasis: inconsistent vector length");
      check_finite(v, "MeasurementBasis");
    }
  }
}

MeasurementBasis MeasurementBasis::with_completion(const std::string& label) const {
  std::vector<std::vector<Cplx>> have;
  for (const auto& o : outcomes_)
    for (const auto& v : o.vectors) have.push_back(v);

  std::vector<std::vector<Cplx>> complement;
  for (std::size_t i = 0; i < subspace_dim_; ++i) {
    std::vector<Cplx> v(subspace_dim_, Cplx(0, 0));
    v[i] = Cplx(1, 0);
    for (const auto& u : have) {
      Cplx c(0, 0);
      for (std::size_t k = 0; k < subspace_dim_; ++k) c += std::conj(u[k]) * v[k];
      for (std::size_t k = 0; k < subspace_dim_; ++k) v[k] -= c * u[k];
    }
    double n2 = 0;
    for (const Cplx& x : v) n2 += std::norm(x);
    if (n2 > 1e-18) {
      const double n = std::sqrt(n2);
      for (Cplx& x : v) x /= n;
      have.push_back(v);
      complement.push_back(std::move(v));
    }
  }
  if (complement.empty()) return *this;
  std::vector<MeasurementOutcome> outcomes = outcomes_;
  outcomes.push_back({label, std::move(complement)});
  return MeasurementBasis(acts_on_, std::move(outcomes));
}

double MeasurementBasis::completeness_defect() const {
  const std::size_t d = subspace_dim_;
  std::vector<Cplx> sum(d * d, Cplx(0, 0));
  for (const auto& o : outcomes_)
    for (const auto& v : o.vectors)
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) sum[r * d + c] += v[r] * std::conj(v[c]);
  double worst = 0;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      Cplx v = sum[r * d + c];
      if (r == c) v -= Cplx(1, 0);
      worst = std::max(worst, std::abs(v));
    }
  return worst;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  SubsystemLayout layout = a.layout().concat(b.layout());
  std::vector<Cplx> amps(layout.dim());
  const std::size_t db = b.dim();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < db; ++j) amps[i * db + j] = a.amplitude(i) * b.amplitude(j);
  return StateVector(std::move(layout), std::move(amps));
}

StateVector apply_operator(const Operator& op, const StateVector& psi) {
  const SubsystemLayout& layout = psi.layout();
  const auto positions = positions_of(layout, op.acts_on());
  std::size_t subdim = 1;
  for (std::size_t p : positions) subdim *= layout.at(p).dim;
  if (subdim != op.dim())
    throw LayoutError("apply_operator: operator dimension does not match subsystems");

  const auto sub_off = factor_offsets(layout, positions);
  const auto rest_positions = complement_positions(layout, positions);
  const auto rest_off = factor_offsets(layout, rest_positions);

  const auto& m = op.matrix();
  std::vector<Cplx> out(psi.dim(), Cplx(0, 0));
  std::vector<Cplx> x(subdim);
  for (std::size_t rest : rest_off) {
    for (std::size_t s = 0; s < subdim; ++s) x[s] = psi.amplitude(sub_off[s] + rest);
    for (std::size_t r = 0; r < subdim; ++r) {
      Cplx y(0, 0);
      for (std::size_t c = 0; c < subdim; ++c) y += m[r * subdim + c] * x[c];
      out[sub_off[r] + rest] = y;
    }
  }
  return StateVector(layout, std::move(out));
}

DensityMatrix partial_trace(const StateVector& psi, std::span<const std::string> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  const SubsystemLayout& layout = psi.layout();
  const auto keep_pos_unsorted = positions_of(layout, keep);
  auto keep_pos = keep_pos_unsorted;
  std::sort(keep_pos.begin(), keep_pos.end());  // kept order follows the layout
  const auto keep_off = factor_offsets(layout, keep_pos);
  const auto traced_pos = complement_positions(layout, keep_pos);
  const auto traced_off = factor_offsets(layout, traced_pos);

  std::vector<std::string> keep_names;
  for (std::size_t p : keep_pos) keep_names.push_back(layout.at(p).name);
  SubsystemLayout reduced = layout.sublayout(keep_names);

  const std::size_t dk = keep_off.size();
  std::vector<Cplx> entries(dk * dk, Cplx(0, 0));
  for (std::size_t a = 0; a < dk; ++a)
    for (std::size_t b = 0; b < dk; ++b) {
      Cplx v(0, 0);
      for (std::size_t t : traced_off)
        v += psi.amplitude(keep_off[a] + t) * std::conj(psi.amplitude(keep_off[b] + t));
      entries[a * dk + b] = v;
    }
  return DensityMatrix(std::move(reduced), std::move(entries));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::string> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  const SubsystemLayout& layout = rho.layout();
  auto keep_pos = positions_of(layout, keep);
  std::sort(keep_pos.begin(), keep_pos.end());
  const auto keep_off = factor_offsets(layout, keep_pos);
  const auto traced_pos = complement_positions(layout, keep_pos);
  const auto traced_off = factor_offsets(layout, traced_pos);

  std::vector<std::string> keep_names;
  for (std::size_t p : keep_pos) keep_names.push_back(layout.at(p).name);
  SubsystemLayout reduced = layout.sublayout(keep_names);

  const std::size_t dk = keep_off.size();
  std::vector<Cplx> entries(dk * dk, Cplx(0, 0));
  for (std::size_t a = 0; a < dk; ++a)
    for (std::size_t b = 0; b < dk; ++b) {
      Cplx v(0, 0);
      for (std::size_t t : traced_off) v += rho.entry(keep_off[a] + t, keep_off[b] + t);
      entries[a * dk + b] = v;
    }
  return DensityMatrix(std::move(reduced), std::move(entries));
}

StateVector project(const StateVector& psi, const MeasurementBasis& basis,
                    std::size_t outcome_index) {
  const SubsystemLayout& layout = psi.layout();
  const auto positions = positions_of(layout, basis.acts_on());
  std::size_t subdim = 1;
  for (std::size_t p : positions) subdim *= layout.at(p).dim;
  if (subdim != basis.subspace_dim())
    throw LayoutError("project: basis dimension does not match subsystems");
  const auto sub_off = factor_offsets(layout, positions);
  const auto rest_positions = complement_positions(layout, positions);
  const auto rest_off = factor_offsets(layout, rest_positions);

  std::vector<Cplx> out(psi.dim(), Cplx(0, 0));
  for (const auto& v : basis.outcomes().at(outcome_index).vectors) {
    for (std::size_t rest : rest_off) {
      Cplx c(0, 0);
      for (std::size_t s = 0; s < subdim; ++s)
        c += std::conj(v[s]) * psi.amplitude(sub_off[s] + rest);
      for (std::size_t s = 0; s < subdim; ++s) out[sub_off[s] + rest] += c * v[s];
    }
  }
  return StateVector(layout, std::move(out));
}

std::vector<std::pair<std::string, double>> born_distribution(const StateVector& psi,
                                                              const MeasurementBasis& basis) {
  if (basis.completeness_defect() > kTol)
    throw std::invalid_argument("born_distribution: basis is not complete");
  std::vector<std::pair<std::string, double>> dist;
  dist.reserve(basis.outcomes().size());
  for (std::size_t i = 0; i < basis.outcomes().size(); ++i) {
    const StateVector proj = project(psi, basis, i);
    const double n = proj.norm();
    dist.emplace_back(basis.outcomes()[i].label, n * n);
  }
  return dist;
}

MeasurementResult measure(const StateVector& psi, const MeasurementBasis& basis,
                          double rng_draw) {
  if (rng_draw < 0.0 || rng_draw >= 1.0)
    throw std::invalid_argument("measure: rng_draw outside [0,1)");
  const auto dist = born_distribution(psi, basis);
  double cum = 0;
  std::size_t chosen = dist.size();
  for (std::size_t i = 0; i < dist.size(); ++i) {
    cum += dist[i].second;
    if (rng_draw < cum) {
      chosen = i;
      break;
    }
  }
  if (chosen == dist.size()) {
    // Rounding pushed the cumulative total below the draw; take the last
    // outcome with nonzero probability.
    for (std::size_t i = dist.size(); i-- > 0;)
      if (dist[i].second > 0) {
        chosen = i;
        break;
      }
    if (chosen == dist.size())
      throw InvariantViolation("measure: all outcome probabilities are zero");
  }
  StateVector proj = project(psi, basis, chosen);
  if (proj.norm() < 1e-150)
    throw InvariantViolation("measure: selected outcome has zero-norm projection");
  return {dist[chosen].first, proj.normalized(), dist[chosen].second};
}

Cplx overlap(const StateVector& a, const StateVector& b) {
  if (!(a.layout() == b.layout())) throw LayoutError("overlap: layout mismatch");
  Cplx v(0, 0);
  for (std::size_t i = 0; i < a.dim(); ++i) v += std::conj(a.amplitude(i)) * b.amplitude(i);
  return v;
}

}  // namespace ewfsim
