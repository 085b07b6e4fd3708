#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "ewfsim/erasure.hpp"
#include "test_helpers.hpp"

using namespace ewfsim;
using ewfsim::testing::fidelity;
using std::numbers::pi;

TEST_CASE("erasure basis n=1 is the Hadamard basis") {
  MeasurementBasis basis = erasure_basis(1);
  const double r = 1.0 / std::sqrt(2.0);
  REQUIRE(basis.outcomes().size() >= 2);
  CHECK(basis.outcomes()[0].label == "plus_n");
  CHECK(std::abs(basis.outcomes()[0].vectors[0][0] - Cplx(r, 0)) < kTol);
  CHECK(std::abs(basis.outcomes()[0].vectors[0][1] - Cplx(r, 0)) < kTol);
  CHECK(std::abs(basis.outcomes()[1].vectors[0][1] - Cplx(-r, 0)) < kTol);
  CHECK(basis.completeness_defect() < kTol);
}

TEST_CASE("erasure basis n=3 spans |000>,|111> and completes to identity") {
  MeasurementBasis basis = erasure_basis(3);
  const auto& plus = basis.outcomes()[0].vectors[0];
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(plus[0] - Cplx(r, 0)) < kTol);
  CHECK(std::abs(plus[7] - Cplx(r, 0)) < kTol);
  for (std::size_t i = 1; i < 7; ++i) CHECK(std::abs(plus[i]) < kTol);
  CHECK(basis.completeness_defect() < kTol);
}

TEST_CASE("erasure identity: the plus/minus decomposition rebuilds psi(alpha)") {
  // (|0>+e^{ia}|1>)|+_n> + (|0>-e^{ia}|1>)|-_n>, over 2, equals psi(alpha).
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int k = 0; k < 16; ++k) {
      const double alpha = 2 * pi * k / 16.0;
      StateVector psi = build_record_state(n, alpha);
      MeasurementBasis basis = erasure_basis(n);
      const std::size_t record_dim = std::size_t{1} << n;
      std::vector<Cplx> rebuilt(psi.dim(), Cplx(0, 0));
      const Cplx phase = std::polar(1.0, alpha);
      const double half = 0.5;
      for (std::size_t m = 0; m < record_dim; ++m) {
        const Cplx plus_m = basis.outcomes()[0].vectors[0][m];
        const Cplx minus_m = basis.outcomes()[1].vectors[0][m];
        rebuilt[m] += half * (plus_m + minus_m);                        // |0>_S part
        rebuilt[record_dim + m] += half * phase * (plus_m - minus_m);   // |1>_S part
      }
      for (std::size_t i = 0; i < psi.dim(); ++i)
        CHECK(std::abs(rebuilt[i] - psi.amplitude(i)) < kTol);
    }
  }
}

TEST_CASE("erase branch probabilities are exactly one half") {
  for (std::size_t n : {1u, 2u, 4u}) {
    for (double alpha : {0.0, 0.7, pi, 5.1}) {
      StateVector psi = build_record_state(n, alpha);
      auto dist = born_distribution(psi, erasure_basis(n));
      CHECK(dist[0].second == doctest::Approx(0.5).epsilon(1e-12));
      CHECK(dist[1].second == doctest::Approx(0.5).epsilon(1e-12));
      if (dist.size() > 2) CHECK(dist[2].second < kTol);
    }
  }
}

TEST_CASE("erase conditional states carry the phase") {
  SubsystemLayout s({{"S", 2, {"0", "1"}}});
  const double r = 1.0 / std::sqrt(2.0);

  // alpha = 0, plus branch -> (|0>+|1>)/sqrt(2)
  ErasureOutcome plus = erase(build_record_state(2, 0.0), 2, 0.25);
  CHECK(plus.branch == "plus_n");
  StateVector expected_plus(s, {Cplx(r, 0), Cplx(r, 0)});
  CHECK(fidelity(plus.conditional_state, expected_plus) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(plus.recovered_phase_visible);

  // alpha = pi/3, minus branch -> (|0> - e^{i pi/3}|1>)/sqrt(2) up to phase
  ErasureOutcome minus = erase(build_record_state(2, pi / 3), 2, 0.75);
  CHECK(minus.branch == "minus_n");
  StateVector expected_minus(s, {Cplx(r, 0), -std::polar(r, pi / 3)});
  CHECK(fidelity(minus.conditional_state, expected_minus) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("erase rejects non-record layouts") {
  RngStream rng(31);
  StateVector psi = ewfsim::testing::random_state(SubsystemLayout::qubits(3), rng);
  CHECK_THROWS_AS(erase(psi, 2, 0.3), LayoutError);
}

TEST_CASE("visibility tracks |cos alpha| under full control") {
  const std::size_t trials = 20000;
  const double tol = 3.0 / std::sqrt(static_cast<double>(trials));
  RecordModel model{2, 0.0, std::nullopt, false};
  CHECK(std::abs(interference_visibility(model, trials, 1) - 1.0) < tol);

  model.alpha = pi / 2;
  CHECK(interference_visibility(model, trials, 2) < tol);

  model.alpha = pi / 3;
  CHECK(std::abs(interference_visibility(model, trials, 3) - 0.5) < tol);
}

TEST_CASE("visibility dies with a lost qubit or a random phase") {
  const std::size_t trials = 20000;
  const double tol = 3.0 / std::sqrt(static_cast<double>(trials));
  RecordModel lost{3, 0.0, 1, false};
  CHECK(interference_visibility(lost, trials, 4) < tol);
  RecordModel random_phase{2, 0.0, std::nullopt, true};
  CHECK(interference_visibility(random_phase, trials, 5) < tol);
}

TEST_CASE("erasure-basis statistics are alpha-independent when erasure is impossible") {
  const std::size_t trials = 8000;
  const double tol = 4.0 / std::sqrt(static_cast<double>(trials));
  RecordModel lost{2, 0.0, 0, false};
  const double v0 = interference_visibility(lost, trials, 6);
  lost.alpha = pi / 4;
  const double v1 = interference_visibility(lost, trials, 6);
  CHECK(std::abs(v0 - v1) < tol);
}

TEST_CASE("cat revival: U on |D> then {A,D} measurement gives P(A) = 1/2") {
  SubsystemLayout cat = cat_layout();
  StateVector dead = StateVector::basis_state(cat, std::array<std::string, 1>{"D"});
  StateVector revived = apply_operator(cat_unitary(), dead);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(revived.amplitude(std::size_t{0}) - Cplx(r, 0)) < kTol);   // |A>
  CHECK(std::abs(revived.amplitude(std::size_t{1}) - Cplx(-r, 0)) < kTol);  // -|D>

  MeasurementBasis ad({"cat"}, {{"A", {{Cplx(1, 0), Cplx(0, 0)}}},
                                {"D", {{Cplx(0, 0), Cplx(1, 0)}}}});
  auto dist = born_distribution(revived, ad);
  CHECK(dist[0].second == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cat_unitary().unitarity_defect() < kTol);
}
