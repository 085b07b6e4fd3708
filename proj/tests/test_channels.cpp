#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "ewfsim/channels.hpp"
#include "ewfsim/erasure.hpp"
#include "test_helpers.hpp"

using namespace ewfsim;
using std::numbers::pi;

TEST_CASE("record state n=1, alpha=0") {
  StateVector psi = build_record_state(1, 0.0);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(psi.amplitude(std::size_t{0}) - Cplx(r, 0)) < kTol);  // |00>
  CHECK(std::abs(psi.amplitude(std::size_t{3}) - Cplx(r, 0)) < kTol);  // |11>
  CHECK(std::abs(psi.amplitude(std::size_t{1})) < kTol);
  CHECK(std::abs(psi.amplitude(std::size_t{2})) < kTol);
}

TEST_CASE("record state n=3, alpha=pi carries the sign") {
  StateVector psi = build_record_state(3, pi);
  CHECK(std::abs(psi.amplitude(psi.dim() - 1) - Cplx(-1.0 / std::sqrt(2.0), 0)) < 1e-12);
}

TEST_CASE("record state normalized for a range of n and alpha") {
  RngStream rng(21);
  for (std::size_t n = 1; n <= 8; ++n)
    CHECK(build_record_state(n, rng.uniform_angle()).norm() ==
          doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(build_record_state(0, 0.0), std::invalid_argument);
}

TEST_CASE("losing a record qubit kills all coherence, independent of alpha") {
  for (double alpha : {0.0, pi / 2, pi, 1.234}) {
    StateVector psi = build_record_state(2, alpha);
    DensityMatrix rho = lose_qubit(psi, 2);  // last record qubit
    // Diagonal 1/2 on |0,0> and |1,1>, zero elsewhere.
    CHECK(std::abs(rho.entry(0, 0) - Cplx(0.5, 0)) < kTol);
    CHECK(std::abs(rho.entry(3, 3) - Cplx(0.5, 0)) < kTol);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c)
        if (r != c) CHECK(std::abs(rho.entry(r, c)) < kTol);
  }
}

TEST_CASE("lose_qubit output is entrywise independent of alpha") {
  DensityMatrix base = lose_qubit(build_record_state(3, 0.0), 1);
  for (int k = 1; k < 16; ++k) {
    DensityMatrix rho = lose_qubit(build_record_state(3, 2 * pi * k / 16.0), 1);
    CHECK(rho.max_entrywise_distance(base) < kTol);
  }
}

TEST_CASE("product state keeps purity 1 after losing a qubit") {
  RngStream rng(22);
  StateVector a = ewfsim::testing::random_state(SubsystemLayout::qubits(2, "a"), rng);
  StateVector b = ewfsim::testing::random_state(SubsystemLayout::qubits(1, "b"), rng);
  DensityMatrix rho = lose_qubit(tensor_product(a, b), 2);
  CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lose_qubit rejects a bad index") {
  CHECK_THROWS_AS(lose_qubit(build_record_state(2, 0.0), 3), std::invalid_argument);
}

TEST_CASE("phase averaging converges to the lost-qubit density matrix") {
  const std::size_t samples = 20000;
  DensityMatrix averaged = phase_average(
      [](double a) { return build_record_state(2, a); }, samples, 77);
  CHECK(std::abs(averaged.entry(0, averaged.dim() - 1)) < 3.0 / std::sqrt(samples));
  CHECK(std::abs(averaged.entry(0, 0) - Cplx(0.5, 0)) < kTol);
  CHECK(std::abs(averaged.entry(averaged.dim() - 1, averaged.dim() - 1) - Cplx(0.5, 0)) <
        kTol);
  CHECK(std::abs(averaged.trace() - Cplx(1, 0)) < kTol);
}

TEST_CASE("phase averaging a constant builder gives a pure state") {
  StateVector fixed = build_record_state(1, 0.3);
  DensityMatrix rho = phase_average([&](double) { return fixed; }, 50, 5);
  CHECK(rho.max_entrywise_distance(DensityMatrix::pure(fixed)) < kTol);
  CHECK_THROWS_AS(phase_average([&](double) { return fixed; }, 0, 5),
                  std::invalid_argument);
}

TEST_CASE("dephasing with gamma=0 is the identity channel") {
  StateVector psi = build_record_state(1, 0.9);
  DensityMatrix rho = DensityMatrix::pure(psi);
  MeasurementBasis pointer =
      MeasurementBasis({"S", "m0"}, {{"00", {{Cplx(1, 0), Cplx(0, 0), Cplx(0, 0), Cplx(0, 0)}}},
                                     {"01", {{Cplx(0, 0), Cplx(1, 0), Cplx(0, 0), Cplx(0, 0)}}},
                                     {"10", {{Cplx(0, 0), Cplx(0, 0), Cplx(1, 0), Cplx(0, 0)}}},
                                     {"11", {{Cplx(0, 0), Cplx(0, 0), Cplx(0, 0), Cplx(1, 0)}}}});
  DensityMatrix out = dephase_step(rho, pointer, 0.0, 1.0);
  CHECK(out.max_entrywise_distance(rho) < kTol);
}

TEST_CASE("dephasing an equal superposition by gamma*dt = ln 2 halves coherence") {
  SubsystemLayout q({{"q", 2, {"0", "1"}}});
  const double r = 1.0 / std::sqrt(2.0);
  DensityMatrix rho = DensityMatrix::pure(StateVector(q, {Cplx(r, 0), Cplx(r, 0)}));
  MeasurementBasis pointer({"q"}, {{"0", {{Cplx(1, 0), Cplx(0, 0)}}},
                                   {"1", {{Cplx(0, 0), Cplx(1, 0)}}}});
  DensityMatrix out = dephase_step(rho, pointer, std::log(2.0), 1.0);
  CHECK(std::abs(out.entry(0, 1) - Cplx(0.25, 0)) < kTol);
  CHECK(std::abs(out.entry(0, 0) - Cplx(0.5, 0)) < kTol);
  CHECK(std::abs(out.trace() - Cplx(1, 0)) < kTol);
  CHECK(out.max_hermiticity_defect() < kTol);
  CHECK(out.min_eigenvalue() > -1e-10);

  // k repeated steps scale the coherence as exp(-k*gamma*dt).
  DensityMatrix iter = rho;
  const double gamma = 0.37, dt = 0.5;
  for (int k = 1; k <= 5; ++k) {
    iter = dephase_step(iter, pointer, gamma, dt);
    CHECK(std::abs(iter.entry(0, 1) - Cplx(0.5 * std::exp(-k * gamma * dt), 0)) < kTol);
  }
}

TEST_CASE("dephase_step rejects bad rates") {
  SubsystemLayout q({{"q", 2, {"0", "1"}}});
  DensityMatrix rho = DensityMatrix::pure(StateVector(q, {Cplx(1, 0), Cplx(0, 0)}));
  MeasurementBasis pointer({"q"}, {{"0", {{Cplx(1, 0), Cplx(0, 0)}}},
                                   {"1", {{Cplx(0, 0), Cplx(1, 0)}}}});
  CHECK_THROWS_AS(dephase_step(rho, pointer, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(dephase_step(rho, pointer, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("erasure_possible predicate") {
  RecordModel full_control{2, 0.4, std::nullopt, false};
  CHECK(erasure_possible(full_control));
  RecordModel lost{2, 0.4, 1, false};
  CHECK_FALSE(erasure_possible(lost));
  RecordModel random_phase{2, 0.0, std::nullopt, true};
  CHECK_FALSE(erasure_possible(random_phase));
}
