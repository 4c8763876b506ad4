#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ovqite/errors.hpp"
#include "ovqite/rng.hpp"
#include "ovqite/state.hpp"
#include "support.hpp"

using namespace ovqite;

TEST(StateVector, StartsInAllZeros) {
  const StateVector s(3);
  EXPECT_EQ(s.dimension(), 8u);
  EXPECT_EQ(s[0], Amplitude(1.0));
  EXPECT_NEAR(s.norm(), 1.0, 1e-15);
}

TEST(StateVector, RejectsBadAmplitudes) {
  EXPECT_THROW(StateVector::from_amplitudes({1.0, 0.0, 0.0}), DimensionError);
  EXPECT_THROW(StateVector::from_amplitudes({1.0, 1.0}), ValidationError);
  EXPECT_THROW(StateVector::basis(2, 4), ValidationError);
}

TEST(StateVector, BitstringIsQubitZeroFirst) {
  EXPECT_EQ(bitstring(0b001, 3), "100");
  EXPECT_EQ(bitstring(0b110, 3), "011");
}

TEST(Gates, MatchDenseMatrices) {
  const std::size_t n = 3;
  const std::vector<Gate> gates = {Gate::ry(0, 0.3), Gate::ry(2, -1.1), Gate::cnot(0, 1),
                                   Gate::cnot(2, 0), Gate::h(1), Gate::sdg(2), Gate::x(0),
                                   Gate::cnot(1, 2)};
  const oracle::Vec psi0 = oracle::random_state(n, 3);
  for (const auto& g : gates) {
    const StateVector s = apply_gate(oracle::from_vec(psi0), g);
    const oracle::Vec expected = oracle::gate(n, g) * psi0;
    EXPECT_LE((oracle::to_vec(s) - expected).norm(), 1e-12) << to_string(g);
  }
}

TEST(Gates, RyRotatesZeroToCosSin) {
  StateVector s(1);
  s.apply(Gate::ry(0, 0.8));
  EXPECT_NEAR(s[0].real(), std::cos(0.4), 1e-15);
  EXPECT_NEAR(s[1].real(), std::sin(0.4), 1e-15);
}

TEST(Gates, RejectInvalidQubits) {
  StateVector s(2);
  EXPECT_THROW(s.apply(Gate::ry(2, 0.1)), ValidationError);
  EXPECT_THROW(s.apply(Gate::cnot(1, 1)), ValidationError);
}

TEST(Expectation, MatchesDenseOracle) {
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 4; ++n) {
    const oracle::Vec psi = oracle::random_state(n, 100 + n);
    const StateVector s = oracle::from_vec(psi);
    for (int k = 0; k < 40; ++k) {
      const PauliString p = oracle::random_string(n, rng);
      EXPECT_NEAR(expectation(s, p), oracle::expect(psi, oracle::dense(p)), 1e-12);
    }
  }
}

TEST(Expectation, SumRejectsNonHermitian) {
  PauliSum h(1);
  h.add(PauliString::parse("iZ"), 1.0);
  EXPECT_THROW(expectation_sum(StateVector(1), h), ValidationError);
}

TEST(Expectation, BasisStateValues) {
  const StateVector s = StateVector::basis(2, 0b01);
  EXPECT_NEAR(expectation(s, PauliString::parse("ZI")), -1.0, 1e-15);
  EXPECT_NEAR(expectation(s, PauliString::parse("IZ")), 1.0, 1e-15);
  EXPECT_NEAR(expectation(s, PauliString::parse("XI")), 0.0, 1e-15);
}

TEST(Sampling, CountsSumToShotsAndFollowProbabilities) {
  const std::vector<double> p = {0.1, 0.2, 0.3, 0.4};
  auto rng = derive_stream(42, {1});
  const std::uint64_t shots = 200000;
  const Counts c = sample_counts(p, shots, rng);
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    total += c[k];
    const double mean = p[k] * shots;
    const double sd = std::sqrt(shots * p[k] * (1 - p[k]));
    EXPECT_LE(std::abs(c[k] - mean), 5 * sd) << k;
  }
  EXPECT_EQ(total, shots);
}

TEST(Sampling, ChiSquareOverManySmallDraws) {
  // 1000 draws of 50 shots from a 3-outcome distribution.
  const std::vector<double> p = {0.5, 0.3, 0.2};
  auto rng = derive_stream(9, {2});
  std::vector<double> sum(3, 0.0);
  for (int r = 0; r < 1000; ++r) {
    const Counts c = sample_counts(p, 50, rng);
    for (int k = 0; k < 3; ++k) sum[k] += c[k];
  }
  double chi2 = 0;
  for (int k = 0; k < 3; ++k) {
    const double e = p[k] * 50000;
    chi2 += (sum[k] - e) * (sum[k] - e) / e;
  }
  EXPECT_LT(chi2, 13.8);  // 99.9% quantile for 2 degrees of freedom
}

TEST(Sampling, DeterministicForFixedStream) {
  const oracle::Vec psi = oracle::random_state(3, 8);
  const StateVector s = oracle::from_vec(psi);
  auto r1 = derive_stream(5, {1, 2});
  auto r2 = derive_stream(5, {1, 2});
  EXPECT_EQ(sample_bitstrings(s, 1000, r1), sample_bitstrings(s, 1000, r2));
  auto r3 = derive_stream(5, {1, 3});
  EXPECT_NE(sample_bitstrings(s, 1000, r2), sample_bitstrings(s, 1000, r3));
}

TEST(Sampling, OutcomeCountEdgeCases) {
  auto rng = derive_stream(1, {});
  EXPECT_EQ(sample_outcome_count(0.0, 100, rng), 0u);
  EXPECT_EQ(sample_outcome_count(1.0, 100, rng), 100u);
  EXPECT_THROW(sample_outcome_count(1.5, 100, rng), ValidationError);
}

TEST(Sampling, ProbabilitiesSumToOne) {
  const StateVector s = oracle::from_vec(oracle::random_state(4, 77));
  double total = 0;
  for (double p : probabilities(s)) total += p;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Rng, DerivedSeedsDependOnEveryCoordinate) {
  EXPECT_NE(derive_seed(1, {0, 1}), derive_seed(1, {1, 0}));
  EXPECT_NE(derive_seed(1, {0}), derive_seed(2, {0}));
  EXPECT_EQ(derive_seed(3, {4, 5}), derive_seed(3, {4, 5}));
}
