#include <gtest/gtest.h>

#include <random>

#include "ovqite/errors.hpp"
#include "ovqite/pauli.hpp"
#include "support.hpp"

using namespace ovqite;
using P = PauliString;

TEST(PauliString, ParseAndPrint) {
  const P p = P::parse("-iXYZI");
  EXPECT_EQ(p.num_qubits(), 4u);
  EXPECT_EQ(p.phase_power(), 3);
  EXPECT_EQ(p[0], Pauli::X);
  EXPECT_EQ(p[2], Pauli::Z);
  EXPECT_EQ(p.to_string(), "XYZI");
  EXPECT_EQ(p.to_signed_string(), "-iXYZI");
  EXPECT_EQ(P::parse(p.to_signed_string()), p);
  EXPECT_EQ(P::parse("+ZZ").phase_power(), 0);
  EXPECT_EQ(P::parse("iII").phase_power(), 1);
  EXPECT_THROW(P::parse(""), ValidationError);
  EXPECT_THROW(P::parse("XQ"), ValidationError);
  EXPECT_THROW(P::parse("xz"), ValidationError);
}

TEST(PauliString, Masks) {
  const P p = P::parse("XYZI");
  EXPECT_EQ(p.x_mask(), 0b0011u);
  EXPECT_EQ(p.z_mask(), 0b0110u);
  EXPECT_EQ(p.y_count(), 1u);
  EXPECT_EQ(p.weight(), 3u);
  EXPECT_TRUE(P::identity(3).is_identity());
}

TEST(PauliMultiply, Examples) {
  const P a = P::parse("XI") * P::parse("ZI");
  EXPECT_EQ(a.to_string(), "YI");
  EXPECT_EQ(a.phase_power(), 3);  // -i

  const P b = P::parse("ZZ") * P::parse("ZZ");
  EXPECT_TRUE(b.is_identity());
  EXPECT_EQ(b.phase_power(), 0);

  const P c = P::parse("XY") * P::parse("YX");
  EXPECT_EQ(c.to_string(), "ZZ");
  EXPECT_EQ(c.phase_power(), 0);
}

TEST(PauliMultiply, SingleQubitCycle) {
  EXPECT_EQ(P::parse("X") * P::parse("Y"), P::parse("iZ"));
  EXPECT_EQ(P::parse("Y") * P::parse("Z"), P::parse("iX"));
  EXPECT_EQ(P::parse("Z") * P::parse("X"), P::parse("iY"));
  EXPECT_EQ(P::parse("Y") * P::parse("X"), P::parse("-iZ"));
}

TEST(PauliMultiply, MatchesDenseProductExhaustively) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto all = oracle::all_strings(n);
    for (const auto& a : all) {
      for (const auto& b : all) {
        const P ab = a * b;
        const double err = (oracle::dense(ab) - oracle::dense(a) * oracle::dense(b)).norm();
        ASSERT_LE(err, 1e-12) << a.to_string() << " * " << b.to_string();
      }
    }
  }
}

TEST(PauliMultiply, PhasesCompose) {
  const P a = P::parse("iXZ");
  const P b = P::parse("-YY");
  const double err = (oracle::dense(a * b) - oracle::dense(a) * oracle::dense(b)).norm();
  EXPECT_LE(err, 1e-12);
}

TEST(PauliMultiply, DimensionMismatch) {
  EXPECT_THROW(P::parse("X") * P::parse("XX"), DimensionError);
  EXPECT_THROW(commutes(P::parse("X"), P::parse("XX")), DimensionError);
  EXPECT_THROW(qubit_wise_commutes(P::parse("X"), P::parse("XX")), DimensionError);
}

TEST(PauliCommutes, Examples) {
  EXPECT_FALSE(commutes(P::parse("ZZ"), P::parse("XI")));
  EXPECT_TRUE(commutes(P::parse("ZZ"), P::parse("XX")));
  EXPECT_TRUE(commutes(P::parse("ZZ"), P::parse("ZI")));
}

TEST(PauliCommutes, MatchesDenseCommutator) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto all = oracle::all_strings(n);
    for (const auto& a : all) {
      for (const auto& b : all) {
        const auto da = oracle::dense(a);
        const auto db = oracle::dense(b);
        const bool dense_commutes = (da * db - db * da).norm() < 1e-12;
        ASSERT_EQ(commutes(a, b), dense_commutes) << a.to_string() << " " << b.to_string();
      }
    }
  }
}

TEST(PauliCommutes, QubitWise) {
  EXPECT_TRUE(qubit_wise_commutes(P::parse("XI"), P::parse("XZ")));
  EXPECT_FALSE(qubit_wise_commutes(P::parse("XX"), P::parse("YY")));
  EXPECT_TRUE(commutes(P::parse("XX"), P::parse("YY")));
  EXPECT_TRUE(qubit_wise_commutes(P::parse("II"), P::parse("YZ")));
}

TEST(PauliCommutes, QubitWiseImpliesCommutes) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 2000; ++k) {
    const P a = oracle::random_string(5, rng);
    const P b = oracle::random_string(5, rng);
    if (qubit_wise_commutes(a, b)) ASSERT_TRUE(commutes(a, b));
    ASSERT_EQ(qubit_wise_commutes(a, b), qubit_wise_commutes(b, a));
    ASSERT_EQ(commutes(a, b), commutes(b, a));
  }
}

TEST(PauliSum, MergesAndPrunes) {
  PauliSum s(2);
  s.add(P::parse("ZZ"), -1.0);
  s.add(P::parse("XI"), 0.5);
  s.add(P::parse("ZZ"), -1.0);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.coefficient(P::parse("ZZ")), std::complex<double>(-2.0));
  s.add(P::parse("XI"), -0.5);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_FALSE(s.contains(P::parse("XI")));
  EXPECT_EQ(s.terms().front().string, P::parse("ZZ"));
}

TEST(PauliSum, FoldsPhaseIntoCoefficient) {
  PauliSum s(1);
  s.add(P::parse("-iZ"), 2.0);
  EXPECT_EQ(s.terms().front().string.phase_power(), 0);
  EXPECT_EQ(s.coefficient(P::parse("Z")), std::complex<double>(0, -2));
  EXPECT_FALSE(s.is_hermitian());
  EXPECT_THROW(s.add(P::parse("ZZ"), 1.0), DimensionError);
}

TEST(Anticommutator, MatchesDenseOracle) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 3;
    PauliSum h(n);
    for (int t = 0; t < 6; ++t) h.add(oracle::random_string(n, rng), g(rng));
    const P o = oracle::random_string(n, rng);
    const PauliSum anti = anticommutator_with_sum(h, o);
    const auto dh = oracle::dense(h);
    const auto dox = oracle::dense(o);
    ASSERT_LE((oracle::dense(anti) - (dh * dox + dox * dh)).norm(), 1e-12);
  }
}

TEST(Anticommutator, VanishesForAnticommutingTerms) {
  PauliSum h(1);
  h.add(P::parse("X"), -0.7);
  EXPECT_TRUE(anticommutator_with_sum(h, P::parse("Z")).empty());
  const PauliSum xx = anticommutator_with_sum(h, P::parse("X"));
  ASSERT_EQ(xx.size(), 1u);
  EXPECT_TRUE(xx.terms().front().string.is_identity());
  EXPECT_NEAR(xx.terms().front().coeff.real(), -1.4, 1e-15);
}

TEST(PauliHash, EqualStringsHashEqual) {
  PauliStringHash h;
  EXPECT_EQ(h(P::parse("XYZ")), h(P::parse("XYZ")));
  EXPECT_NE(P::parse("XYZ"), P::parse("iXYZ"));
}
