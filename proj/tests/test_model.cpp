#include <gtest/gtest.h>

#include <cmath>

#include "multient/error.hpp"
#include "multient/model.hpp"
#include "oracles.hpp"

namespace multient {
namespace {

TEST(Dispersion, Examples) {
  EXPECT_NEAR(dispersion(kPi / 2, 3.7), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(dispersion(0.0, 1.0), -1.0);
  const double expected = static_cast<double>(oracle::dispersion_ld(std::numbers::pi_v<long double> / 4, 2.0L));
  EXPECT_NEAR(expected, 0.29289321881345248, 1e-15);
  EXPECT_NEAR(dispersion(kPi / 4, 2.0), expected, 1e-15);
}

TEST(Dispersion, EvenPartIsMinusTwoCos) {
  for (double alpha : {0.0, 0.4, 1.0, 2.5, 7.0}) {
    for (double k = -3.1; k < 3.1; k += 0.173) {
      EXPECT_NEAR(dispersion(k, alpha) + dispersion(-k, alpha), -2.0 * std::cos(k), 1e-14);
    }
  }
}

TEST(FermiStructure, TwoPointBelowCritical) {
  const FermiStructure fs = fermi_structure(0.5);
  EXPECT_EQ(fs.regime, FermiRegime::TwoPoint);
  ASSERT_EQ(fs.points.size(), 2u);
  EXPECT_DOUBLE_EQ(fs.points[0], -kPi / 2);
  EXPECT_DOUBLE_EQ(fs.points[1], kPi / 2);
  ASSERT_EQ(fs.occupied.size(), 1u);
}

TEST(FermiStructure, CriticalPointIsTwoPoint) {
  EXPECT_EQ(fermi_structure(1.0).regime, FermiRegime::TwoPoint);
  EXPECT_EQ(fermi_structure(1.0 + 1e-9).regime, FermiRegime::FourPoint);
}

TEST(FermiStructure, ExtraPointsMatchBisection) {
  const FermiStructure fs = fermi_structure(2.0);
  ASSERT_EQ(fs.regime, FermiRegime::FourPoint);
  ASSERT_EQ(fs.points.size(), 4u);
  auto eps = [](double k) { return static_cast<double>(oracle::dispersion_ld(k, 2.0L)); };
  const double k1 = oracle::bisect(eps, 0.1, 1.4);
  const double k2 = oracle::bisect(eps, 1.7, 3.0);
  EXPECT_NEAR(k1, kPi / 6, 1e-12);
  EXPECT_NEAR(k2, 5 * kPi / 6, 1e-12);
  EXPECT_NEAR(fs.points[1], k1, 1e-12);
  EXPECT_NEAR(fs.points[3], k2, 1e-12);
}

TEST(FermiStructure, IntervalsAgreeWithSignPredicate) {
  for (double alpha : {0.0, 0.3, 1.0, 1.2, 2.0, 5.0, 40.0}) {
    const FermiStructure fs = fermi_structure(alpha);
    double total = 0.0;
    for (const auto& iv : fs.occupied) total += iv.length();
    EXPECT_NEAR(total, kPi, 1e-12) << alpha;
    EXPECT_NEAR(oracle::occupied_measure(alpha), kPi, 1e-4) << alpha;
    for (double k = -kPi + 1e-3; k < kPi; k += 0.0137) {
      bool inside = false;
      for (const auto& iv : fs.occupied) inside = inside || (k > iv.lo && k < iv.hi);
      bool on_edge = false;
      for (double p : fs.points) on_edge = on_edge || std::abs(k - p) < 1e-9;
      if (!on_edge) EXPECT_EQ(inside, is_occupied(k, alpha)) << "alpha=" << alpha << " k=" << k;
      if (inside) EXPECT_LT(dispersion(k, alpha), 0.0);
    }
  }
}

TEST(IsOccupied, Examples) {
  for (double alpha : {0.0, 0.7, 3.0}) EXPECT_TRUE(is_occupied(0.0, alpha));
  EXPECT_TRUE(is_occupied(3 * kPi / 4, 2.0));
  EXPECT_NEAR(dispersion(3 * kPi / 4, 2.0), -0.29289321881345248, 1e-14);
  EXPECT_FALSE(is_occupied(0.6, 2.0));
}

TEST(GroundEnergy, ClosedFormExamples) {
  EXPECT_NEAR(ground_energy_per_site(0.5), -0.31830988618379067, 1e-15);
  EXPECT_NEAR(ground_energy_per_site(1.0), -1.0 / kPi, 1e-15);
  EXPECT_NEAR(ground_energy_per_site(2.0), -0.39788735772973834, 1e-15);
}

TEST(GroundEnergy, SimpsonOracleAgrees) {
  for (double alpha : {0.0, 0.5, 1.0, 1.7, 2.0, 4.5}) {
    const FermiStructure fs = fermi_structure(alpha);
    double sum = 0.0;
    for (const auto& iv : fs.occupied) {
      sum += oracle::simpson([alpha](double k) { return static_cast<double>(oracle::dispersion_ld(k, alpha)); },
                             iv.lo, iv.hi) /
             (2 * kPi);
    }
    EXPECT_NEAR(ground_energy_per_site(alpha), sum, 1e-12) << alpha;
  }
}

TEST(GroundEnergy, NumericMatchesClosedFormOnGrid) {
  for (int i = 0; i <= 500; ++i) {
    const double alpha = 0.01 * i;
    EXPECT_NEAR(ground_energy_per_site_numeric(alpha, 1e-10), ground_energy_per_site(alpha), 1e-9) << alpha;
  }
  EXPECT_NEAR(ground_energy_per_site_numeric(0.0, 1e-10), -1.0 / kPi, 1e-10);
}

TEST(GroundEnergy, ConstantThenNonIncreasing) {
  EXPECT_DOUBLE_EQ(ground_energy_per_site(0.0), ground_energy_per_site(0.999));
  double prev = ground_energy_per_site(1.0);
  for (double alpha = 1.01; alpha < 6.0; alpha += 0.01) {
    const double e = ground_energy_per_site(alpha);
    EXPECT_LE(e, prev + 1e-15);
    prev = e;
  }
}

TEST(Couplings, Validation) {
  EXPECT_NO_THROW(Couplings::make(1.0, 0.0));
  EXPECT_THROW(Couplings::make(0.0, 1.0), ConfigError);
  EXPECT_THROW(Couplings::make(1.0, -0.1), ConfigError);
  EXPECT_THROW(Couplings::make(1.0, std::nan("")), ConfigError);
}

}  // namespace
}  // namespace multient
