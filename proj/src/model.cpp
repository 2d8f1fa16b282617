#include "multient/model.hpp"

#include <cmath>
#include <string>

#include "multient/error.hpp"
#include "multient/quadrature.hpp"

namespace multient {

Couplings Couplings::make(double J, double alpha) {
  if (!(J > 0.0) || !std::isfinite(J)) {
    throw ConfigError("coupling J must be positive, got " + std::to_string(J));
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("three-spin strength alpha must be >= 0, got " + std::to_string(alpha));
  }
  return Couplings{J, alpha};
}

double dispersion(double k, double alpha) {
  return -(std::cos(k) - 0.5 * alpha * std::sin(2.0 * k));
}

FermiStructure fermi_structure(double alpha) {
  FermiStructure fs;
  if (alpha <= kCriticalAlpha) {
    fs.regime = FermiRegime::TwoPoint;
    fs.points = {-kPi / 2, kPi / 2};
    fs.occupied = {{-kPi / 2, kPi / 2}};
    return fs;
  }
  const double k1 = std::asin(1.0 / alpha);
  fs.regime = FermiRegime::FourPoint;
  fs.points = {-kPi / 2, k1, kPi / 2, kPi - k1};
  fs.occupied = {{-kPi / 2, k1}, {kPi / 2, kPi - k1}};
  return fs;
}

bool is_occupied(double k, double alpha) { return dispersion(k, alpha) <= 0.0; }

double ground_energy_per_site(double alpha) {
  if (alpha < kCriticalAlpha) return -1.0 / kPi;
  return -(1.0 / alpha + alpha) / (2.0 * kPi);
}

double ground_energy_per_site_numeric(double alpha, double tol) {
  const FermiStructure fs = fermi_structure(alpha);
  const double share = tol / static_cast<double>(fs.occupied.size());
  double energy = 0.0;
  for (const MomentumInterval& iv : fs.occupied) {
    energy += integrate([alpha](double k) { return dispersion(k, alpha) / (2.0 * kPi); }, iv.lo,
                        iv.hi, share)
                  .value;
  }
  return energy;
}

}  // namespace multient
