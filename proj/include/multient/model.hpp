#pragma once

// Infinite XX chain with three-spin interactions, in its free-fermion form:
//   H = -J/4 sum_n [ sx_n sx_{n+1} + sy_n sy_{n+1}
//                    + alpha/2 (sx_{n-1} sz_n sy_{n+1} - sy_{n-1} sz_n sx_{n+1}) ]
// maps to spinless fermions with dispersion eps(k) = -J [cos k - (alpha/2) sin 2k].
// Everything below is reported in units of J.

#include <numbers>
#include <vector>

namespace multient {

inline constexpr double kPi = std::numbers::pi;

/// Critical three-spin strength at which two extra Fermi points appear.
inline constexpr double kCriticalAlpha = 1.0;

/// Model parameters. J only labels output; all physics depends on alpha.
struct Couplings {
  double J = 1.0;
  double alpha = 0.0;

  /// Validates J > 0 and alpha >= 0 (throws ConfigError otherwise).
  static Couplings make(double J, double alpha);
};

enum class FermiRegime { TwoPoint, FourPoint };

/// Open momentum interval (lo, hi) of filled single-particle modes.
struct MomentumInterval {
  double lo;
  double hi;
  double length() const { return hi - lo; }
};

struct FermiStructure {
  FermiRegime regime = FermiRegime::TwoPoint;
  std::vector<double> points;                  // sorted, in (-pi, pi]
  std::vector<MomentumInterval> occupied;      // union is the filled sea
};

/// Single-particle energy -[cos k - (alpha/2) sin 2k].
double dispersion(double k, double alpha);

/// Fermi points and filled intervals. alpha == 1 is classified TwoPoint.
FermiStructure fermi_structure(double alpha);

/// True iff eps(k) <= 0.
bool is_occupied(double k, double alpha);

/// Closed-form ground-state energy per site: -1/pi below alpha = 1,
/// -(1/alpha + alpha)/(2 pi) at and above.
double ground_energy_per_site(double alpha);

/// Adaptive quadrature of eps(k)/(2 pi) over the filled sea, split at the
/// Fermi points. Throws NumericalError if `tol` is not reached.
double ground_energy_per_site_numeric(double alpha, double tol = 1e-10);

}  // namespace multient
