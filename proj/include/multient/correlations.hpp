#pragma once

// Block correlation matrices <c^dag_i c_j> of the infinite-chain ground state
// and the n-th order geometric measures derived from their spectra.

#include <Eigen/Dense>

#include <string_view>
#include <vector>

namespace multient {

/// How G_n is read off the block correlation spectrum.
///   PaperEigenvalue: G_n = 1 - lambda_max(F_n).
///   StrictProduct:   G_n = 1 - prod_i max(lambda_i, 1 - lambda_i), the largest
///                    eigenvalue of the Gaussian block density operator.
enum class GmConvention { PaperEigenvalue, StrictProduct };

std::string_view to_string(GmConvention c);
/// Accepts "paper" / "strict". Throws ConfigError otherwise.
GmConvention parse_convention(std::string_view text);

inline constexpr int kDefaultMaxBlock = 8;

/// f(m) = <c^dag_n c_{n+m}> for the infinite chain. Exact values 1/2 and 0 are
/// returned for m = 0 and even m.
double correlation_element(int m, double alpha);

/// n x n real symmetric Toeplitz matrix of correlation_element(|i-j|, alpha).
class CorrelationMatrix {
 public:
  CorrelationMatrix(int n, double alpha);

  int size() const { return static_cast<int>(entries_.rows()); }
  double alpha() const { return alpha_; }
  double operator()(int i, int j) const { return entries_(i, j); }
  const Eigen::MatrixXd& matrix() const { return entries_; }

 private:
  double alpha_;
  Eigen::MatrixXd entries_;
};

inline CorrelationMatrix build_correlation_matrix(int n, double alpha) {
  return CorrelationMatrix(n, alpha);
}

/// Eigenvalues of a correlation matrix, sorted non-increasing, each in [0, 1].
struct ModeSpectrum {
  std::vector<double> values;

  double largest() const { return values.front(); }
  /// prod_i max(lambda_i, 1 - lambda_i).
  double largest_state_weight() const;
};

/// Full symmetric eigendecomposition with per-pair residual check
/// (||F v - lambda v|| <= 1e-12 n). Values within 1e-12 outside [0, 1] are
/// clamped; larger excursions or solver failure throw NumericalError.
ModeSpectrum mode_spectrum(const CorrelationMatrix& F);
/// Same contract for an arbitrary Hermitian correlation matrix (finite chains).
ModeSpectrum mode_spectrum(const Eigen::MatrixXcd& F);

/// G_n for a block of n contiguous sites.
double nth_order_gm(int n, double alpha, GmConvention convention = GmConvention::PaperEigenvalue);

/// Piecewise closed forms for n in {2, 3, 4}; throws ConfigError for other n.
double closed_form_gm(int n, double alpha);

/// A_n = lambda_max(F_n) - 1/2 in the alpha < 1 phase, where it does not
/// depend on alpha.
double asymptotic_constant(int n);

/// min over n = 2..n_max of nth_order_gm.
double ggm_infinite(double alpha, int n_max = kDefaultMaxBlock,
                    GmConvention convention = GmConvention::PaperEigenvalue);

}  // namespace multient
