#pragma once

#include <Eigen/Dense>
#include <complex>

namespace expbasis {

using ComplexMatrix = Eigen::MatrixXcd;

// Relative singularity threshold: sigma_min <= scale * K * sigma_max flags
// the matrix as singular. All paper counterexamples are exactly singular, so
// the default has a wide safety margin.
inline constexpr double kSingularScale = 1e-9;

std::complex<double> det(const ComplexMatrix& m);

// Smallest singular value (0 for an empty matrix is rejected upstream).
double sigma_min(const ComplexMatrix& m);
double sigma_max(const ComplexMatrix& m);

bool numerically_singular(const ComplexMatrix& m, double scale = kSingularScale);

// Inverse with a singularity guard; throws singular-matrix when sigma_min is
// below the threshold.
ComplexMatrix invert(const ComplexMatrix& m, double scale = kSingularScale);

}  // namespace expbasis
