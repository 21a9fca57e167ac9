#include "core/linalg.hpp"

#include <Eigen/SVD>

#include "core/errors.hpp"

namespace expbasis {

std::complex<double> det(const ComplexMatrix& m) {
  require(m.rows() == m.cols(), ErrorCode::shape, "det requires a square matrix");
  require(m.rows() >= 1, ErrorCode::shape, "det of empty matrix");
  return m.partialPivLu().determinant();
}

double sigma_min(const ComplexMatrix& m) {
  require(m.rows() >= 1 && m.cols() >= 1, ErrorCode::shape, "sigma_min of empty matrix");
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

double sigma_max(const ComplexMatrix& m) {
  require(m.rows() >= 1 && m.cols() >= 1, ErrorCode::shape, "sigma_max of empty matrix");
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

bool numerically_singular(const ComplexMatrix& m, double scale) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& sv = svd.singularValues();
  double smax = sv(0);
  double smin = sv(sv.size() - 1);
  if (m.rows() != m.cols()) return smin <= scale * std::max(m.rows(), m.cols()) * smax;
  return smin <= scale * static_cast<double>(m.rows()) * smax;
}

ComplexMatrix invert(const ComplexMatrix& m, double scale) {
  require(m.rows() == m.cols(), ErrorCode::shape, "invert requires a square matrix");
  require(m.rows() >= 1, ErrorCode::shape, "invert of empty matrix");
  require(!numerically_singular(m, scale), ErrorCode::singular,
          "singular-matrix: sigma_min below threshold");
  return m.partialPivLu().inverse();
}

}  // namespace expbasis
