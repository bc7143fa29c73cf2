#pragma once
#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace tfe {

struct EigenPair {
  double value;
  Eigen::VectorXd vector;
};

// Symmetric (banded or dense) eigenproblem; pairs sorted ascending.
// Rejects matrices with relative asymmetry beyond 1e-12.
inline std::vector<EigenPair> eig_banded_symmetric(const Eigen::MatrixXd& A) {
  double scale = A.cwiseAbs().maxCoeff();
  if (scale == 0) scale = 1.0;
  double defect = (A - A.transpose()).cwiseAbs().maxCoeff();
  if (defect > 1e-12 * scale)
    throw std::invalid_argument("eig_banded_symmetric: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eig_banded_symmetric: solver failed");
  std::vector<EigenPair> out(A.rows());
  for (int i = 0; i < A.rows(); ++i)
    out[i] = {es.eigenvalues()[i], es.eigenvectors().col(i)};
  return out;
}

}  // namespace tfe
