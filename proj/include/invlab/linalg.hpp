#pragma once

#include <Eigen/Dense>

#include "invlab/complex_tensor.hpp"

namespace invlab {

Eigen::MatrixXcd to_eigen(const ComplexTensor& m);
ComplexTensor from_eigen(const Eigen::MatrixXcd& m);

/// Ascending eigenvalues of a (numerically) Hermitian matrix.
std::vector<double> hermitian_eigenvalues(const ComplexTensor& m);

double min_eigenvalue(const ComplexTensor& m);

}  // namespace invlab
