#include "invlab/linalg.hpp"

namespace invlab {

Eigen::MatrixXcd to_eigen(const ComplexTensor& m) {
    if (m.rank() != 2) throw ValidationError("to_eigen: not a matrix");
    Eigen::MatrixXcd out(m.shape[0], m.shape[1]);
    for (std::int64_t i = 0; i < m.shape[0]; ++i)
        for (std::int64_t j = 0; j < m.shape[1]; ++j)
            out(i, j) = m.data[static_cast<std::size_t>(i * m.shape[1] + j)];
    return out;
}

ComplexTensor from_eigen(const Eigen::MatrixXcd& m) {
    auto out = ComplexTensor::zeros({m.rows(), m.cols()});
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out.data[static_cast<std::size_t>(i * m.cols() + j)] = m(i, j);
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexTensor& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m),
                                                           Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double min_eigenvalue(const ComplexTensor& m) { return hermitian_eigenvalues(m).front(); }

}  // namespace invlab
