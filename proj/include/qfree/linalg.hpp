#pragma once

#include <Eigen/Dense>

namespace qfree::linalg {

using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

struct Eigensystem {
    RealVector values;  // ascending
    Matrix vectors;     // columns are eigenvectors
    int sweeps = 0;
    bool converged = false;
};

/// Cyclic complex Jacobi for Hermitian matrices. Sweeps until the
/// off-diagonal Frobenius norm is at most threshold * ||A||_F.
/// Throws std::invalid_argument if A is not square or not Hermitian.
Eigensystem jacobi_eigh(const Matrix& a, double threshold = 1e-13, int max_sweeps = 100);

/// Largest |A_ij - conj(A_ji)|.
double hermitian_defect(const Matrix& a);

/// exp(iH) for Hermitian H via its eigendecomposition.
Matrix expi_hermitian(const Matrix& h);

double max_abs(const Matrix& a);

}  // namespace qfree::linalg
