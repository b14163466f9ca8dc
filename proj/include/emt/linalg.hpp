// Hermitian eigensolver, PSD matrix square root and Uhlmann fidelity.

#pragma once

#include <stdexcept>
#include <vector>

#include "emt/complex_matrix.hpp"
#include "emt/states.hpp"

namespace emt {

// Raised when an iterative kernel fails to converge.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A matrix required to be PSD has an eigenvalue below the clamping floor.
class not_psd_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

struct HermitianEigen {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // orthonormal columns, column i <-> eigenvalues[i]
};

// Cyclic Jacobi diagonalization of a complex Hermitian matrix.
// Off-diagonal Frobenius threshold 1e-12 relative to ||h||_F, at most
// 100 sweeps.
HermitianEigen eigh(const ComplexMatrix& h);

// Hermitian PSD square root. Eigenvalues in [-1e-10, 0) are treated as
// round-off and clamped to zero; anything lower is rejected.
ComplexMatrix sqrtm_psd(const ComplexMatrix& rho);

// Uhlmann fidelity F = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, in [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Same, with sqrt(rho) precomputed (for optimizers evaluating many sigma
// against one rho).
double fidelity_with_sqrt(const ComplexMatrix& sqrt_rho, const ComplexMatrix& sigma);

}  // namespace emt
