#pragma once

// Dense complex kernels shared by the spectrum and matrix-function code.
// Internal header; not installed.

#include <functional>

#include <Eigen/Dense>

namespace qfloquet::detail {

using ComplexMatrix = Eigen::MatrixXcd;

/// Scaling and squaring with the [13/13] Pade approximant.
ComplexMatrix expm_pade13(const ComplexMatrix& a);

/// Principal logarithm by inverse scaling and squaring on the Schur form.
/// Requires no eigenvalue on the closed negative real axis.
ComplexMatrix logm_principal(const ComplexMatrix& a);

/// Principal square root of an upper-triangular matrix.
ComplexMatrix sqrtm_triangular(const ComplexMatrix& t);

struct SchurForm {
  ComplexMatrix unitary;     ///< Q with A = Q T Q^H
  ComplexMatrix triangular;  ///< T
};

SchurForm schur(const ComplexMatrix& a);

/// Reorders a Schur form so that the diagonal entries selected by `leading`
/// come first. Returns the number of selected eigenvalues.
int reorder_schur(SchurForm& form, const std::function<bool(std::complex<double>)>& leading);

/// Number of singular values of `a` at or below `tol`.
int nullity(const ComplexMatrix& a, double tol);

double spectral_norm(const ComplexMatrix& a);

/// sigma_min(a) <= 1e-12 * max(1, sigma_max(a)).
bool numerically_singular(const ComplexMatrix& a);

}  // namespace qfloquet::detail
