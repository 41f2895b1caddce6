#pragma once

#include "fh/types.hpp"

#include <cstdint>

namespace fh {

/// Classification flags of a square matrix, each judged against a relative
/// tolerance: defect norm <= tol * max(1, ||a||_F).
struct MatrixClass
{
	bool hermitian = false;
	bool antihermitian = false;
	bool unitary = false;
	bool traceless = false;
	bool idempotent = false;
};

/// exp(scale * a) for square a. Scaling-and-squaring with a high-order Pade
/// approximant (Eigen's matrix exponential); exact identity on zero input.
CMatrix mat_exp(const CMatrix& a, double scale = 1.0);

struct HermitianEig
{
	RVector eigenvalues; // ascending
	CMatrix eigenvectors; // unitary, columns match eigenvalues
};

/// Eigendecomposition a = V diag(lambda) V^dagger of a hermitian matrix.
/// Rejects input whose hermiticity defect exceeds tol * max(1, ||a||_F).
HermitianEig eig_hermitian(const CMatrix& a, double tol = kDefaultTol);

/// Number of singular values above tol * sigma_max; rank of the zero matrix is 0.
Index numeric_rank(const CMatrix& a, double tol = kDefaultTol);

/// Haar-distributed unitary, deterministic for a given seed: complex Gaussian
/// matrix, QR, diagonal of the triangular factor normalized to positive real.
CMatrix haar_unitary(Index dim, std::uint64_t seed);

MatrixClass classify_matrix(const CMatrix& a, double tol = kDefaultTol);

} // namespace fh
