#include "fh/linalg.hpp"

#include "fh/rng.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <stdexcept>

namespace fh {

CMatrix mat_exp(const CMatrix& a, double scale)
{
	if (a.rows() != a.cols())
		throw std::invalid_argument("mat_exp: matrix must be square");
	if (!is_finite(a) || !std::isfinite(scale))
		throw std::invalid_argument("mat_exp: non-finite input");
	if (scale == 0.0 || a.isZero(0.0))
		return CMatrix::Identity(a.rows(), a.cols());
	return (scale * a).exp();
}

HermitianEig eig_hermitian(const CMatrix& a, double tol)
{
	if (a.rows() != a.cols())
		throw std::invalid_argument("eig_hermitian: matrix must be square");
	if ((a - a.adjoint()).norm() > tol * tol_scale(a))
		throw std::invalid_argument("eig_hermitian: matrix is not hermitian");

	Eigen::SelfAdjointEigenSolver<CMatrix> solver(a);
	if (solver.info() != Eigen::Success)
		throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
	return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

Index numeric_rank(const CMatrix& a, double tol)
{
	if (tol <= 0.0)
		throw std::invalid_argument("numeric_rank: tol must be positive");
	if (a.size() == 0)
		return 0;

	Eigen::JacobiSVD<CMatrix> svd(a);
	const RVector& sigma = svd.singularValues();
	double cutoff = tol * sigma(0);
	Index rank = 0;
	for (Index i = 0; i < sigma.size(); ++i)
		if (sigma(i) > cutoff)
			++rank;
	return rank;
}

CMatrix haar_unitary(Index dim, std::uint64_t seed)
{
	if (dim < 1)
		throw std::invalid_argument("haar_unitary: dim must be >= 1");

	SplitMix64 rng(seed);
	CMatrix a = rng.complex_gaussian_matrix(dim, dim);

	Eigen::HouseholderQR<CMatrix> qr(a);
	CMatrix q = qr.householderQ();
	CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();

	// Fold the phases of diag(R) into Q so that the triangular factor has a
	// positive real diagonal; this removes the QR gauge freedom and makes the
	// distribution Haar.
	for (Index k = 0; k < dim; ++k)
	{
		Complex d = r(k, k);
		double mag = std::abs(d);
		q.col(k) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
	}
	return q;
}

MatrixClass classify_matrix(const CMatrix& a, double tol)
{
	if (a.rows() != a.cols())
		throw std::invalid_argument("classify_matrix: matrix must be square");

	const double scale = tol_scale(a);
	const CMatrix id = CMatrix::Identity(a.rows(), a.cols());

	MatrixClass c;
	c.hermitian = (a - a.adjoint()).norm() <= tol * scale;
	c.antihermitian = (a + a.adjoint()).norm() <= tol * scale;
	c.unitary = (a.adjoint() * a - id).norm() <= tol * scale;
	c.traceless = std::abs(a.trace()) <= tol * scale;
	c.idempotent = (a * a - a).norm() <= tol * scale;
	return c;
}

} // namespace fh
