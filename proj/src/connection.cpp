#include "fh/connection.hpp"

#include "fh/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace fh {

CMatrix GaugeConnection::potential_of(const DerivationVector& x) const
{
	if (x.size() != dim())
		throw std::invalid_argument("GaugeConnection: coefficient length does not match basis dimension");
	CMatrix acc = CMatrix::Zero(module.m, module.m);
	for (Index i = 0; i < dim(); ++i)
		acc += x(i) * potential[std::size_t(i)];
	return acc;
}

GaugeConnection make_connection(std::shared_ptr<const LieBasis> basis, Index m, std::vector<CMatrix> potential)
{
	if (!basis)
		throw std::invalid_argument("make_connection: missing Lie basis");
	if (m < 1)
		throw std::invalid_argument("make_connection: module size must be >= 1");
	if (Index(potential.size()) != basis->dim())
		throw std::invalid_argument("make_connection: potential length does not match basis dimension");
	for (std::size_t i = 0; i < potential.size(); ++i)
	{
		if (potential[i].rows() != m || potential[i].cols() != m)
		{
			std::ostringstream msg;
			msg << "make_connection: potential component " << i << " is not m x m";
			throw std::invalid_argument(msg.str());
		}
		if (!is_finite(potential[i]))
		{
			std::ostringstream msg;
			msg << "make_connection: potential component " << i << " has non-finite entries";
			throw std::invalid_argument(msg.str());
		}
	}
	return GaugeConnection{ModuleSpace{m, basis->n}, std::move(basis), std::move(potential)};
}

GaugeConnection canonical_connection(std::shared_ptr<const LieBasis> basis, Index m)
{
	if (!basis)
		throw std::invalid_argument("canonical_connection: missing Lie basis");
	std::vector<CMatrix> zero(std::size_t(basis->dim()), CMatrix::Zero(m, m));
	return make_connection(std::move(basis), m, std::move(zero));
}

ProjectorModule module_from_projector(Index n, Index N, const CMatrix& p)
{
	if (n < 1 || N < 1)
		throw std::invalid_argument("module_from_projector: n and N must be >= 1");
	const Index nN = n * N;
	if (p.rows() != nN || p.cols() != nN)
		throw std::invalid_argument("module_from_projector: projector must be nN x nN");
	if ((p * p - p).norm() > 1e-8 * tol_scale(p))
		throw std::invalid_argument("module_from_projector: matrix is not idempotent");

	Eigen::JacobiSVD<CMatrix> svd(p, Eigen::ComputeThinU);
	Index m = numeric_rank(p);
	return ProjectorModule{m, svd.matrixU().leftCols(m)};
}

CMatrix hermitian_pairing(const CMatrix& s, const CMatrix& t)
{
	if (s.rows() != t.rows() || s.cols() != t.cols())
		throw std::invalid_argument("hermitian_pairing: shapes do not match");
	return s.adjoint() * t;
}

CMatrix covariant_derivative(const GaugeConnection& conn, const DerivationVector& x, const CMatrix& s)
{
	if (s.rows() != conn.module.m || s.cols() != conn.module.n)
		throw std::invalid_argument("covariant_derivative: section is not m x n");
	return conn.potential_of(x) * s - s * conn.basis->theta_of(x);
}

CMatrix curvature(const GaugeConnection& conn, Index i, Index j)
{
	if (i < 0 || i >= conn.dim() || j < 0 || j >= conn.dim())
		throw std::invalid_argument("curvature: index out of range");
	const CMatrix& bi = conn.potential[std::size_t(i)];
	const CMatrix& bj = conn.potential[std::size_t(j)];
	CMatrix f = bi * bj - bj * bi;
	const CVector& c = conn.basis->bracket_coeffs(i, j);
	for (Index k = 0; k < conn.dim(); ++k)
		if (c(k) != Complex(0.0, 0.0))
			f -= c(k) * conn.potential[std::size_t(k)];
	return f;
}

double max_curvature_norm(const GaugeConnection& conn)
{
	double worst = 0.0;
	for (Index i = 0; i < conn.dim(); ++i)
		for (Index j = i + 1; j < conn.dim(); ++j)
			worst = std::max(worst, curvature(conn, i, j).norm());
	return worst;
}

bool hermiticity_check(const GaugeConnection& conn, double tol)
{
	for (Index i = 0; i < conn.dim(); ++i)
	{
		if (!conn.basis->real_flags[std::size_t(i)])
			continue;
		const CMatrix& b = conn.potential[std::size_t(i)];
		if ((b + b.adjoint()).norm() > tol * tol_scale(b))
			return false;
	}
	return true;
}

double compatibility_defect(const GaugeConnection& conn, const DerivationVector& x, const CMatrix& s,
                            const CMatrix& t)
{
	if (s.rows() != conn.module.m || s.cols() != conn.module.n || t.rows() != conn.module.m ||
	    t.cols() != conn.module.n)
		throw std::invalid_argument("compatibility_defect: sections are not m x n");

	CMatrix pairing = hermitian_pairing(s, t);
	CMatrix lhs = apply_derivation(*conn.basis, x, pairing);
	DerivationVector x_star = conn.basis->star_coeffs(x);
	CMatrix rhs = hermitian_pairing(covariant_derivative(conn, x_star, s), t) +
	              hermitian_pairing(s, covariant_derivative(conn, x, t));
	return (lhs - rhs).norm();
}

GaugeConnection gauge_transform(const GaugeConnection& conn, const CMatrix& u)
{
	if (u.rows() != conn.module.m || u.cols() != conn.module.m)
		throw std::invalid_argument("gauge_transform: u is not m x m");
	if ((u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm() > kDefaultTol * tol_scale(u))
		throw std::invalid_argument("gauge_transform: u is not unitary");

	std::vector<CMatrix> transformed;
	transformed.reserve(conn.potential.size());
	for (const CMatrix& b : conn.potential)
		transformed.push_back(u * b * u.adjoint());
	return GaugeConnection{conn.module, conn.basis, std::move(transformed)};
}

} // namespace fh
