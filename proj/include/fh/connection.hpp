#pragma once

#include "fh/calculus.hpp"
#include "fh/types.hpp"

#include <memory>
#include <vector>

namespace fh {

/// The module of m x n matrices with the right algebra action s, a -> s a.
struct ModuleSpace
{
	Index m = 1;
	Index n = 1;
};

/// A connection on M_{m,n}, stored as the gauge potential B_1..B_d (m x m)
/// relative to the canonical connection s -> -s theta.
struct GaugeConnection
{
	ModuleSpace module;
	std::shared_ptr<const LieBasis> basis;
	std::vector<CMatrix> potential;

	Index dim() const { return Index(potential.size()); }

	/// B(X) = sum_i x_i B_i.
	CMatrix potential_of(const DerivationVector& x) const;
};

/// Builds a connection after validating shapes: d potentials of size m x m
/// over a basis for M_n.
GaugeConnection make_connection(std::shared_ptr<const LieBasis> basis, Index m, std::vector<CMatrix> potential);

/// The canonical connection (zero potential).
GaugeConnection canonical_connection(std::shared_ptr<const LieBasis> basis, Index m);

struct ProjectorModule
{
	Index m = 0;
	CMatrix image_basis; // nN x m, orthonormal columns spanning the image of p
};

/// Rank and image basis of an idempotent p acting on C^{nN}; identifies the
/// projective module p A^N with M_{m,n}.
ProjectorModule module_from_projector(Index n, Index N, const CMatrix& p);

/// <s, t> = s^dagger t, an n x n algebra element.
CMatrix hermitian_pairing(const CMatrix& s, const CMatrix& t);

/// nabla_X s = -s theta(X) + B(X) s.
CMatrix covariant_derivative(const GaugeConnection& conn, const DerivationVector& x, const CMatrix& s);

/// F(e_i, e_j) = [B_i, B_j] - sum_k c_{ij}^k B_k, an m x m matrix.
CMatrix curvature(const GaugeConnection& conn, Index i, Index j);

/// Largest Frobenius norm of F(e_i, e_j) over all pairs i < j.
double max_curvature_norm(const GaugeConnection& conn);

/// True iff every real-flagged potential component is antihermitian within
/// tol * max(1, ||B_i||_F); this is hermitian compatibility of the connection.
bool hermiticity_check(const GaugeConnection& conn, double tol = kDefaultTol);

/// || X(<s,t>) - <nabla_{X*} s, t> - <s, nabla_X t> ||_F.
double compatibility_defect(const GaugeConnection& conn, const DerivationVector& x, const CMatrix& s,
                            const CMatrix& t);

/// B_i -> u B_i u^dagger for unitary u.
GaugeConnection gauge_transform(const GaugeConnection& conn, const CMatrix& u);

} // namespace fh
