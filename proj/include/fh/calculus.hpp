#pragma once

#include "fh/types.hpp"

#include <map>
#include <vector>

namespace fh {

/// The algebra is the full matrix algebra of size n; its center is the
/// scalars, so forms below are plain C-multilinear maps.
struct AlgebraContext
{
	Index n = 1;
};

/// A basis e_1..e_d of a Lie algebra of inner derivations, carried as the
/// traceless generators theta_i with [e_i, e_j] acting as ad_{theta_i} brackets.
///
/// Invariants established by build_lie_basis:
///  - each theta_i traceless and the set linearly independent
///  - closure: [theta_i, theta_j] = sum_k c_{ij}^k theta_k
///  - involution: -theta_i^dagger = sum_j S_{ij} theta_j, with S conj(S) = I
///  - real_flags[i] iff theta_i is antihermitian
struct LieBasis
{
	Index n = 1;
	std::vector<CMatrix> theta;
	std::vector<CVector> structure; // flattened d x d, entry (i,j) = coeffs of [e_i,e_j]
	CMatrix involution; // d x d matrix S
	std::vector<bool> real_flags;

	Index dim() const { return Index(theta.size()); }

	/// Coefficients of [e_i, e_j] in the basis.
	const CVector& bracket_coeffs(Index i, Index j) const { return structure[std::size_t(i * dim() + j)]; }

	/// theta(X) = sum_i x_i theta_i.
	CMatrix theta_of(const DerivationVector& x) const;

	/// Coefficients of X^* given those of X; the involution is antilinear.
	DerivationVector star_coeffs(const DerivationVector& x) const;

	/// True when X lies in the real span of the real-flagged basis elements.
	bool is_real(const DerivationVector& x, double tol = 1e-12) const;
};

/// Degree-p form with values in the algebra, stored by components on strictly
/// increasing basis index tuples; a degree-0 form is a single matrix under the
/// empty tuple. Missing tuples are zero components.
class DifferentialForm
{
  public:
	using IndexTuple = std::vector<Index>;

	DifferentialForm(int degree, Index n) : degree_(degree), n_(n) {}

	/// Degree-0 form from an algebra element.
	static DifferentialForm scalar(const CMatrix& a);

	int degree() const { return degree_; }
	Index n() const { return n_; }
	const std::map<IndexTuple, CMatrix>& components() const { return comps_; }

	/// Sets the component on a strictly increasing tuple of length degree().
	void set_component(const IndexTuple& tuple, const CMatrix& value);

	/// Component on a strictly increasing tuple; zero if absent.
	CMatrix component(const IndexTuple& tuple) const;

	/// Evaluation on an arbitrary tuple: sorts with antisymmetry sign,
	/// zero on repeated indices.
	CMatrix evaluate(IndexTuple tuple) const;

	double norm() const;

  private:
	int degree_;
	Index n_;
	std::map<IndexTuple, CMatrix> comps_;
};

/// Validates the generators and solves structure constants, involution matrix
/// and real flags. Throws std::invalid_argument when a generator is not
/// traceless or n x n, the set is linearly dependent, a bracket leaves the
/// span (not a Lie subalgebra), or -theta^dagger leaves the span (not *-closed).
LieBasis build_lie_basis(const AlgebraContext& ctx, const std::vector<CMatrix>& mats);

/// X(a) = [theta(X), a].
CMatrix apply_derivation(const LieBasis& basis, const DerivationVector& x, const CMatrix& a);

/// The canonical one-form evaluated on X.
CMatrix theta_eval(const LieBasis& basis, const DerivationVector& x);

/// The canonical one-form as a DifferentialForm with components theta_i.
DifferentialForm canonical_one_form(const LieBasis& basis);

/// Product of forms, computed over (p,q)-shuffles.
DifferentialForm wedge(const LieBasis& basis, const DifferentialForm& omega, const DifferentialForm& eta);

/// Differential of degree 1: derivation terms plus bracket terms.
DifferentialForm differential(const LieBasis& basis, const DifferentialForm& omega);

/// Graded involution omega^*(X_1..X_p) = omega(X_1^*..X_p^*)^*.
DifferentialForm form_involution(const LieBasis& basis, const DifferentialForm& omega);

/// max over i<j of ||(d theta - theta^2)(e_i, e_j)||_F; 0 when d < 2.
double maurer_cartan_defect(const LieBasis& basis);

/// max over i<j of ||[theta_i, theta_j] - sum_k c_{ij}^k theta_k||_F.
double closure_defect(const LieBasis& basis);

/// Largest coefficient-level Jacobi residual over index triples.
double jacobi_defect(const LieBasis& basis);

/// max of ||-theta_i^dagger - sum_j S_ij theta_j||_F and ||S conj(S) - I||_F.
double involution_defect(const LieBasis& basis);

/// Calls fn on every strictly increasing tuple of length p from {0..d-1}.
template <typename Fn>
void for_each_increasing_tuple(Index d, int p, Fn&& fn)
{
	if (p < 0 || Index(p) > d)
		return;
	std::vector<Index> tuple(static_cast<std::size_t>(p));
	for (Index i = 0; i < Index(p); ++i)
		tuple[std::size_t(i)] = i;
	while (true)
	{
		fn(tuple);
		int k = p - 1;
		while (k >= 0 && tuple[std::size_t(k)] == d - Index(p) + Index(k))
			--k;
		if (k < 0)
			break;
		++tuple[std::size_t(k)];
		for (int t = k + 1; t < p; ++t)
			tuple[std::size_t(t)] = tuple[std::size_t(t - 1)] + 1;
	}
}

} // namespace fh
