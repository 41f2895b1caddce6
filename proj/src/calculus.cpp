#include "fh/calculus.hpp"

#include "fh/linalg.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace fh {

namespace {

constexpr double kSolveResidualTol = 1e-9;
constexpr double kSnapTol = 1e-13;

CVector vectorize(const CMatrix& a)
{
	return Eigen::Map<const CVector>(a.data(), a.size());
}

// Least-squares coefficients of `target` in the span of the basis columns.
struct SpanSolver
{
	CMatrix columns; // n^2 x d
	Eigen::ColPivHouseholderQR<CMatrix> qr;

	explicit SpanSolver(const std::vector<CMatrix>& mats)
	{
		Index d = Index(mats.size());
		Index nn = d > 0 ? mats[0].size() : 0;
		columns.resize(nn, d);
		for (Index i = 0; i < d; ++i)
			columns.col(i) = vectorize(mats[std::size_t(i)]);
		qr.compute(columns);
	}

	CVector solve(const CMatrix& target, double* residual) const
	{
		CVector rhs = vectorize(target);
		CVector c = qr.solve(rhs);
		*residual = (columns * c - rhs).norm();
		return c;
	}
};

void snap_small(CVector& v)
{
	double scale = std::max(1.0, v.norm());
	for (Index i = 0; i < v.size(); ++i)
		if (std::abs(v(i)) < kSnapTol * scale)
			v(i) = Complex(0.0, 0.0);
}

void check_form_over_basis(const LieBasis& basis, const DifferentialForm& form, const char* who)
{
	if (form.n() != basis.n)
		throw std::invalid_argument(std::string(who) + ": form and basis act on different algebra sizes");
	for (const auto& [tuple, value] : form.components())
		for (Index i : tuple)
			if (i < 0 || i >= basis.dim())
				throw std::invalid_argument(std::string(who) + ": form component index outside the basis");
}

// Sorts the tuple in place, returning the permutation sign, or 0 on repeats.
int sort_sign(std::vector<Index>& tuple)
{
	int sign = 1;
	for (std::size_t i = 1; i < tuple.size(); ++i)
	{
		std::size_t j = i;
		while (j > 0 && tuple[j - 1] > tuple[j])
		{
			std::swap(tuple[j - 1], tuple[j]);
			sign = -sign;
			--j;
		}
		if (j > 0 && tuple[j - 1] == tuple[j])
			return 0;
	}
	return sign;
}

} // namespace

CMatrix LieBasis::theta_of(const DerivationVector& x) const
{
	if (x.size() != dim())
		throw std::invalid_argument("LieBasis: coefficient length does not match basis dimension");
	CMatrix acc = CMatrix::Zero(n, n);
	for (Index i = 0; i < dim(); ++i)
		acc += x(i) * theta[std::size_t(i)];
	return acc;
}

DerivationVector LieBasis::star_coeffs(const DerivationVector& x) const
{
	if (x.size() != dim())
		throw std::invalid_argument("LieBasis: coefficient length does not match basis dimension");
	// X^* = sum_i conj(x_i) e_i^* with e_i^* = sum_j S_ij e_j.
	return involution.transpose() * x.conjugate();
}

bool LieBasis::is_real(const DerivationVector& x, double tol) const
{
	if (x.size() != dim())
		return false;
	double scale = std::max(1.0, x.norm());
	for (Index i = 0; i < dim(); ++i)
	{
		if (std::abs(x(i).imag()) > tol * scale)
			return false;
		if (!real_flags[std::size_t(i)] && std::abs(x(i)) > tol * scale)
			return false;
	}
	return true;
}

LieBasis build_lie_basis(const AlgebraContext& ctx, const std::vector<CMatrix>& mats)
{
	if (ctx.n < 1)
		throw std::invalid_argument("build_lie_basis: algebra size must be >= 1");

	const Index d = Index(mats.size());
	for (Index i = 0; i < d; ++i)
	{
		const CMatrix& m = mats[std::size_t(i)];
		std::ostringstream where;
		where << "build_lie_basis: generator " << i;
		if (m.rows() != ctx.n || m.cols() != ctx.n)
			throw std::invalid_argument(where.str() + " is not n x n");
		if (!is_finite(m))
			throw std::invalid_argument(where.str() + " has non-finite entries");
		if (std::abs(m.trace()) > 1e-8 * tol_scale(m))
			throw std::invalid_argument(where.str() + " is not traceless");
	}

	LieBasis basis;
	basis.n = ctx.n;
	basis.theta = mats;
	basis.structure.assign(std::size_t(d * d), CVector::Zero(d));
	basis.involution = CMatrix::Zero(d, d);
	basis.real_flags.assign(std::size_t(d), false);

	if (d == 0)
		return basis;

	SpanSolver span(mats);
	if (numeric_rank(span.columns) != d)
		throw std::invalid_argument("build_lie_basis: generators are linearly dependent");

	for (Index i = 0; i < d; ++i)
	{
		for (Index j = i + 1; j < d; ++j)
		{
			CMatrix bracket = mats[std::size_t(i)] * mats[std::size_t(j)] - mats[std::size_t(j)] * mats[std::size_t(i)];
			double residual = 0.0;
			CVector c = span.solve(bracket, &residual);
			if (residual > kSolveResidualTol * tol_scale(bracket))
			{
				std::ostringstream msg;
				msg << "build_lie_basis: bracket [" << i << "," << j
				    << "] leaves the span (not a Lie subalgebra), residual " << residual;
				throw std::invalid_argument(msg.str());
			}
			snap_small(c);
			basis.structure[std::size_t(i * d + j)] = c;
			basis.structure[std::size_t(j * d + i)] = -c;
		}
	}

	for (Index i = 0; i < d; ++i)
	{
		CMatrix star = -mats[std::size_t(i)].adjoint();
		double residual = 0.0;
		CVector s = span.solve(star, &residual);
		if (residual > kSolveResidualTol * tol_scale(star))
		{
			std::ostringstream msg;
			msg << "build_lie_basis: -theta_" << i << "^dagger leaves the span (g is not *-closed), residual "
			    << residual;
			throw std::invalid_argument(msg.str());
		}
		snap_small(s);
		basis.involution.row(i) = s.transpose();
		basis.real_flags[std::size_t(i)] =
		    (mats[std::size_t(i)] + mats[std::size_t(i)].adjoint()).norm() <= kDefaultTol * tol_scale(mats[std::size_t(i)]);
	}

	return basis;
}

CMatrix apply_derivation(const LieBasis& basis, const DerivationVector& x, const CMatrix& a)
{
	if (a.rows() != basis.n || a.cols() != basis.n)
		throw std::invalid_argument("apply_derivation: element is not n x n");
	CMatrix t = basis.theta_of(x);
	return t * a - a * t;
}

CMatrix theta_eval(const LieBasis& basis, const DerivationVector& x)
{
	return basis.theta_of(x);
}

DifferentialForm canonical_one_form(const LieBasis& basis)
{
	DifferentialForm theta(1, basis.n);
	for (Index i = 0; i < basis.dim(); ++i)
		theta.set_component({i}, basis.theta[std::size_t(i)]);
	return theta;
}

DifferentialForm DifferentialForm::scalar(const CMatrix& a)
{
	if (a.rows() != a.cols())
		throw std::invalid_argument("DifferentialForm: degree-0 value must be square");
	DifferentialForm form(0, a.rows());
	form.comps_[{}] = a;
	return form;
}

void DifferentialForm::set_component(const IndexTuple& tuple, const CMatrix& value)
{
	if (int(tuple.size()) != degree_)
		throw std::invalid_argument("DifferentialForm: tuple length does not match degree");
	for (std::size_t i = 0; i + 1 < tuple.size(); ++i)
		if (tuple[i] >= tuple[i + 1])
			throw std::invalid_argument("DifferentialForm: tuple must be strictly increasing");
	if (value.rows() != n_ || value.cols() != n_)
		throw std::invalid_argument("DifferentialForm: component must be n x n");
	comps_[tuple] = value;
}

CMatrix DifferentialForm::component(const IndexTuple& tuple) const
{
	auto it = comps_.find(tuple);
	if (it != comps_.end())
		return it->second;
	return CMatrix::Zero(n_, n_);
}

CMatrix DifferentialForm::evaluate(IndexTuple tuple) const
{
	if (int(tuple.size()) != degree_)
		throw std::invalid_argument("DifferentialForm: evaluation arity does not match degree");
	int sign = sort_sign(tuple);
	if (sign == 0)
		return CMatrix::Zero(n_, n_);
	return double(sign) * component(tuple);
}

double DifferentialForm::norm() const
{
	double sq = 0.0;
	for (const auto& [tuple, value] : comps_)
		sq += value.squaredNorm();
	return std::sqrt(sq);
}

DifferentialForm wedge(const LieBasis& basis, const DifferentialForm& omega, const DifferentialForm& eta)
{
	check_form_over_basis(basis, omega, "wedge");
	check_form_over_basis(basis, eta, "wedge");

	const Index d = basis.dim();
	const int p = omega.degree();
	const int q = eta.degree();
	DifferentialForm product(p + q, basis.n);
	if (Index(p + q) > d)
		return product; // zero beyond top degree

	for_each_increasing_tuple(d, p + q, [&](const std::vector<Index>& key) {
		CMatrix acc = CMatrix::Zero(basis.n, basis.n);
		// Signed sum over (p,q)-shuffles of the key.
		const unsigned total = unsigned(p + q);
		for (unsigned mask = 0; mask < (1u << total); ++mask)
		{
			if (unsigned(std::popcount(mask)) != unsigned(p))
				continue;
			std::vector<Index> left, right;
			left.reserve(std::size_t(p));
			right.reserve(std::size_t(q));
			int inversions = 0;
			int right_seen = 0;
			for (unsigned t = 0; t < total; ++t)
			{
				if (mask & (1u << t))
				{
					left.push_back(key[t]);
					inversions += right_seen;
				}
				else
				{
					right.push_back(key[t]);
					++right_seen;
				}
			}
			double sign = (inversions % 2 == 0) ? 1.0 : -1.0;
			acc += sign * (omega.component(left) * eta.component(right));
		}
		product.set_component(key, acc);
	});
	return product;
}

DifferentialForm differential(const LieBasis& basis, const DifferentialForm& omega)
{
	check_form_over_basis(basis, omega, "differential");

	const Index d = basis.dim();
	const int p = omega.degree();
	DifferentialForm result(p + 1, basis.n);
	if (Index(p + 1) > d)
		return result;

	for_each_increasing_tuple(d, p + 1, [&](const std::vector<Index>& key) {
		CMatrix acc = CMatrix::Zero(basis.n, basis.n);

		// Derivation terms: e_{k_t} acting on the component with k_t omitted.
		for (int t = 0; t <= p; ++t)
		{
			std::vector<Index> rest;
			rest.reserve(std::size_t(p));
			for (int u = 0; u <= p; ++u)
				if (u != t)
					rest.push_back(key[std::size_t(u)]);
			const CMatrix& th = basis.theta[std::size_t(key[std::size_t(t)])];
			CMatrix value = omega.component(rest);
			double sign = (t % 2 == 0) ? 1.0 : -1.0;
			acc += sign * (th * value - value * th);
		}

		// Bracket terms, expanded through the structure constants.
		for (int s = 0; s <= p; ++s)
		{
			for (int t = s + 1; t <= p; ++t)
			{
				const CVector& c = basis.bracket_coeffs(key[std::size_t(s)], key[std::size_t(t)]);
				std::vector<Index> rest;
				rest.reserve(std::size_t(p));
				for (int u = 0; u <= p; ++u)
					if (u != s && u != t)
						rest.push_back(key[std::size_t(u)]);
				double sign = ((s + t) % 2 == 0) ? 1.0 : -1.0;
				for (Index l = 0; l < d; ++l)
				{
					if (c(l) == Complex(0.0, 0.0))
						continue;
					std::vector<Index> args;
					args.reserve(std::size_t(p));
					args.push_back(l);
					args.insert(args.end(), rest.begin(), rest.end());
					acc += sign * c(l) * omega.evaluate(std::move(args));
				}
			}
		}
		result.set_component(key, acc);
	});
	return result;
}

namespace {

// sum over j-tuples of prod_t S(key_t, j_t) * omega(e_{j_1}..e_{j_p}), built
// recursively so that exact zeros in S prune whole subtrees.
void involution_sum(const LieBasis& basis, const DifferentialForm& omega, const std::vector<Index>& key,
                    std::size_t level, Complex coeff, std::vector<Index>& args, CMatrix& acc)
{
	if (level == key.size())
	{
		acc += coeff * omega.evaluate(args);
		return;
	}
	for (Index j = 0; j < basis.dim(); ++j)
	{
		Complex s = basis.involution(key[level], j);
		if (s == Complex(0.0, 0.0))
			continue;
		args.push_back(j);
		involution_sum(basis, omega, key, level + 1, coeff * s, args, acc);
		args.pop_back();
	}
}

} // namespace

DifferentialForm form_involution(const LieBasis& basis, const DifferentialForm& omega)
{
	check_form_over_basis(basis, omega, "form_involution");

	const int p = omega.degree();
	DifferentialForm result(p, basis.n);
	if (p == 0)
	{
		result.set_component({}, omega.component({}).adjoint());
		return result;
	}

	for_each_increasing_tuple(basis.dim(), p, [&](const std::vector<Index>& key) {
		CMatrix sum = CMatrix::Zero(basis.n, basis.n);
		std::vector<Index> args;
		args.reserve(std::size_t(p));
		involution_sum(basis, omega, key, 0, Complex(1.0, 0.0), args, sum);
		result.set_component(key, sum.adjoint().eval());
	});
	return result;
}

double closure_defect(const LieBasis& basis)
{
	double worst = 0.0;
	for (Index i = 0; i < basis.dim(); ++i)
		for (Index j = i + 1; j < basis.dim(); ++j)
		{
			const CMatrix& a = basis.theta[std::size_t(i)];
			const CMatrix& b = basis.theta[std::size_t(j)];
			CMatrix defect = a * b - b * a;
			const CVector& c = basis.bracket_coeffs(i, j);
			for (Index k = 0; k < basis.dim(); ++k)
				defect -= c(k) * basis.theta[std::size_t(k)];
			worst = std::max(worst, defect.norm());
		}
	return worst;
}

double jacobi_defect(const LieBasis& basis)
{
	const Index d = basis.dim();
	double worst = 0.0;
	for (Index i = 0; i < d; ++i)
		for (Index j = i + 1; j < d; ++j)
			for (Index k = j + 1; k < d; ++k)
			{
				CVector sum = CVector::Zero(d);
				for (Index l = 0; l < d; ++l)
				{
					sum += basis.bracket_coeffs(i, j)(l) * basis.bracket_coeffs(l, k);
					sum += basis.bracket_coeffs(j, k)(l) * basis.bracket_coeffs(l, i);
					sum += basis.bracket_coeffs(k, i)(l) * basis.bracket_coeffs(l, j);
				}
				worst = std::max(worst, sum.norm());
			}
	return worst;
}

double involution_defect(const LieBasis& basis)
{
	const Index d = basis.dim();
	double worst = 0.0;
	for (Index i = 0; i < d; ++i)
	{
		CMatrix defect = -basis.theta[std::size_t(i)].adjoint();
		for (Index j = 0; j < d; ++j)
			defect -= basis.involution(i, j) * basis.theta[std::size_t(j)];
		worst = std::max(worst, defect.norm());
	}
	if (d > 0)
		worst = std::max(
		    worst, (basis.involution * basis.involution.conjugate() - CMatrix::Identity(d, d)).norm());
	return worst;
}

double maurer_cartan_defect(const LieBasis& basis)
{
	if (basis.dim() < 2)
		return 0.0;
	DifferentialForm theta = canonical_one_form(basis);
	DifferentialForm dtheta = differential(basis, theta);
	DifferentialForm theta_sq = wedge(basis, theta, theta);

	double defect = 0.0;
	for_each_increasing_tuple(basis.dim(), 2, [&](const std::vector<Index>& key) {
		defect = std::max(defect, (dtheta.component(key) - theta_sq.component(key)).norm());
	});
	return defect;
}

} // namespace fh
