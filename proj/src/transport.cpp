#include "fh/transport.hpp"

#include "fh/linalg.hpp"
#include "fh/rng.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fh {

namespace {

constexpr double kExpGuard = 50.0;

void check_exp_guard(const CMatrix& generator, double tau, const char* who)
{
	if (std::abs(tau) * generator.norm() > kExpGuard)
	{
		std::ostringstream msg;
		msg << who << ": ||tau * generator||_F exceeds the exponential guard " << kExpGuard
		    << "; rescale tau or the potential";
		throw std::invalid_argument(msg.str());
	}
}

std::vector<Index> min_cyclic_rotation(const std::vector<Index>& tuple)
{
	std::vector<Index> best = tuple;
	std::vector<Index> rotated = tuple;
	for (std::size_t r = 1; r < tuple.size(); ++r)
	{
		std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
		if (rotated < best)
			best = rotated;
	}
	return best;
}

} // namespace

Word make_word(const LieBasis& basis, std::vector<DerivationVector> letters)
{
	if (letters.empty())
		throw std::invalid_argument("make_word: a word must have at least one letter");
	bool real = true;
	for (const DerivationVector& x : letters)
	{
		if (x.size() != basis.dim())
			throw std::invalid_argument("make_word: letter length does not match basis dimension");
		real = real && basis.is_real(x);
	}
	return Word{std::move(letters), real};
}

Word basis_word(const LieBasis& basis, const std::vector<Index>& indices)
{
	std::vector<DerivationVector> letters;
	letters.reserve(indices.size());
	for (Index i : indices)
	{
		if (i < 0 || i >= basis.dim())
			throw std::invalid_argument("basis_word: index out of range");
		DerivationVector x = DerivationVector::Zero(basis.dim());
		x(i) = Complex(1.0, 0.0);
		letters.push_back(std::move(x));
	}
	return make_word(basis, std::move(letters));
}

CMatrix automorphism_flow(const LieBasis& basis, const DerivationVector& x, double tau, const CMatrix& a)
{
	if (a.rows() != basis.n || a.cols() != basis.n)
		throw std::invalid_argument("automorphism_flow: element is not n x n");
	CMatrix generator = basis.theta_of(x);
	check_exp_guard(generator, tau, "automorphism_flow");
	return mat_exp(generator, tau) * a * mat_exp(generator, -tau);
}

CMatrix module_transport(const GaugeConnection& conn, const DerivationVector& x, double tau, const CMatrix& s)
{
	if (s.rows() != conn.module.m || s.cols() != conn.module.n)
		throw std::invalid_argument("module_transport: section is not m x n");
	CMatrix b = conn.potential_of(x);
	CMatrix t = conn.basis->theta_of(x);
	check_exp_guard(b, tau, "module_transport");
	check_exp_guard(t, tau, "module_transport");
	return mat_exp(b, tau) * s * mat_exp(t, -tau);
}

CMatrix transport_endomorphism(const GaugeConnection& conn, const DerivationVector& x, double tau)
{
	CMatrix b = conn.potential_of(x);
	check_exp_guard(b, tau, "transport_endomorphism");
	return mat_exp(b, tau);
}

double ode_defect(const GaugeConnection& conn, const DerivationVector& x, double tau, double h, const CMatrix& s)
{
	if (h <= 0.0)
		throw std::invalid_argument("ode_defect: h must be positive");
	CMatrix forward = module_transport(conn, x, tau + h, s);
	CMatrix backward = module_transport(conn, x, tau - h, s);
	CMatrix derivative = (forward - backward) / (2.0 * h);
	CMatrix expected = covariant_derivative(conn, x, module_transport(conn, x, tau, s));
	return (derivative - expected).norm();
}

Complex observable(const GaugeConnection& conn, const Word& word, double tau)
{
	if (word.letters.empty())
		throw std::invalid_argument("observable: empty word");
	CMatrix product = CMatrix::Identity(conn.module.m, conn.module.m);
	for (const DerivationVector& x : word.letters)
		product *= transport_endomorphism(conn, x, tau);
	return product.trace();
}

std::map<std::vector<Index>, Complex> trace_monomials(const GaugeConnection& conn, Index max_degree)
{
	if (max_degree < 1)
		throw std::invalid_argument("trace_monomials: max_degree must be >= 1");

	std::vector<Index> real_indices;
	for (Index i = 0; i < conn.dim(); ++i)
		if (conn.basis->real_flags[std::size_t(i)])
			real_indices.push_back(i);

	std::map<std::vector<Index>, Complex> traces;
	std::vector<Index> tuple;

	// Depth-first over tuples of real-flagged indices; only the canonical
	// cyclic representative is evaluated.
	auto recurse = [&](auto&& self, const CMatrix& prefix) -> void {
		if (!tuple.empty())
		{
			std::vector<Index> canon = min_cyclic_rotation(tuple);
			if (canon == tuple)
				traces.emplace(tuple, prefix.trace());
		}
		if (Index(tuple.size()) == max_degree)
			return;
		for (Index i : real_indices)
		{
			tuple.push_back(i);
			self(self, (prefix * conn.potential[std::size_t(i)]).eval());
			tuple.pop_back();
		}
	};
	recurse(recurse, CMatrix::Identity(conn.module.m, conn.module.m));
	return traces;
}

namespace {

struct TraceScan
{
	double max_gap = 0.0;
	std::vector<Index> argmax_word;
	Index degree_scanned = 0;
};

// Compares Tr of words of the two potentials degree by degree, within budget.
TraceScan scan_trace_words(const GaugeConnection& a, const GaugeConnection& b, Index max_degree,
                           std::uint64_t budget)
{
	std::vector<Index> real_indices;
	for (Index i = 0; i < a.dim(); ++i)
		if (a.basis->real_flags[std::size_t(i)])
			real_indices.push_back(i);

	TraceScan scan;
	if (real_indices.empty())
		return scan;

	const std::uint64_t base = real_indices.size();
	std::uint64_t planned = 0;
	Index top_degree = 0;
	for (Index k = 1; k <= max_degree; ++k)
	{
		std::uint64_t count = 1;
		bool overflow = false;
		for (Index t = 0; t < k; ++t)
		{
			if (count > budget / base)
			{
				overflow = true;
				break;
			}
			count *= base;
		}
		if (overflow || planned + count > budget)
			break;
		planned += count;
		top_degree = k;
	}
	top_degree = std::max(top_degree, Index(1)); // always scan at least degree 1
	scan.degree_scanned = top_degree;

	std::vector<Index> tuple;
	auto recurse = [&](auto&& self, const CMatrix& prod_a, const CMatrix& prod_b) -> void {
		if (!tuple.empty())
		{
			std::vector<Index> canon = min_cyclic_rotation(tuple);
			if (canon == tuple)
			{
				double gap = std::abs(prod_a.trace() - prod_b.trace());
				if (gap > scan.max_gap)
				{
					scan.max_gap = gap;
					scan.argmax_word = tuple;
				}
			}
		}
		if (Index(tuple.size()) == top_degree)
			return;
		for (Index i : real_indices)
		{
			tuple.push_back(i);
			self(self, (prod_a * a.potential[std::size_t(i)]).eval(),
			     (prod_b * b.potential[std::size_t(i)]).eval());
			tuple.pop_back();
		}
	};
	recurse(recurse, CMatrix::Identity(a.module.m, a.module.m), CMatrix::Identity(b.module.m, b.module.m));
	return scan;
}

// Aligns the relative eigenvector phases so that conjugation by u = V' D V^dagger
// carries every potential component of `a` onto the one of `b`. The phase of
// each eigenvector pair is read off the largest-magnitude matrix elements of
// the potentials in the two eigenbases, walked along a maximum-weight spanning
// tree; disconnected blocks get independent anchors, which is harmless because
// then every potential is block diagonal in this eigenbasis.
CMatrix align_eigenbases(const GaugeConnection& a, const GaugeConnection& b, const CMatrix& va,
                         const CMatrix& vb)
{
	const Index m = a.module.m;
	const Index d = a.dim();

	std::vector<CMatrix> ma(static_cast<std::size_t>(d));
	std::vector<CMatrix> mb(static_cast<std::size_t>(d));
	for (Index i = 0; i < d; ++i)
	{
		ma[std::size_t(i)] = va.adjoint() * a.potential[std::size_t(i)] * va;
		mb[std::size_t(i)] = vb.adjoint() * b.potential[std::size_t(i)] * vb;
	}

	Eigen::MatrixXd weight = Eigen::MatrixXd::Zero(m, m);
	Eigen::MatrixXi channel = Eigen::MatrixXi::Zero(m, m);
	for (Index k = 0; k < m; ++k)
		for (Index l = 0; l < m; ++l)
			for (Index i = 0; i < d; ++i)
			{
				double w = std::min(std::abs(ma[std::size_t(i)](k, l)), std::abs(mb[std::size_t(i)](k, l)));
				if (w > weight(k, l))
				{
					weight(k, l) = w;
					channel(k, l) = int(i);
				}
			}

	CVector phase = CVector::Zero(m);
	std::vector<bool> settled(std::size_t(m), false);
	phase(0) = Complex(1.0, 0.0);
	settled[0] = true;

	for (Index step = 1; step < m; ++step)
	{
		double best = -1.0;
		Index best_k = -1, best_l = -1;
		for (Index k = 0; k < m; ++k)
		{
			if (!settled[std::size_t(k)])
				continue;
			for (Index l = 0; l < m; ++l)
			{
				if (settled[std::size_t(l)])
					continue;
				double w = std::max(weight(k, l), weight(l, k));
				if (w > best)
				{
					best = w;
					best_k = k;
					best_l = l;
				}
			}
		}
		Index next = best_l;
		if (best < 1e-12)
		{
			// New block, free anchor.
			phase(next) = Complex(1.0, 0.0);
			settled[std::size_t(next)] = true;
			continue;
		}
		Complex ratio;
		if (weight(best_k, best_l) >= weight(best_l, best_k))
		{
			// mb(k,l) = phase_k * ma(k,l) * conj(phase_l)
			Index i = channel(best_k, best_l);
			ratio = std::conj(mb[std::size_t(i)](best_k, best_l) / (phase(best_k) * ma[std::size_t(i)](best_k, best_l)));
		}
		else
		{
			// mb(l,k) = phase_l * ma(l,k) * conj(phase_k)
			Index i = channel(best_l, best_k);
			ratio = mb[std::size_t(i)](best_l, best_k) * phase(best_k) / ma[std::size_t(i)](best_l, best_k);
		}
		double mag = std::abs(ratio);
		phase(next) = (mag > 0.0) ? ratio / mag : Complex(1.0, 0.0);
		settled[std::size_t(next)] = true;
	}

	return vb * phase.asDiagonal() * va.adjoint();
}

} // namespace

EquivalenceVerdict decide_gauge_equivalence(const GaugeConnection& a, const GaugeConnection& b,
                                            const EquivalenceOptions& options)
{
	if (a.module.m != b.module.m || a.dim() != b.dim())
		throw std::invalid_argument("decide_gauge_equivalence: connections have mismatched dimensions");
	for (Index i = 0; i < a.dim(); ++i)
		if ((a.basis->theta[std::size_t(i)] - b.basis->theta[std::size_t(i)]).norm() > 1e-8)
			throw std::invalid_argument("decide_gauge_equivalence: connections use different Lie bases");
	if (!hermiticity_check(a) || !hermiticity_check(b))
		throw std::invalid_argument("decide_gauge_equivalence: connections must be hermitian");

	const Index m = a.module.m;
	const Index d = a.dim();
	const Index max_degree = options.max_degree > 0 ? options.max_degree : m * m;

	EquivalenceVerdict verdict;

	// Phase 1: gauge-invariant trace words.
	TraceScan scan = scan_trace_words(a, b, max_degree, options.word_budget);
	verdict.max_trace_gap = scan.max_gap;
	verdict.trace_degree_scanned = scan.degree_scanned;
	if (scan.max_gap > options.tol)
	{
		verdict.equivalent = false;
		verdict.separating_word = scan.argmax_word;
		return verdict;
	}

	// Phase 2: witness search through simultaneous diagonalization of random
	// hermitian combinations of the potentials. The identity is tried first;
	// it certifies equal potentials even when every spectrum is degenerate.
	{
		double residual = 0.0;
		for (Index i = 0; i < d; ++i)
			residual = std::max(residual, (a.potential[std::size_t(i)] - b.potential[std::size_t(i)]).norm());
		if (residual <= options.tol)
		{
			verdict.equivalent = true;
			verdict.witness = CMatrix::Identity(m, m);
			verdict.witness_residual = residual;
			verdict.trials_used = 1;
			return verdict;
		}
	}

	SplitMix64 rng(options.seed);
	const Complex iunit(0.0, 1.0);
	for (Index trial = 0; trial < options.trials; ++trial)
	{
		verdict.trials_used = trial + 1;

		RVector r(d);
		for (Index i = 0; i < d; ++i)
			r(i) = rng.uniform(-1.0, 1.0);

		CMatrix ha = CMatrix::Zero(m, m);
		CMatrix hb = CMatrix::Zero(m, m);
		for (Index i = 0; i < d; ++i)
		{
			if (!a.basis->real_flags[std::size_t(i)])
				continue;
			ha += r(i) * (iunit * a.potential[std::size_t(i)]);
			hb += r(i) * (iunit * b.potential[std::size_t(i)]);
		}
		ha = 0.5 * (ha + ha.adjoint()).eval();
		hb = 0.5 * (hb + hb.adjoint()).eval();

		HermitianEig ea = eig_hermitian(ha);
		HermitianEig eb = eig_hermitian(hb);

		double min_gap = std::numeric_limits<double>::infinity();
		for (Index k = 0; k + 1 < m; ++k)
		{
			min_gap = std::min(min_gap, ea.eigenvalues(k + 1) - ea.eigenvalues(k));
			min_gap = std::min(min_gap, eb.eigenvalues(k + 1) - eb.eigenvalues(k));
		}
		if (m > 1 && min_gap <= 1e-6)
			continue; // degenerate spectrum, try another combination

		double spectra_gap = (ea.eigenvalues - eb.eigenvalues).cwiseAbs().maxCoeff();
		if (spectra_gap > options.tol * std::max(1.0, ea.eigenvalues.cwiseAbs().maxCoeff()))
			continue;

		CMatrix u = align_eigenbases(a, b, ea.eigenvectors, eb.eigenvectors);
		double residual = 0.0;
		for (Index i = 0; i < d; ++i)
			residual = std::max(
			    residual, (u * a.potential[std::size_t(i)] * u.adjoint() - b.potential[std::size_t(i)]).norm());
		if (residual <= options.tol)
		{
			verdict.equivalent = true;
			verdict.witness = std::move(u);
			verdict.witness_residual = residual;
			return verdict;
		}
	}

	// All traces agree but no witness surfaced; report equivalence with the
	// explicit trace-agreement-only marker.
	verdict.equivalent = true;
	verdict.trace_agreement_only = true;
	return verdict;
}

} // namespace fh
