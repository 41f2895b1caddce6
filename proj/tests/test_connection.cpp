#include "fh/connection.hpp"

#include "fh/linalg.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace fh;

namespace {

std::shared_ptr<const LieBasis> su2_basis()
{
	const Complex i(0.0, 1.0);
	std::vector<CMatrix> mats = {-0.5 * i * oracle::pauli(1), -0.5 * i * oracle::pauli(2),
	                             -0.5 * i * oracle::pauli(3)};
	return std::make_shared<const LieBasis>(build_lie_basis(AlgebraContext{2}, mats));
}

GaugeConnection spin_half_flat()
{
	auto basis = su2_basis();
	std::vector<CMatrix> potential = {basis->theta[0], basis->theta[1], basis->theta[2]};
	return make_connection(basis, 2, potential);
}

DerivationVector unit(Index d, Index i)
{
	DerivationVector x = DerivationVector::Zero(d);
	x(i) = Complex(1.0, 0.0);
	return x;
}

} // namespace

TEST_CASE("module_from_projector on identity, zero and conjugated projectors")
{
	ProjectorModule full = module_from_projector(2, 2, CMatrix::Identity(4, 4));
	CHECK(full.m == 4);

	ProjectorModule empty = module_from_projector(2, 2, CMatrix::Zero(4, 4));
	CHECK(empty.m == 0);

	CMatrix u = haar_unitary(4, 11);
	CMatrix diag = CMatrix::Zero(4, 4);
	diag(0, 0) = diag(1, 1) = 1.0;
	CMatrix p = u * diag * u.adjoint();
	ProjectorModule half = module_from_projector(2, 2, p);
	CHECK(half.m == 2);
	CHECK(half.m == std::lround(p.trace().real())); // rank oracle: trace of a projector

	// columns orthonormal and inside the image of p
	CHECK((half.image_basis.adjoint() * half.image_basis - CMatrix::Identity(2, 2)).norm() <= 1e-12);
	CHECK((p * half.image_basis - half.image_basis).norm() <= 1e-10);

	CHECK_THROWS_AS(module_from_projector(2, 2, 0.5 * CMatrix::Identity(4, 4)), std::invalid_argument);
	CHECK_THROWS_AS(module_from_projector(2, 3, CMatrix::Identity(4, 4)), std::invalid_argument);
}

TEST_CASE("module_from_projector accepts oblique idempotents")
{
	CMatrix p(2, 2); // p^2 = p but p is not hermitian
	p << 1, 1, 0, 0;
	ProjectorModule mod = module_from_projector(1, 2, p);
	CHECK(mod.m == 1);
	// the single column spans the column space of p
	CHECK((p * mod.image_basis - mod.image_basis).norm() <= 1e-12);
}

TEST_CASE("hermitian_pairing is the adjoint product")
{
	CMatrix e11 = CMatrix::Zero(2, 2);
	e11(0, 0) = 1.0;
	CHECK((hermitian_pairing(e11, e11) - e11).norm() == 0.0);

	SplitMix64 rng(51);
	CMatrix s = oracle::random_matrix(rng, 3, 2);
	CMatrix gram = hermitian_pairing(s, s);
	CHECK((gram - gram.adjoint()).norm() <= 1e-14);
	HermitianEig eig = eig_hermitian(gram);
	CHECK(eig.eigenvalues.minCoeff() >= -1e-12);

	CMatrix t = oracle::random_matrix(rng, 3, 2);
	CMatrix a = oracle::random_matrix(rng, 2, 2);
	CHECK((hermitian_pairing(s, t * a) - hermitian_pairing(s, t) * a).norm() <= 1e-13);

	CHECK_THROWS_AS(hermitian_pairing(s, a), std::invalid_argument);
}

TEST_CASE("covariant_derivative of the canonical connection and the Leibniz rule")
{
	auto basis = su2_basis();
	GaugeConnection conn0 = canonical_connection(basis, 2);

	DerivationVector x = unit(3, 2);
	CHECK((covariant_derivative(conn0, x, CMatrix::Identity(2, 2)) + basis->theta[2]).norm() == 0.0);

	GaugeConnection flat = spin_half_flat();
	CHECK(covariant_derivative(flat, x, CMatrix::Identity(2, 2)).norm() <= 1e-15);

	SplitMix64 rng(52);
	for (int trial = 0; trial < 10; ++trial)
	{
		DerivationVector y(3);
		for (Index i = 0; i < 3; ++i)
			y(i) = rng.complex_normal();
		CMatrix s = oracle::random_matrix(rng, 2, 2);
		CMatrix a = oracle::random_matrix(rng, 2, 2);
		CMatrix lhs = covariant_derivative(flat, y, s * a);
		CMatrix rhs = covariant_derivative(flat, y, s) * a + s * apply_derivation(*basis, y, a);
		CHECK((lhs - rhs).norm() <= 1e-12 * std::max(1.0, s.norm() * a.norm()));
	}
}

TEST_CASE("connections are an affine space over the potentials")
{
	auto basis = su2_basis();
	GaugeConnection conn0 = canonical_connection(basis, 2);
	GaugeConnection flat = spin_half_flat();

	SplitMix64 rng(53);
	DerivationVector x = unit(3, 0);
	CMatrix s = oracle::random_matrix(rng, 2, 2);
	CMatrix difference = covariant_derivative(flat, x, s) - covariant_derivative(conn0, x, s);
	CHECK((difference - flat.potential[0] * s).norm() <= 1e-14);
}

TEST_CASE("curvature of representations vanishes; the general formula matches")
{
	GaugeConnection flat = spin_half_flat();
	for (Index i = 0; i < 3; ++i)
		for (Index j = 0; j < 3; ++j)
			CHECK(curvature(flat, i, j).norm() <= 1e-12);

	auto basis = su2_basis();
	std::vector<CMatrix> one = {basis->theta[0], CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)};
	GaugeConnection partial = make_connection(basis, 2, one);
	CHECK((curvature(partial, 1, 2) + basis->theta[0]).norm() <= 1e-12); // F(e2,e3) = -B_1
	CHECK(curvature(partial, 0, 1).norm() <= 1e-12);

	GaugeConnection zero = canonical_connection(basis, 2);
	CHECK(max_curvature_norm(zero) == 0.0);

	CHECK_THROWS_AS(curvature(flat, 0, 3), std::invalid_argument);
}

TEST_CASE("flatness holds exactly when the potential represents the bracket")
{
	auto basis = su2_basis();
	SplitMix64 rng(54);

	// A gauge transform of a representation is again flat.
	CMatrix u = haar_unitary(2, 99);
	GaugeConnection conjugated = gauge_transform(spin_half_flat(), u);
	CHECK(max_curvature_norm(conjugated) <= 1e-12);

	// A generic antihermitian potential is not.
	std::vector<CMatrix> generic;
	for (int i = 0; i < 3; ++i)
		generic.push_back(oracle::random_antihermitian(rng, 2, 1.0));
	GaugeConnection crooked = make_connection(basis, 2, generic);
	double defect = 0.0;
	for (Index i = 0; i < 3; ++i)
		for (Index j = i + 1; j < 3; ++j)
		{
			const CMatrix& bi = crooked.potential[std::size_t(i)];
			const CMatrix& bj = crooked.potential[std::size_t(j)];
			CMatrix rep = bi * bj - bj * bi;
			for (Index k = 0; k < 3; ++k)
				rep -= basis->bracket_coeffs(i, j)(k) * crooked.potential[std::size_t(k)];
			defect = std::max(defect, rep.norm());
			CHECK(curvature(crooked, i, j).norm() == doctest::Approx(rep.norm()).epsilon(1e-12));
		}
	CHECK(max_curvature_norm(crooked) > 1e-3); // generic draws are far from flat
	CHECK(max_curvature_norm(crooked) == doctest::Approx(defect).epsilon(1e-12));
}

TEST_CASE("hermiticity_check inspects the real-flagged components")
{
	GaugeConnection flat = spin_half_flat();
	CHECK(hermiticity_check(flat));

	auto basis = su2_basis();
	std::vector<CMatrix> bad = {oracle::pauli(1), CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)};
	CHECK(!hermiticity_check(make_connection(basis, 2, bad)));

	CHECK(hermiticity_check(canonical_connection(basis, 2)));
}

TEST_CASE("compatibility with the hermitian structure")
{
	GaugeConnection flat = spin_half_flat();
	SplitMix64 rng(55);
	for (int trial = 0; trial < 10; ++trial)
	{
		DerivationVector x(3);
		for (Index i = 0; i < 3; ++i)
			x(i) = Complex(rng.uniform(-1.0, 1.0), 0.0);
		CMatrix s = oracle::random_matrix(rng, 2, 2);
		CMatrix t = oracle::random_matrix(rng, 2, 2);
		double scale = std::max(1.0, s.norm() * t.norm());
		CHECK(compatibility_defect(flat, x, s, t) <= 1e-10 * scale);
	}

	auto basis = su2_basis();
	std::vector<CMatrix> bad = {oracle::pauli(1), CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)};
	GaugeConnection hermitian_potential = make_connection(basis, 2, bad);
	SplitMix64 rng2(56);
	CMatrix s = oracle::random_matrix(rng2, 2, 2);
	CMatrix t = oracle::random_matrix(rng2, 2, 2);
	CHECK(compatibility_defect(hermitian_potential, unit(3, 0), s, t) > 1e-3);

	CHECK(compatibility_defect(flat, unit(3, 0), CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)) == 0.0);
}

TEST_CASE("gauge transformations")
{
	GaugeConnection flat = spin_half_flat();
	GaugeConnection same = gauge_transform(flat, CMatrix::Identity(2, 2));
	for (Index i = 0; i < 3; ++i)
		CHECK((same.potential[std::size_t(i)] - flat.potential[std::size_t(i)]).norm() == 0.0);

	CMatrix u = haar_unitary(2, 7);
	GaugeConnection moved = gauge_transform(flat, u);
	for (Index i = 0; i < 3; ++i)
		for (Index j = 0; j < 3; ++j)
			CHECK((curvature(moved, i, j) - u * curvature(flat, i, j) * u.adjoint()).norm() <= 1e-12);
	CHECK(hermiticity_check(moved)); // conjugation preserves antihermiticity

	// group action: (nabla^u)^v = nabla^{vu}
	CMatrix v = haar_unitary(2, 8);
	GaugeConnection twice = gauge_transform(moved, v);
	GaugeConnection direct = gauge_transform(flat, v * u);
	for (Index i = 0; i < 3; ++i)
		CHECK((twice.potential[std::size_t(i)] - direct.potential[std::size_t(i)]).norm() <= 1e-12);

	CHECK_THROWS_AS(gauge_transform(flat, 2.0 * CMatrix::Identity(2, 2)), std::invalid_argument);
}
