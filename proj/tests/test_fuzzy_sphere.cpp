#include "fh/fuzzy_sphere.hpp"

#include "fh/linalg.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace fh;

TEST_CASE("spin matrices reproduce the Pauli and spin-1 generators")
{
	const Complex i(0.0, 1.0);
	std::array<CMatrix, 3> half = spin_matrices(SpinLabel{1});
	for (int a = 0; a < 3; ++a)
		CHECK((half[std::size_t(a)] + 0.5 * i * oracle::pauli(a + 1)).norm() <= 1e-15);

	std::array<CMatrix, 3> one = spin_matrices(SpinLabel{2});
	CMatrix expected = CMatrix::Zero(3, 3);
	expected(0, 0) = -i;
	expected(2, 2) = i;
	CHECK((one[2] - expected).norm() <= 1e-15);

	std::array<CMatrix, 3> trivial = spin_matrices(SpinLabel{0});
	for (const CMatrix& t : trivial)
	{
		CHECK(t.rows() == 1);
		CHECK(t.norm() == 0.0);
	}
}

TEST_CASE("spin matrices close under the bracket with unit structure constants")
{
	for (int two_j = 1; two_j <= 5; ++two_j)
	{
		std::array<CMatrix, 3> theta = spin_matrices(SpinLabel{two_j});
		for (int a = 0; a < 3; ++a)
		{
			int b = (a + 1) % 3;
			int c = (a + 2) % 3;
			CMatrix bracket = theta[std::size_t(a)] * theta[std::size_t(b)] -
			                  theta[std::size_t(b)] * theta[std::size_t(a)];
			CHECK((bracket - theta[std::size_t(c)]).norm() <= 1e-10);
		}
	}
}

TEST_CASE("Casimir element is -j(j+1)")
{
	for (int two_j = 1; two_j <= 10; ++two_j)
	{
		SpinLabel j{two_j};
		std::array<CMatrix, 3> theta = spin_matrices(j);
		CMatrix casimir = theta[0] * theta[0] + theta[1] * theta[1] + theta[2] * theta[2];
		double jj = j.j() * (j.j() + 1.0);
		CHECK((casimir + jj * CMatrix::Identity(j.dimension(), j.dimension())).norm() <= 1e-10);
	}
}

TEST_CASE("spin_basis passes validation with all real flags")
{
	for (int two_j : {1, 2, 5})
	{
		LieBasis basis = spin_basis(SpinLabel{two_j});
		CHECK(basis.dim() == 3);
		for (bool flag : basis.real_flags)
			CHECK(flag);
	}
}

TEST_CASE("build_scenario assembles block-diagonal flat hermitian connections")
{
	Scenario free = build_scenario(SpinLabel{1}, {SpinLabel{1}});
	CHECK(free.algebra_n == 2);
	CHECK(free.module_m == 2);
	for (int a = 0; a < 3; ++a)
		CHECK((free.gauge_potential[std::size_t(a)] - free.lie_basis[std::size_t(a)]).norm() == 0.0);

	Scenario trivial = build_scenario(SpinLabel{1}, {SpinLabel{0}, SpinLabel{0}});
	CHECK(trivial.module_m == 2);
	for (const CMatrix& b : trivial.gauge_potential)
		CHECK(b.norm() == 0.0);

	Scenario mixed = build_scenario(SpinLabel{2}, {SpinLabel{0}, SpinLabel{2}});
	CHECK(mixed.algebra_n == 3);
	CHECK(mixed.module_m == 4);
	auto basis = std::make_shared<const LieBasis>(spin_basis(SpinLabel{2}));
	GaugeConnection conn = make_connection(basis, mixed.module_m, mixed.gauge_potential);
	CHECK(max_curvature_norm(conn) <= 1e-10);
	CHECK(hermiticity_check(conn));

	CHECK_THROWS_AS(build_scenario(SpinLabel{1}, {}), std::invalid_argument);
}

TEST_CASE("parse_spin accepts half-integers only")
{
	CHECK(parse_spin("0.5").two_j == 1);
	CHECK(parse_spin("1").two_j == 2);
	CHECK(parse_spin("2.5").two_j == 5);
	CHECK_THROWS_AS(parse_spin("0.3"), std::invalid_argument);
	CHECK_THROWS_AS(parse_spin("-1"), std::invalid_argument);
	CHECK_THROWS_AS(parse_spin("x"), std::invalid_argument);
	CHECK_THROWS_AS(parse_spin("100"), std::invalid_argument);
}

TEST_CASE("gauge copy report separates {0,0} from {1/2} at equal curvature")
{
	GaugeCopyReport report =
	    gauge_copy_report(SpinLabel{1}, {{SpinLabel{0}, SpinLabel{0}}, {SpinLabel{1}}});

	REQUIRE(report.entries.size() == 2);
	for (const GaugeCopyEntry& entry : report.entries)
	{
		CHECK(entry.max_curvature <= 1e-12);
		CHECK(entry.hermitian);
	}
	CHECK(std::abs(report.entries[0].observables[0] - Complex(2.0, 0.0)) <= 1e-12);
	CHECK(std::abs(report.entries[1].observables[0] - Complex(2.0 * std::cos(0.5), 0.0)) <= 1e-12);
	CHECK(std::abs(report.entries[0].observables[0] - report.entries[1].observables[0]) > 0.24);

	REQUIRE(report.pairs.size() == 1);
	CHECK(!report.pairs[0].verdict.equivalent);
	REQUIRE(report.pairs[0].verdict.separating_word.has_value());
	CHECK(report.pairs[0].verdict.separating_word->size() <= 3);
}

TEST_CASE("gauge copy report: same multiset on different block order is equivalent")
{
	GaugeCopyReport report = gauge_copy_report(
	    SpinLabel{1}, {{SpinLabel{0}, SpinLabel{1}}, {SpinLabel{1}, SpinLabel{0}}});
	REQUIRE(report.pairs.size() == 1);
	// The block swap is a permutation unitary; the spectra of every random
	// hermitian combination stay degenerate here (a zero block plus the zero
	// weight of spin 1), so the verdict may arrive as trace agreement.
	CHECK(report.pairs[0].verdict.equivalent);
	CHECK(report.pairs[0].verdict.max_trace_gap <= 1e-10);
}

TEST_CASE("gauge copy report at j = 1: {0,1} vs {1/2,1/2}")
{
	GaugeCopyReport report = gauge_copy_report(
	    SpinLabel{2}, {{SpinLabel{0}, SpinLabel{2}}, {SpinLabel{1}, SpinLabel{1}}});

	// block-diagonal exponential oracle
	double w_01 = 1.0 + 1.0 + 2.0 * std::cos(1.0);
	double w_hh = 4.0 * std::cos(0.5);
	CHECK(std::abs(report.entries[0].observables[0] - Complex(w_01, 0.0)) <= 1e-12);
	CHECK(std::abs(report.entries[1].observables[0] - Complex(w_hh, 0.0)) <= 1e-12);
	CHECK(!report.pairs[0].verdict.equivalent);

	for (const GaugeCopyEntry& entry : report.entries)
		CHECK(entry.max_curvature <= 1e-10);
}

TEST_CASE("gauge copy report rejects mismatched module sizes")
{
	CHECK_THROWS_AS(gauge_copy_report(SpinLabel{1}, {{SpinLabel{0}}, {SpinLabel{1}}}),
	                std::invalid_argument);
}
