#include "fh/fuzzy_sphere.hpp"

#include "fh/linalg.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fh {

SpinLabel parse_spin(const std::string& text)
{
	std::size_t used = 0;
	double value = -1.0;
	try
	{
		value = std::stod(text, &used);
	}
	catch (const std::exception&)
	{
		throw std::invalid_argument("spin label '" + text + "' is not a number");
	}
	if (used != text.size() || value < 0.0)
		throw std::invalid_argument("spin label '" + text + "' is not a nonnegative half-integer");
	double doubled = 2.0 * value;
	int two_j = int(std::lround(doubled));
	if (std::abs(doubled - two_j) > 1e-9)
		throw std::invalid_argument("spin label '" + text + "' is not a multiple of 1/2");
	if (two_j > 40)
		throw std::invalid_argument("spin label '" + text + "' exceeds the supported range (j <= 20)");
	return SpinLabel{two_j};
}

std::array<CMatrix, 3> spin_matrices(SpinLabel label)
{
	if (label.two_j < 0)
		throw std::invalid_argument("spin_matrices: negative spin");
	if (label.two_j > 40)
		throw std::invalid_argument("spin_matrices: spin exceeds the supported range (j <= 20), "
		                            "generator norms would leave the exponential guard");
	const Index dim = label.dimension();
	const double j = label.j();

	// Basis ordered by descending weight q = j, j-1, ..., -j, so that
	// J_3 = diag(j, ..., -j). The raising operator connects q to q + 1 with
	// matrix element sqrt(j(j+1) - q(q+1)).
	CMatrix raise = CMatrix::Zero(dim, dim);
	CMatrix jz = CMatrix::Zero(dim, dim);
	for (Index row = 0; row < dim; ++row)
	{
		double q = j - double(row);
		jz(row, row) = q;
		if (row + 1 < dim)
		{
			double q_below = q - 1.0;
			raise(row, row + 1) = std::sqrt(j * (j + 1.0) - q_below * (q_below + 1.0));
		}
	}
	CMatrix lower = raise.adjoint();
	const Complex iunit(0.0, 1.0);
	CMatrix j1 = 0.5 * (raise + lower);
	CMatrix j2 = -0.5 * iunit * (raise - lower);
	return {-iunit * j1, -iunit * j2, -iunit * jz};
}

LieBasis spin_basis(SpinLabel j)
{
	std::array<CMatrix, 3> theta = spin_matrices(j);
	return build_lie_basis(AlgebraContext{j.dimension()}, {theta[0], theta[1], theta[2]});
}

Scenario build_scenario(SpinLabel j, const std::vector<SpinLabel>& module_spins)
{
	if (module_spins.empty())
		throw std::invalid_argument("build_scenario: module spin list is empty");

	std::array<CMatrix, 3> theta = spin_matrices(j);

	Index m = 0;
	for (SpinLabel s : module_spins)
		m += s.dimension();

	std::vector<CMatrix> potential(3, CMatrix::Zero(m, m));
	Index offset = 0;
	for (SpinLabel s : module_spins)
	{
		std::array<CMatrix, 3> block = spin_matrices(s);
		for (int a = 0; a < 3; ++a)
			potential[std::size_t(a)].block(offset, offset, s.dimension(), s.dimension()) = block[std::size_t(a)];
		offset += s.dimension();
	}

	Scenario scenario;
	scenario.algebra_n = j.dimension();
	scenario.lie_basis = {theta[0], theta[1], theta[2]};
	scenario.real_hints = {true, true, true};
	scenario.real_hints_given = {true, true, true};
	scenario.module_m = m;
	scenario.gauge_potential = std::move(potential);

	auto unit = [](Index i) {
		DerivationVector x = DerivationVector::Zero(3);
		x(i) = Complex(1.0, 0.0);
		return x;
	};
	scenario.words = {{unit(2)}, {unit(2), unit(2)}, {unit(0), unit(1), unit(2)}};

	std::ostringstream spins;
	for (std::size_t k = 0; k < module_spins.size(); ++k)
	{
		if (k)
			spins << ",";
		spins << 0.5 * module_spins[k].two_j;
	}
	scenario.metadata["generator"] = "fuzzy-sphere";
	std::ostringstream jtext;
	jtext << 0.5 * j.two_j;
	scenario.metadata["j"] = jtext.str();
	scenario.metadata["module_spins"] = spins.str();
	return scenario;
}

GaugeCopyReport gauge_copy_report(SpinLabel j, const std::vector<std::vector<SpinLabel>>& spin_sets,
                                  const EquivalenceOptions& options)
{
	if (spin_sets.empty())
		throw std::invalid_argument("gauge_copy_report: no spin sets given");

	GaugeCopyReport report;
	report.j = j;
	report.word_indices = {{2}, {2, 2}, {0, 1, 2}};

	auto basis = std::make_shared<const LieBasis>(spin_basis(j));

	std::vector<GaugeConnection> connections;
	Index common_m = -1;
	for (const std::vector<SpinLabel>& spins : spin_sets)
	{
		Scenario scenario = build_scenario(j, spins);
		if (common_m < 0)
			common_m = scenario.module_m;
		else if (scenario.module_m != common_m)
			throw std::invalid_argument("gauge_copy_report: spin sets yield different module sizes");

		GaugeConnection conn = make_connection(basis, scenario.module_m, scenario.gauge_potential);
		GaugeCopyEntry entry;
		entry.spins = spins;
		entry.max_curvature = max_curvature_norm(conn);
		entry.hermitian = hermiticity_check(conn);
		for (const std::vector<Index>& word : report.word_indices)
			entry.observables.push_back(observable(conn, basis_word(*basis, word)));
		report.entries.push_back(std::move(entry));
		connections.push_back(std::move(conn));
	}

	for (std::size_t p = 0; p < connections.size(); ++p)
		for (std::size_t q = p + 1; q < connections.size(); ++q)
			report.pairs.push_back(
			    GaugeCopyPair{p, q, decide_gauge_equivalence(connections[p], connections[q], options)});
	return report;
}

} // namespace fh
