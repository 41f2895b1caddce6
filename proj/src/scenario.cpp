#include "fh/scenario.hpp"

#include "fh/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace fh {

ScenarioContext realize_scenario(const Scenario& scenario)
{
	if (scenario.algebra_n < 1)
		throw std::invalid_argument("scenario: algebra_n must be >= 1");
	if (scenario.module_m < 1)
		throw std::invalid_argument("scenario: module_m must be >= 1");
	if (scenario.gauge_potential.size() != scenario.lie_basis.size())
		throw std::invalid_argument("scenario: gauge_potential length must equal lie_basis length");

	for (std::size_t i = 0; i < scenario.lie_basis.size(); ++i)
	{
		const CMatrix& mat = scenario.lie_basis[i];
		std::ostringstream where;
		where << "lie_basis[" << i << "]";
		if (mat.rows() != scenario.algebra_n || mat.cols() != scenario.algebra_n)
			throw std::invalid_argument("scenario: " + where.str() + ": matrix is not algebra_n x algebra_n");
		if (!is_finite(mat))
			throw std::invalid_argument("scenario: " + where.str() + ": non-finite entries");
		if (std::abs(mat.trace()) > 1e-8 * tol_scale(mat))
		{
			std::ostringstream msg;
			msg << "scenario: " << where.str() << ": not traceless (|tr| = " << std::abs(mat.trace()) << ")";
			throw std::invalid_argument(msg.str());
		}
	}

	ScenarioContext ctx;
	std::shared_ptr<const LieBasis> basis;
	try
	{
		basis = std::make_shared<const LieBasis>(
		    build_lie_basis(AlgebraContext{scenario.algebra_n}, scenario.lie_basis));
	}
	catch (const std::invalid_argument& e)
	{
		throw std::invalid_argument("scenario: lie_basis: " + std::string(e.what()));
	}

	if (scenario.real_hints.size() == basis->real_flags.size())
	{
		for (std::size_t i = 0; i < basis->real_flags.size(); ++i)
			if ((scenario.real_hints_given.size() <= i || scenario.real_hints_given[i]) &&
			    scenario.real_hints[i] != basis->real_flags[i])
			{
				std::ostringstream msg;
				msg << "lie_basis[" << i << "]: real hint " << (scenario.real_hints[i] ? "true" : "false")
				    << " disagrees with the computed flag";
				ctx.warnings.push_back(msg.str());
			}
	}

	for (std::size_t k = 0; k < scenario.words.size(); ++k)
		for (std::size_t l = 0; l < scenario.words[k].size(); ++l)
			if (scenario.words[k][l].size() != basis->dim())
			{
				std::ostringstream msg;
				msg << "words[" << k << "][" << l << "]: coefficient length does not match basis dimension";
				throw std::invalid_argument(msg.str());
			}

	GaugeConnection conn = make_connection(basis, scenario.module_m, scenario.gauge_potential);
	if (!hermiticity_check(conn))
		ctx.warnings.push_back("gauge_potential: connection is not hermitian "
		                       "(some real-flagged component is not antihermitian)");

	ctx.basis = std::move(basis);
	ctx.connection = std::move(conn);
	return ctx;
}

} // namespace fh
