#pragma once

#include "fh/connection.hpp"
#include "fh/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace fh {

/// Serializable bundle consumed by the CLI: algebra size, Lie basis, module
/// size, gauge potential and observable words.
struct Scenario
{
	Index algebra_n = 1;
	std::vector<CMatrix> lie_basis;
	std::vector<bool> real_hints;
	std::vector<bool> real_hints_given; // absent hints are filled in, not warned about
	Index module_m = 1;
	std::vector<CMatrix> gauge_potential;
	std::vector<std::vector<DerivationVector>> words;
	std::map<std::string, std::string> metadata;
};

struct ScenarioContext
{
	std::shared_ptr<const LieBasis> basis;
	GaugeConnection connection;
	std::vector<std::string> warnings;
};

/// Validates the scenario (build_lie_basis, shape checks, hermiticity) and
/// materializes the connection. Mismatched real hints and non-hermitian
/// potentials are recorded as warnings, not errors.
ScenarioContext realize_scenario(const Scenario& scenario);

} // namespace fh
