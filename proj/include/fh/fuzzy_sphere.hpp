#pragma once

#include "fh/scenario.hpp"
#include "fh/transport.hpp"

#include <array>
#include <vector>

namespace fh {

/// Half-integer spin j = two_j / 2; the carrier space has dimension 2j + 1.
struct SpinLabel
{
	int two_j = 0;

	Index dimension() const { return Index(two_j) + 1; }
	double j() const { return 0.5 * two_j; }
};

/// Parses "0.5"-style decimals that are exact multiples of one half.
SpinLabel parse_spin(const std::string& text);

/// The three antihermitian traceless generators theta_a = -i J_a of the
/// spin-j irreducible representation, built from ladder operators;
/// [theta_a, theta_b] = epsilon_abc theta_c.
std::array<CMatrix, 3> spin_matrices(SpinLabel j);

/// su(2) Lie basis for the algebra of size 2j + 1.
LieBasis spin_basis(SpinLabel j);

/// Scenario over the spin-j algebra whose potential is the block-diagonal
/// direct sum of the spin-s generators across module_spins: a flat hermitian
/// connection on the module of size m = sum (2s + 1).
Scenario build_scenario(SpinLabel j, const std::vector<SpinLabel>& module_spins);

struct GaugeCopyEntry
{
	std::vector<SpinLabel> spins;
	double max_curvature = 0.0;
	bool hermitian = false;
	std::vector<Complex> observables; // one value per report word
};

struct GaugeCopyPair
{
	std::size_t first = 0;
	std::size_t second = 0;
	EquivalenceVerdict verdict;
};

/// Side-by-side comparison of flat connections built from different spin
/// multisets on a module of common size: all curvatures vanish while the
/// trace observables separate inequivalent sets.
struct GaugeCopyReport
{
	SpinLabel j;
	std::vector<std::vector<Index>> word_indices; // words as basis index tuples
	std::vector<GaugeCopyEntry> entries;
	std::vector<GaugeCopyPair> pairs;
};

GaugeCopyReport gauge_copy_report(SpinLabel j, const std::vector<std::vector<SpinLabel>>& spin_sets,
                                  const EquivalenceOptions& options = {});

} // namespace fh
