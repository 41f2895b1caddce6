#pragma once

#include "fh/connection.hpp"
#include "fh/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace fh {

/// An ordered list of derivations labeling a trace observable.
struct Word
{
	std::vector<DerivationVector> letters;
	bool restricted_to_real = false; // every letter in the real span of real-flagged elements

	std::size_t length() const { return letters.size(); }
};

/// Builds a word and records whether it stays inside the real form.
Word make_word(const LieBasis& basis, std::vector<DerivationVector> letters);

/// Word whose letters are single basis elements, given by their indices.
Word basis_word(const LieBasis& basis, const std::vector<Index>& indices);

/// phi_tau(a) = exp(tau theta(X)) a exp(-tau theta(X)).
CMatrix automorphism_flow(const LieBasis& basis, const DerivationVector& x, double tau, const CMatrix& a);

/// Phi_tau(s) = exp(tau B(X)) s exp(-tau theta(X)).
CMatrix module_transport(const GaugeConnection& conn, const DerivationVector& x, double tau, const CMatrix& s);

/// The endomorphism exp(tau B(X)), the transport composed with right
/// multiplication by exp(tau theta(X)).
CMatrix transport_endomorphism(const GaugeConnection& conn, const DerivationVector& x, double tau);

/// Central-difference residual of d/dtau Phi_tau = nabla_X o Phi_tau.
double ode_defect(const GaugeConnection& conn, const DerivationVector& x, double tau, double h, const CMatrix& s);

/// W_word = Tr prod_k exp(tau B(X_k)).
Complex observable(const GaugeConnection& conn, const Word& word, double tau = 1.0);

/// Tr(B_{i_1} ... B_{i_k}) for every tuple over real-flagged indices with
/// 1 <= k <= max_degree, keyed by the lexicographically minimal cyclic rotation.
std::map<std::vector<Index>, Complex> trace_monomials(const GaugeConnection& conn, Index max_degree);

struct EquivalenceOptions
{
	Index max_degree = 0; // 0: default m^2
	Index trials = 16;
	double tol = 1e-8;
	std::uint64_t seed = 1;
	// Phase 1 stops adding degrees once the raw tuple count would pass this
	// budget; keeps the scan tractable when m^2 is large.
	std::uint64_t word_budget = 60000;
};

struct EquivalenceVerdict
{
	bool equivalent = false;
	std::optional<CMatrix> witness;
	bool trace_agreement_only = false; // equivalent via traces, no witness found
	double max_trace_gap = 0.0;
	std::optional<std::vector<Index>> separating_word;
	Index trials_used = 0;
	double witness_residual = 0.0;
	Index trace_degree_scanned = 0;
};

/// Decides gauge equivalence of two hermitian connections: trace-word
/// comparison first, then a randomized eigenbasis-alignment witness search.
EquivalenceVerdict decide_gauge_equivalence(const GaugeConnection& a, const GaugeConnection& b,
                                            const EquivalenceOptions& options = {});

} // namespace fh
