// fh - derivation-based gauge theory on finite matrix algebras.
//
// Subcommands: check, curvature, transport, observables, gauge-equiv,
// fuzzy-sphere, demo gauge-copy. Exit codes: 0 success, 1 validation or
// usage failure, 2 gauge-inequivalent verdict.

#include "fh/calculus.hpp"
#include "fh/connection.hpp"
#include "fh/fuzzy_sphere.hpp"
#include "fh/linalg.hpp"
#include "fh/report.hpp"
#include "fh/rng.hpp"
#include "fh/scenario_io.hpp"
#include "fh/transport.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace fh;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInequivalent = 2;

struct OutputOptions
{
	bool json = false;
	std::string out_path;
};

void add_output_flags(CLI::App* cmd, OutputOptions& out)
{
	cmd->add_flag("--json", out.json, "emit the report as JSON instead of a table");
	cmd->add_option("--out", out.out_path, "write the report to a file instead of stdout");
}

int emit(const Report& report, const OutputOptions& out, int exit_code)
{
	if (!out.out_path.empty())
		save_report(report, out.out_path, out.json ? ReportFormat::JsonText : ReportFormat::Human);
	else
		std::cout << (out.json ? report_to_json_text(report) : report_to_human(report));
	return exit_code;
}

std::string trim(const std::string& s)
{
	std::size_t b = s.find_first_not_of(" \t");
	std::size_t e = s.find_last_not_of(" \t");
	return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
	std::vector<std::string> parts;
	std::istringstream in(s);
	std::string item;
	while (std::getline(in, item, sep))
		parts.push_back(trim(item));
	if (!s.empty() && s.back() == sep)
		parts.push_back("");
	return parts;
}

// "e3" or "0.5*e1+1*e2": plus-separated terms with optional real coefficients.
DerivationVector parse_letter(const std::string& text, Index d)
{
	if (trim(text).empty())
		throw std::invalid_argument("empty derivation expression; write e.g. 'e1' or '0*e1' for zero");
	DerivationVector x = DerivationVector::Zero(d);
	for (const std::string& raw : split(text, '+'))
	{
		std::string term = trim(raw);
		if (term.empty())
			throw std::invalid_argument("empty term in derivation '" + text + "'");
		double coeff = 1.0;
		std::string name = term;
		std::size_t star = term.find('*');
		if (star != std::string::npos)
		{
			std::size_t used = 0;
			coeff = std::stod(term.substr(0, star), &used);
			if (used != star)
				throw std::invalid_argument("bad coefficient in '" + term + "'");
			name = trim(term.substr(star + 1));
		}
		if (name.size() < 2 || name[0] != 'e')
			throw std::invalid_argument("expected a basis element like 'e1' in '" + term + "'");
		long index = std::stol(name.substr(1));
		if (index < 1 || index > long(d))
			throw std::invalid_argument("basis index out of range in '" + term + "'");
		x(Index(index - 1)) += Complex(coeff, 0.0);
	}
	return x;
}

// Comma-separated letters form a word; semicolons separate words.
std::vector<std::vector<DerivationVector>> parse_words(const std::string& text, Index d)
{
	std::vector<std::vector<DerivationVector>> words;
	for (const std::string& word_text : split(text, ';'))
	{
		if (word_text.empty())
			continue;
		std::vector<DerivationVector> letters;
		for (const std::string& letter_text : split(word_text, ','))
			letters.push_back(parse_letter(letter_text, d));
		if (letters.empty())
			throw std::invalid_argument("empty word in '" + text + "'");
		words.push_back(std::move(letters));
	}
	return words;
}

std::string letter_label(const DerivationVector& x)
{
	std::ostringstream out;
	bool first = true;
	for (Index i = 0; i < x.size(); ++i)
	{
		Complex c = x(i);
		if (std::abs(c) == 0.0)
			continue;
		if (!first)
			out << "+";
		if (c != Complex(1.0, 0.0))
		{
			out << std::setprecision(6) << c.real();
			if (c.imag() != 0.0)
				out << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
			out << "*";
		}
		out << "e" << (i + 1);
		first = false;
	}
	if (first)
		out << "0";
	return out.str();
}

std::string word_label(const std::vector<DerivationVector>& letters)
{
	std::ostringstream out;
	out << "(";
	for (std::size_t i = 0; i < letters.size(); ++i)
		out << (i ? "," : "") << letter_label(letters[i]);
	out << ")";
	return out.str();
}

std::string spin_set_label(const std::vector<SpinLabel>& spins)
{
	std::ostringstream out;
	for (std::size_t i = 0; i < spins.size(); ++i)
		out << (i ? "," : "") << 0.5 * spins[i].two_j;
	return out.str();
}

std::vector<SpinLabel> parse_spin_list(const std::string& text)
{
	std::vector<SpinLabel> spins;
	for (const std::string& item : split(text, ','))
		spins.push_back(parse_spin(item));
	if (spins.empty())
		throw std::invalid_argument("empty spin list '" + text + "'");
	return spins;
}

std::string word_indices_label(const std::vector<Index>& indices)
{
	std::ostringstream out;
	out << "(";
	for (std::size_t i = 0; i < indices.size(); ++i)
		out << (i ? "," : "") << "e" << (indices[i] + 1);
	out << ")";
	return out.str();
}

void describe_scenario(Report& report, const std::string& path, const Scenario& s)
{
	report.add_input("scenario", path);
	std::ostringstream shape;
	shape << "n=" << s.algebra_n << " d=" << s.lie_basis.size() << " m=" << s.module_m
	      << " words=" << s.words.size();
	report.add_input("shape", shape.str());
}

void add_warnings(Report& report, const std::vector<std::string>& warnings)
{
	for (std::size_t i = 0; i < warnings.size(); ++i)
		report.add_text("warning " + std::to_string(i + 1), warnings[i]);
}

int run_check(const std::string& path, const OutputOptions& out)
{
	Scenario scenario = load_scenario(path);
	ScenarioContext ctx = realize_scenario(scenario);
	const LieBasis& basis = *ctx.basis;

	Report report;
	report.command = "check";
	describe_scenario(report, path, scenario);

	double traceless = 0.0;
	double antiherm_defect = 0.0;
	for (const CMatrix& t : basis.theta)
		traceless = std::max(traceless, std::abs(t.trace()));
	for (std::size_t i = 0; i < basis.theta.size(); ++i)
		if (basis.real_flags[i])
			antiherm_defect =
			    std::max(antiherm_defect, (basis.theta[i] + basis.theta[i].adjoint()).norm());

	bool ok = true;
	auto check_row = [&](const std::string& label, double value, double tol, const std::string& tol_text) {
		report.add_number(label, value, tol_text);
		ok = ok && value <= tol;
	};

	check_row("max |tr theta_i|", traceless, 1e-8, "1e-8");
	check_row("closure defect", closure_defect(basis), 1e-9, "1e-9");
	check_row("jacobi defect", jacobi_defect(basis), 1e-8, "1e-8");
	check_row("involution defect", involution_defect(basis), 1e-9, "1e-9");
	check_row("maurer-cartan defect", maurer_cartan_defect(basis), 1e-10, "1e-10");
	check_row("real-flag antihermiticity defect", antiherm_defect, 1e-9, "1e-9");

	bool hermitian = hermiticity_check(ctx.connection);
	report.add_flag("hermitian connection", hermitian, "1e-10");
	report.add_number("max curvature norm", max_curvature_norm(ctx.connection));
	add_warnings(report, ctx.warnings);
	report.add_flag("all checks passed", ok);
	return emit(report, out, ok ? kExitOk : kExitFailure);
}

int run_curvature(const std::string& path, const OutputOptions& out)
{
	Scenario scenario = load_scenario(path);
	ScenarioContext ctx = realize_scenario(scenario);
	const GaugeConnection& conn = ctx.connection;

	Report report;
	report.command = "curvature";
	describe_scenario(report, path, scenario);

	double worst = 0.0;
	for (Index i = 0; i < conn.dim(); ++i)
		for (Index j = i + 1; j < conn.dim(); ++j)
		{
			double norm = curvature(conn, i, j).norm();
			worst = std::max(worst, norm);
			std::ostringstream label;
			label << "||F(e" << (i + 1) << ",e" << (j + 1) << ")||";
			report.add_number(label.str(), norm);
		}
	report.add_number("max curvature norm", worst, "1e-10");
	report.add_flag("flat", worst <= 1e-10, "1e-10");
	add_warnings(report, ctx.warnings);
	return emit(report, out, kExitOk);
}

int run_transport(const std::string& path, const std::string& x_text, double tau, bool verify_ode,
                  std::uint64_t seed, const OutputOptions& out)
{
	Scenario scenario = load_scenario(path);
	ScenarioContext ctx = realize_scenario(scenario);
	const GaugeConnection& conn = ctx.connection;

	DerivationVector x = parse_letter(x_text, ctx.basis->dim());

	Report report;
	report.command = "transport";
	describe_scenario(report, path, scenario);
	report.add_input("X", letter_label(x));
	std::ostringstream tau_text;
	tau_text << tau;
	report.add_input("tau", tau_text.str());
	report.seed = seed;

	report.add_matrix("endomorphism exp(tau B(X))", transport_endomorphism(conn, x, tau));
	report.add_matrix("right factor exp(-tau theta(X))", mat_exp(ctx.basis->theta_of(x), -tau));

	if (verify_ode)
	{
		SplitMix64 rng(seed);
		double worst = 0.0;
		for (int trial = 0; trial < 3; ++trial)
		{
			CMatrix s = rng.complex_gaussian_matrix(conn.module.m, conn.module.n);
			worst = std::max(worst, ode_defect(conn, x, tau, 1e-5, s) / s.norm());
		}
		report.add_number("max ODE defect / ||s||", worst, "1e-8");
		report.add_flag("transport solves the ODE", worst <= 1e-8, "1e-8");
	}
	add_warnings(report, ctx.warnings);
	return emit(report, out, kExitOk);
}

int run_observables(const std::string& path, const std::string& words_text, double tau,
                    const OutputOptions& out)
{
	Scenario scenario = load_scenario(path);
	ScenarioContext ctx = realize_scenario(scenario);

	std::vector<std::vector<DerivationVector>> words = scenario.words;
	if (!words_text.empty())
		words = parse_words(words_text, ctx.basis->dim());
	if (words.empty())
		throw std::invalid_argument("scenario has no words; pass --words");

	Report report;
	report.command = "observables";
	describe_scenario(report, path, scenario);
	std::ostringstream tau_text;
	tau_text << tau;
	report.add_input("tau", tau_text.str());

	for (const std::vector<DerivationVector>& letters : words)
	{
		Word word = make_word(*ctx.basis, letters);
		Complex value = observable(ctx.connection, word, tau);
		std::string label = "W_" + word_label(letters);
		if (!word.restricted_to_real)
			label += " [outside g_R]";
		report.add_complex(label, value);
	}
	add_warnings(report, ctx.warnings);
	return emit(report, out, kExitOk);
}

void add_verdict_rows(Report& report, const EquivalenceVerdict& verdict)
{
	report.add_flag("equivalent", verdict.equivalent);
	report.add_number("max trace gap", verdict.max_trace_gap);
	report.add_number("trace degree scanned", double(verdict.trace_degree_scanned));
	if (verdict.separating_word)
		report.add_text("separating word", word_indices_label(*verdict.separating_word));
	if (verdict.witness)
	{
		report.add_number("witness residual", verdict.witness_residual);
		report.add_matrix("witness", *verdict.witness);
	}
	if (verdict.trace_agreement_only)
		report.add_text("note", "trace agreement only: no unitary witness found within the trial budget");
	report.add_number("trials used", double(verdict.trials_used));
}

int run_gauge_equiv(const std::string& path_a, const std::string& path_b, Index degree, Index trials,
                    double tol, std::uint64_t seed, const OutputOptions& out)
{
	Scenario sa = load_scenario(path_a);
	Scenario sb = load_scenario(path_b);
	ScenarioContext ca = realize_scenario(sa);
	ScenarioContext cb = realize_scenario(sb);

	EquivalenceOptions options;
	options.max_degree = degree;
	options.trials = trials;
	options.tol = tol;
	options.seed = seed;
	EquivalenceVerdict verdict = decide_gauge_equivalence(ca.connection, cb.connection, options);

	Report report;
	report.command = "gauge-equiv";
	report.add_input("A", path_a);
	report.add_input("B", path_b);
	report.seed = seed;
	std::ostringstream tol_text;
	tol_text << tol;
	report.add_input("tol", tol_text.str());
	add_verdict_rows(report, verdict);
	add_warnings(report, ca.warnings);
	add_warnings(report, cb.warnings);
	return emit(report, out, verdict.equivalent ? kExitOk : kExitInequivalent);
}

int run_fuzzy_sphere(const std::string& j_text, const std::string& spins_text, const std::string& out_path,
                     const OutputOptions& out)
{
	SpinLabel j = parse_spin(j_text);
	std::vector<SpinLabel> spins = parse_spin_list(spins_text);
	Scenario scenario = build_scenario(j, spins);
	save_scenario(scenario, out_path);

	Report report;
	report.command = "fuzzy-sphere";
	report.add_input("j", j_text);
	report.add_input("spins", spin_set_label(spins));
	report.add_text("written", out_path);
	report.add_number("algebra n", double(scenario.algebra_n));
	report.add_number("module m", double(scenario.module_m));
	return emit(report, out, kExitOk);
}

int run_demo_gauge_copy(const std::string& j_text, const std::string& sets_text, Index degree, Index trials,
                        double tol, std::uint64_t seed, const OutputOptions& out)
{
	SpinLabel j = parse_spin(j_text);
	std::vector<std::vector<SpinLabel>> sets;
	for (const std::string& set_text : split(sets_text, ';'))
		if (!set_text.empty())
			sets.push_back(parse_spin_list(set_text));
	if (sets.size() < 2)
		throw std::invalid_argument("demo gauge-copy needs at least two spin sets, e.g. --sets '0,0;0.5'");

	EquivalenceOptions options;
	options.max_degree = degree;
	options.trials = trials;
	options.tol = tol;
	options.seed = seed;
	GaugeCopyReport demo = gauge_copy_report(j, sets, options);

	Report report;
	report.command = "demo gauge-copy";
	report.add_input("j", j_text);
	report.add_input("sets", sets_text);
	report.seed = seed;

	for (const GaugeCopyEntry& entry : demo.entries)
	{
		std::string tag = " [" + spin_set_label(entry.spins) + "]";
		report.add_number("max ||F||" + tag, entry.max_curvature, "1e-10");
		report.add_flag("hermitian" + tag, entry.hermitian, "1e-10");
		for (std::size_t w = 0; w < demo.word_indices.size(); ++w)
			report.add_complex("W_" + word_indices_label(demo.word_indices[w]) + tag, entry.observables[w]);
	}

	bool all_equivalent = true;
	for (const GaugeCopyPair& pair : demo.pairs)
	{
		std::string tag = " [" + spin_set_label(demo.entries[pair.first].spins) + " vs " +
		                  spin_set_label(demo.entries[pair.second].spins) + "]";
		report.add_flag("equivalent" + tag, pair.verdict.equivalent);
		report.add_number("max trace gap" + tag, pair.verdict.max_trace_gap);
		if (pair.verdict.separating_word)
			report.add_text("separating word" + tag, word_indices_label(*pair.verdict.separating_word));
		if (pair.verdict.witness)
			report.add_number("witness residual" + tag, pair.verdict.witness_residual);
		all_equivalent = all_equivalent && pair.verdict.equivalent;
	}
	return emit(report, out, all_equivalent ? kExitOk : kExitInequivalent);
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"derivation-based gauge theory on finite matrix algebras"};
	app.require_subcommand(1);

	std::string scenario_path, scenario_path_b;
	std::string x_text, words_text = "";
	std::string j_text, spins_text, sets_text, sphere_out;
	double tau = 1.0;
	bool verify_ode = false;
	Index degree = 0;
	Index trials = 16;
	double tol = 1e-8;
	std::uint64_t seed = 1;
	OutputOptions out;

	CLI::App* check = app.add_subcommand("check", "validate a scenario and print its invariant defects");
	check->add_option("scenario", scenario_path, "scenario JSON file")->required();
	add_output_flags(check, out);

	CLI::App* curv = app.add_subcommand("curvature", "curvature norms and flatness verdict");
	curv->add_option("scenario", scenario_path, "scenario JSON file")->required();
	add_output_flags(curv, out);

	CLI::App* transport = app.add_subcommand("transport", "module parallel transport data along X");
	transport->add_option("scenario", scenario_path, "scenario JSON file")->required();
	transport->add_option("--x", x_text, "derivation, e.g. 'e3' or '0.5*e1+1*e2'")->required();
	transport->add_option("--tau", tau, "flow parameter (default 1)");
	transport->add_flag("--verify-ode", verify_ode, "check the transport ODE on random sections");
	transport->add_option("--seed", seed, "RNG seed")->envname("FH_SEED");
	add_output_flags(transport, out);

	CLI::App* obs = app.add_subcommand("observables", "trace observables for the scenario words");
	obs->add_option("scenario", scenario_path, "scenario JSON file")->required();
	obs->add_option("--tau", tau, "flow parameter (default 1)");
	obs->add_option("--words", words_text, "override words, e.g. 'e3;e3,e3;e1,e2,e3'");
	add_output_flags(obs, out);

	CLI::App* equiv = app.add_subcommand("gauge-equiv", "decide gauge equivalence of two scenarios");
	equiv->add_option("A", scenario_path, "first scenario")->required();
	equiv->add_option("B", scenario_path_b, "second scenario")->required();
	equiv->add_option("--degree", degree, "trace word degree bound (default m^2)");
	equiv->add_option("--trials", trials, "witness search trials (default 16)");
	equiv->add_option("--tol", tol, "decision tolerance (default 1e-8)");
	equiv->add_option("--seed", seed, "RNG seed")->envname("FH_SEED");
	add_output_flags(equiv, out);

	CLI::App* sphere = app.add_subcommand("fuzzy-sphere", "generate a fuzzy-sphere scenario file");
	sphere->add_option("--j", j_text, "maximal spin, a half-integer like 0.5")->required();
	sphere->add_option("--spins", spins_text, "module spin list, e.g. '0,0.5'")->required();
	sphere->add_option("--out", sphere_out, "output scenario path")->required();
	sphere->add_flag("--json", out.json, "emit the report as JSON instead of a table");

	CLI::App* demo = app.add_subcommand("demo", "built-in demonstrations");
	demo->require_subcommand(1);
	CLI::App* copy = demo->add_subcommand("gauge-copy",
	                                      "flat connections with equal curvature separated by observables");
	copy->add_option("--j", j_text, "maximal spin of the algebra")->required();
	copy->add_option("--sets", sets_text, "semicolon-separated spin sets, e.g. '0,0;0.5'")->required();
	copy->add_option("--degree", degree, "trace word degree bound (default m^2)");
	copy->add_option("--trials", trials, "witness search trials (default 16)");
	copy->add_option("--tol", tol, "decision tolerance (default 1e-8)");
	copy->add_option("--seed", seed, "RNG seed")->envname("FH_SEED");
	add_output_flags(copy, out);

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::CallForHelp& e)
	{
		return app.exit(e);
	}
	catch (const CLI::ParseError& e)
	{
		app.exit(e);
		return kExitFailure;
	}

	try
	{
		if (check->parsed())
			return run_check(scenario_path, out);
		if (curv->parsed())
			return run_curvature(scenario_path, out);
		if (transport->parsed())
			return run_transport(scenario_path, x_text, tau, verify_ode, seed, out);
		if (obs->parsed())
			return run_observables(scenario_path, words_text, tau, out);
		if (equiv->parsed())
			return run_gauge_equiv(scenario_path, scenario_path_b, degree, trials, tol, seed, out);
		if (sphere->parsed())
			return run_fuzzy_sphere(j_text, spins_text, sphere_out, out);
		if (demo->parsed())
			return run_demo_gauge_copy(j_text, sets_text, degree, trials, tol, seed, out);
	}
	catch (const std::exception& e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return kExitFailure;
	}
	return kExitFailure;
}
