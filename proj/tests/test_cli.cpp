// Subprocess tests of the fh binary: exit codes, report formats, seeding.
// The binary path arrives through FH_CLI_BIN.

#include "fh/scenario_io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

std::string cli_path()
{
	const char* env = std::getenv("FH_CLI_BIN");
	REQUIRE(env != nullptr);
	return env;
}

fs::path work_dir()
{
	fs::path dir = fs::temp_directory_path() / "fh_cli_tests";
	fs::create_directories(dir);
	return dir;
}

struct RunResult
{
	int exit_code = -1;
	std::string output;
};

RunResult run(const std::string& args)
{
	fs::path capture = work_dir() / "capture.txt";
	std::string cmd = cli_path() + " " + args + " > " + capture.string() + " 2>&1";
	int status = std::system(cmd.c_str());
	RunResult result;
	if (status != -1 && WIFEXITED(status))
		result.exit_code = WEXITSTATUS(status);
	std::ifstream in(capture);
	std::ostringstream buffer;
	buffer << in.rdbuf();
	result.output = buffer.str();
	return result;
}

std::string spin_half_scenario()
{
	fs::path path = work_dir() / "spin_half.json";
	RunResult gen = run("fuzzy-sphere --j 0.5 --spins 0.5 --out " + path.string());
	REQUIRE(gen.exit_code == 0);
	return path.string();
}

} // namespace

TEST_CASE("check passes on a generated scenario and prints tolerances")
{
	RunResult result = run("check " + spin_half_scenario());
	CHECK(result.exit_code == 0);
	CHECK(result.output.find("maurer-cartan defect") != std::string::npos);
	CHECK(result.output.find("tolerance") != std::string::npos);
	CHECK(result.output.find("all checks passed") != std::string::npos);
}

TEST_CASE("check fails with exit 1 and a field path on a broken scenario")
{
	std::string path = spin_half_scenario();
	fh::Scenario scenario = fh::load_scenario(path);
	scenario.lie_basis[0](0, 0) += fh::Complex(0.5, 0.0); // breaks tracelessness
	fs::path broken = work_dir() / "broken.json";
	fh::save_scenario(scenario, broken.string());

	RunResult result = run("check " + broken.string());
	CHECK(result.exit_code == 1);
	CHECK(result.output.find("lie_basis[0]") != std::string::npos);
}

TEST_CASE("curvature reports flatness of the free-module connection")
{
	RunResult result = run("curvature " + spin_half_scenario());
	CHECK(result.exit_code == 0);
	CHECK(result.output.find("||F(e1,e2)||") != std::string::npos);
	CHECK(result.output.find("flat") != std::string::npos);
	CHECK(result.output.find("true") != std::string::npos);
}

TEST_CASE("transport emits the endomorphism and verifies the ODE")
{
	RunResult result = run("transport " + spin_half_scenario() + " --x e3 --tau 1 --verify-ode --seed 3");
	CHECK(result.exit_code == 0);
	CHECK(result.output.find("endomorphism") != std::string::npos);
	CHECK(result.output.find("transport solves the ODE") != std::string::npos);

	RunResult guard = run("transport " + spin_half_scenario() + " --x e3 --tau 1e9");
	CHECK(guard.exit_code == 1);
	CHECK(guard.output.find("guard") != std::string::npos);
}

TEST_CASE("observables prints one row per word and honors --words")
{
	RunResult result = run("observables " + spin_half_scenario());
	CHECK(result.exit_code == 0);
	CHECK(result.output.find("W_(e3)") != std::string::npos);
	CHECK(result.output.find("1.75516512378") != std::string::npos);

	RunResult custom = run("observables " + spin_half_scenario() + " --words '0.5*e1+1*e2;e3,e3'");
	CHECK(custom.exit_code == 0);
	CHECK(custom.output.find("W_(e3,e3)") != std::string::npos);
	CHECK(custom.output.find("1.08060461174") != std::string::npos);

	// empty words list in the file requires --words
	std::string path = spin_half_scenario();
	fh::Scenario scenario = fh::load_scenario(path);
	scenario.words.clear();
	fs::path wordless = work_dir() / "wordless.json";
	fh::save_scenario(scenario, wordless.string());
	RunResult missing = run("observables " + wordless.string());
	CHECK(missing.exit_code == 1);
	CHECK(missing.output.find("--words") != std::string::npos);
}

TEST_CASE("gauge-equiv exit codes distinguish the verdicts")
{
	fs::path trivial = work_dir() / "trivial.json";
	REQUIRE(run("fuzzy-sphere --j 0.5 --spins 0,0 --out " + trivial.string()).exit_code == 0);

	std::string half = spin_half_scenario();
	RunResult same = run("gauge-equiv " + half + " " + half);
	CHECK(same.exit_code == 0);
	CHECK(same.output.find("equivalent") != std::string::npos);

	RunResult different = run("gauge-equiv " + half + " " + trivial.string());
	CHECK(different.exit_code == 2);
	CHECK(different.output.find("separating word") != std::string::npos);

	RunResult missing = run("gauge-equiv " + half + " /nonexistent.json");
	CHECK(missing.exit_code == 1);
}

TEST_CASE("unknown flags exit with code 1")
{
	CHECK(run("curvature --frobnicate").exit_code == 1);
	CHECK(run("").exit_code == 1); // a subcommand is required
}

TEST_CASE("FH_SEED provides the default seed")
{
	std::string half = spin_half_scenario();
	fs::path r1 = work_dir() / "seeded1.json";
	fs::path r2 = work_dir() / "seeded2.json";
	RunResult a = run("gauge-equiv " + half + " " + half + " --json --out " + r1.string() +
	                  " && env FH_SEED=9 " + cli_path() + " gauge-equiv " + half + " " + half +
	                  " --json --out " + r2.string());
	CHECK(a.exit_code == 0);

	std::ifstream f1(r1), f2(r2);
	std::ostringstream s1, s2;
	s1 << f1.rdbuf();
	s2 << f2.rdbuf();
	CHECK(s1.str().find("\"seed\": 1") != std::string::npos); // built-in default
	CHECK(s2.str().find("\"seed\": 9") != std::string::npos); // from FH_SEED
}
