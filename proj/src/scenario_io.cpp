#include "fh/scenario_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fh {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
	throw std::runtime_error("scenario: " + path + ": " + what);
}

Complex read_complex(const Json& node, const std::string& path)
{
	if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number())
		fail(path, "expected a [re, im] pair");
	Complex z(node[0].get<double>(), node[1].get<double>());
	if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
		fail(path, "non-finite entry");
	return z;
}

Json write_complex(const Complex& z)
{
	return Json::array({z.real(), z.imag()});
}

CMatrix read_matrix(const Json& node, const std::string& path)
{
	if (!node.is_array() || node.empty())
		fail(path, "expected a nonempty array of rows");
	Index rows = Index(node.size());
	Index cols = Index(node[0].size());
	if (cols == 0)
		fail(path, "rows must be nonempty");
	CMatrix a(rows, cols);
	for (Index r = 0; r < rows; ++r)
	{
		const Json& row = node[std::size_t(r)];
		if (!row.is_array() || Index(row.size()) != cols)
			fail(path + "[" + std::to_string(r) + "]", "ragged row");
		for (Index c = 0; c < cols; ++c)
			a(r, c) = read_complex(row[std::size_t(c)],
			                       path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
	}
	return a;
}

Json write_matrix(const CMatrix& a)
{
	Json rows = Json::array();
	for (Index r = 0; r < a.rows(); ++r)
	{
		Json row = Json::array();
		for (Index c = 0; c < a.cols(); ++c)
			row.push_back(write_complex(a(r, c)));
		rows.push_back(std::move(row));
	}
	return rows;
}

} // namespace

Scenario scenario_from_json_text(const std::string& text)
{
	Json doc;
	try
	{
		doc = Json::parse(text);
	}
	catch (const Json::parse_error& e)
	{
		throw std::runtime_error(std::string("scenario: malformed JSON: ") + e.what());
	}
	if (!doc.is_object())
		throw std::runtime_error("scenario: top level must be an object");

	Scenario s;
	if (!doc.contains("algebra_n") || !doc["algebra_n"].is_number_integer())
		fail("algebra_n", "missing or not an integer");
	s.algebra_n = doc["algebra_n"].get<Index>();

	if (!doc.contains("lie_basis") || !doc["lie_basis"].is_array())
		fail("lie_basis", "missing or not an array");
	for (std::size_t i = 0; i < doc["lie_basis"].size(); ++i)
	{
		const Json& entry = doc["lie_basis"][i];
		std::string path = "lie_basis[" + std::to_string(i) + "]";
		if (!entry.is_object() || !entry.contains("matrix"))
			fail(path, "expected an object with a 'matrix' key");
		CMatrix mat = read_matrix(entry["matrix"], path + ".matrix");
		if (mat.rows() != s.algebra_n || mat.cols() != s.algebra_n)
			fail(path + ".matrix", "must be algebra_n x algebra_n");
		s.lie_basis.push_back(std::move(mat));
		s.real_hints.push_back(entry.value("real", false));
		s.real_hints_given.push_back(entry.contains("real"));
	}

	if (!doc.contains("module_m") || !doc["module_m"].is_number_integer())
		fail("module_m", "missing or not an integer");
	s.module_m = doc["module_m"].get<Index>();

	if (!doc.contains("gauge_potential") || !doc["gauge_potential"].is_array())
		fail("gauge_potential", "missing or not an array");
	for (std::size_t i = 0; i < doc["gauge_potential"].size(); ++i)
	{
		std::string path = "gauge_potential[" + std::to_string(i) + "]";
		CMatrix mat = read_matrix(doc["gauge_potential"][i], path);
		if (mat.rows() != s.module_m || mat.cols() != s.module_m)
			fail(path, "must be module_m x module_m");
		s.gauge_potential.push_back(std::move(mat));
	}

	if (doc.contains("words"))
	{
		if (!doc["words"].is_array())
			fail("words", "not an array");
		for (std::size_t w = 0; w < doc["words"].size(); ++w)
		{
			const Json& word = doc["words"][w];
			std::string wpath = "words[" + std::to_string(w) + "]";
			if (!word.is_array() || word.empty())
				fail(wpath, "a word must be a nonempty array of letters");
			std::vector<DerivationVector> letters;
			for (std::size_t l = 0; l < word.size(); ++l)
			{
				const Json& letter = word[l];
				std::string lpath = wpath + "[" + std::to_string(l) + "]";
				if (!letter.is_array() || letter.size() != s.lie_basis.size())
					fail(lpath, "a letter must list one coefficient per basis element");
				DerivationVector x(Index(letter.size()));
				for (std::size_t c = 0; c < letter.size(); ++c)
					x(Index(c)) = read_complex(letter[c], lpath + "[" + std::to_string(c) + "]");
				letters.push_back(std::move(x));
			}
			s.words.push_back(std::move(letters));
		}
	}

	if (doc.contains("metadata"))
	{
		if (!doc["metadata"].is_object())
			fail("metadata", "not an object");
		for (const auto& [key, value] : doc["metadata"].items())
		{
			if (!value.is_string())
				fail("metadata." + key, "values must be strings");
			s.metadata[key] = value.get<std::string>();
		}
	}
	return s;
}

Scenario load_scenario(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw std::runtime_error("scenario: cannot open '" + path + "'");
	std::ostringstream buffer;
	buffer << in.rdbuf();
	return scenario_from_json_text(buffer.str());
}

std::string scenario_to_json_text(const Scenario& scenario)
{
	Json doc = Json::object();
	doc["algebra_n"] = scenario.algebra_n;

	Json basis = Json::array();
	for (std::size_t i = 0; i < scenario.lie_basis.size(); ++i)
	{
		Json entry = Json::object();
		entry["matrix"] = write_matrix(scenario.lie_basis[i]);
		entry["real"] = i < scenario.real_hints.size() ? bool(scenario.real_hints[i]) : false;
		basis.push_back(std::move(entry));
	}
	doc["lie_basis"] = std::move(basis);
	doc["module_m"] = scenario.module_m;

	Json potential = Json::array();
	for (const CMatrix& b : scenario.gauge_potential)
		potential.push_back(write_matrix(b));
	doc["gauge_potential"] = std::move(potential);

	Json words = Json::array();
	for (const std::vector<DerivationVector>& word : scenario.words)
	{
		Json jword = Json::array();
		for (const DerivationVector& letter : word)
		{
			Json jletter = Json::array();
			for (Index c = 0; c < letter.size(); ++c)
				jletter.push_back(write_complex(letter(c)));
			jword.push_back(std::move(jletter));
		}
		words.push_back(std::move(jword));
	}
	doc["words"] = std::move(words);

	Json metadata = Json::object();
	for (const auto& [key, value] : scenario.metadata)
		metadata[key] = value;
	doc["metadata"] = std::move(metadata);

	return doc.dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::string& path)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw std::runtime_error("scenario: cannot write '" + path + "'");
	out << scenario_to_json_text(scenario);
	if (!out)
		throw std::runtime_error("scenario: write failed for '" + path + "'");
}

} // namespace fh
