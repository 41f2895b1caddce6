#pragma once

#include "fh/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fh {

/// One labeled result row; numeric rows carry the tolerance they were
/// checked against so tables stay auditable.
struct ReportEntry
{
	enum class Kind
	{
		Number,
		ComplexValue,
		Flag,
		Text,
		Matrix
	};

	std::string label;
	Kind kind = Kind::Text;
	double number = 0.0;
	Complex complex_value{0.0, 0.0};
	bool flag = false;
	std::string text;
	CMatrix matrix;
	std::string tolerance; // empty when not applicable
};

struct Report
{
	std::string command;
	std::vector<std::pair<std::string, std::string>> inputs;
	std::vector<ReportEntry> entries;
	std::optional<std::uint64_t> seed;

	void add_input(std::string key, std::string value);
	void add_number(std::string label, double value, std::string tolerance = {});
	void add_complex(std::string label, Complex value, std::string tolerance = {});
	void add_flag(std::string label, bool value, std::string tolerance = {});
	void add_text(std::string label, std::string value);
	void add_matrix(std::string label, CMatrix value);
};

enum class ReportFormat
{
	Human,
	JsonText
};

/// Aligned label/value/tolerance table.
std::string report_to_human(const Report& report);

/// Stable key order, shortest round-trip decimals, complex as [re, im].
std::string report_to_json_text(const Report& report);

void save_report(const Report& report, const std::string& path, ReportFormat format);

} // namespace fh
