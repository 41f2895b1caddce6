#include "fh/report.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace fh {

namespace {

using Json = nlohmann::ordered_json;

std::string format_double(double v)
{
	std::ostringstream out;
	out << std::setprecision(12) << v;
	return out.str();
}

std::string format_complex(const Complex& z)
{
	std::ostringstream out;
	out << std::setprecision(12) << z.real() << (z.imag() < 0.0 ? " - " : " + ")
	    << std::abs(z.imag()) << "i";
	return out.str();
}

std::string format_matrix_block(const CMatrix& a)
{
	std::ostringstream out;
	for (Index r = 0; r < a.rows(); ++r)
	{
		out << "    [";
		for (Index c = 0; c < a.cols(); ++c)
			out << (c == 0 ? "" : ", ") << format_complex(a(r, c));
		out << "]\n";
	}
	return out.str();
}

Json matrix_to_json(const CMatrix& a)
{
	Json rows = Json::array();
	for (Index r = 0; r < a.rows(); ++r)
	{
		Json row = Json::array();
		for (Index c = 0; c < a.cols(); ++c)
			row.push_back(Json::array({a(r, c).real(), a(r, c).imag()}));
		rows.push_back(std::move(row));
	}
	return rows;
}

} // namespace

void Report::add_input(std::string key, std::string value)
{
	inputs.emplace_back(std::move(key), std::move(value));
}

void Report::add_number(std::string label, double value, std::string tolerance)
{
	ReportEntry e;
	e.label = std::move(label);
	e.kind = ReportEntry::Kind::Number;
	e.number = value;
	e.tolerance = std::move(tolerance);
	entries.push_back(std::move(e));
}

void Report::add_complex(std::string label, Complex value, std::string tolerance)
{
	ReportEntry e;
	e.label = std::move(label);
	e.kind = ReportEntry::Kind::ComplexValue;
	e.complex_value = value;
	e.tolerance = std::move(tolerance);
	entries.push_back(std::move(e));
}

void Report::add_flag(std::string label, bool value, std::string tolerance)
{
	ReportEntry e;
	e.label = std::move(label);
	e.kind = ReportEntry::Kind::Flag;
	e.flag = value;
	e.tolerance = std::move(tolerance);
	entries.push_back(std::move(e));
}

void Report::add_text(std::string label, std::string value)
{
	ReportEntry e;
	e.label = std::move(label);
	e.kind = ReportEntry::Kind::Text;
	e.text = std::move(value);
	entries.push_back(std::move(e));
}

void Report::add_matrix(std::string label, CMatrix value)
{
	ReportEntry e;
	e.label = std::move(label);
	e.kind = ReportEntry::Kind::Matrix;
	e.matrix = std::move(value);
	entries.push_back(std::move(e));
}

std::string report_to_human(const Report& report)
{
	std::ostringstream out;
	out << "command: " << report.command << "\n";
	for (const auto& [key, value] : report.inputs)
		out << "input:   " << key << " = " << value << "\n";
	if (report.seed)
		out << "seed:    " << *report.seed << "\n";

	std::size_t label_width = 5;
	std::size_t value_width = 5;
	std::vector<std::string> values;
	values.reserve(report.entries.size());
	for (const ReportEntry& e : report.entries)
	{
		std::string value;
		switch (e.kind)
		{
		case ReportEntry::Kind::Number: value = format_double(e.number); break;
		case ReportEntry::Kind::ComplexValue: value = format_complex(e.complex_value); break;
		case ReportEntry::Kind::Flag: value = e.flag ? "true" : "false"; break;
		case ReportEntry::Kind::Text: value = e.text; break;
		case ReportEntry::Kind::Matrix:
		{
			std::ostringstream dims;
			dims << "(" << e.matrix.rows() << " x " << e.matrix.cols() << " matrix)";
			value = dims.str();
			break;
		}
		}
		label_width = std::max(label_width, e.label.size());
		value_width = std::max(value_width, value.size());
		values.push_back(std::move(value));
	}

	out << "\n" << std::left << std::setw(int(label_width) + 2) << "label" << std::setw(int(value_width) + 2)
	    << "value" << "tolerance\n";
	for (std::size_t i = 0; i < report.entries.size(); ++i)
	{
		const ReportEntry& e = report.entries[i];
		out << std::left << std::setw(int(label_width) + 2) << e.label << std::setw(int(value_width) + 2)
		    << values[i] << (e.tolerance.empty() ? "-" : e.tolerance) << "\n";
		if (e.kind == ReportEntry::Kind::Matrix)
			out << format_matrix_block(e.matrix);
	}
	return out.str();
}

std::string report_to_json_text(const Report& report)
{
	Json doc = Json::object();
	doc["command"] = report.command;
	Json inputs = Json::object();
	for (const auto& [key, value] : report.inputs)
		inputs[key] = value;
	doc["inputs"] = std::move(inputs);
	if (report.seed)
		doc["seed"] = *report.seed;

	Json results = Json::array();
	for (const ReportEntry& e : report.entries)
	{
		Json row = Json::object();
		row["label"] = e.label;
		switch (e.kind)
		{
		case ReportEntry::Kind::Number: row["value"] = e.number; break;
		case ReportEntry::Kind::ComplexValue:
			row["value"] = Json::array({e.complex_value.real(), e.complex_value.imag()});
			break;
		case ReportEntry::Kind::Flag: row["value"] = e.flag; break;
		case ReportEntry::Kind::Text: row["value"] = e.text; break;
		case ReportEntry::Kind::Matrix: row["value"] = matrix_to_json(e.matrix); break;
		}
		if (!e.tolerance.empty())
			row["tolerance"] = e.tolerance;
		results.push_back(std::move(row));
	}
	doc["results"] = std::move(results);
	return doc.dump(2) + "\n";
}

void save_report(const Report& report, const std::string& path, ReportFormat format)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw std::runtime_error("report: cannot write '" + path + "'");
	out << (format == ReportFormat::Human ? report_to_human(report) : report_to_json_text(report));
	if (!out)
		throw std::runtime_error("report: write failed for '" + path + "'");
}

} // namespace fh
