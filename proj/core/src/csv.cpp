#include "entrokit/csv.hpp"

#include "entrokit/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace entrokit {

namespace {

std::vector<std::string> split_fields(const std::string& line)
{
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    out.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    out.emplace_back();
  }
  return out;
}

std::string trimmed(const std::string& s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_cell(const std::string& cell, double& out)
{
  const std::string t = trimmed(cell);
  if (t.empty()) {
    return false;
  }
  const char* begin = t.data();
  const char* end = begin + t.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

} // namespace

DataSet ingest_csv(std::istream& in)
{
  std::vector<double> values;
  std::size_t dimension = 0;
  std::size_t row_number = 0;
  std::size_t data_rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++row_number;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (trimmed(line).empty()) {
      continue;
    }
    const std::vector<std::string> fields = split_fields(line);
    if (data_rows == 0 && dimension == 0) {
      // probe the first content row: all-numeric means data, otherwise header
      bool numeric = true;
      double probe = 0.0;
      for (const auto& f : fields) {
        if (!parse_cell(f, probe)) {
          numeric = false;
          break;
        }
      }
      if (!numeric) {
        dimension = fields.size(); // header fixes the width
        continue;
      }
    }
    if (dimension == 0) {
      dimension = fields.size();
    }
    if (fields.size() != dimension) {
      throw ParseError("csv: ragged row (expected " + std::to_string(dimension) + " fields, got " +
                         std::to_string(fields.size()) + ") at row " + std::to_string(row_number),
                       row_number);
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      double value = 0.0;
      if (!parse_cell(fields[c], value)) {
        throw ParseError("csv: non-numeric cell '" + trimmed(fields[c]) + "' at row " +
                           std::to_string(row_number) + ", column " + std::to_string(c + 1),
                         row_number, c + 1);
      }
      values.push_back(value);
    }
    ++data_rows;
  }
  if (data_rows == 0) {
    throw ParseError("csv: no data rows", 0);
  }
  return DataSet(std::move(values), dimension);
}

DataSet ingest_csv(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw ParseError("csv: cannot open '" + path.string() + "'", 0);
  }
  return ingest_csv(in);
}

std::string format_double(double value)
{
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_csv(const DataSet& data, std::ostream& out)
{
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto row = data.row(i);
    for (std::size_t a = 0; a < row.size(); ++a) {
      if (a > 0) {
        out << ',';
      }
      out << format_double(row[a]);
    }
    out << '\n';
  }
}

void write_csv(const DataSet& data, const std::filesystem::path& path)
{
  std::ofstream out(path);
  if (!out) {
    throw ParseError("csv: cannot write '" + path.string() + "'", 0);
  }
  write_csv(data, out);
}

} // namespace entrokit
