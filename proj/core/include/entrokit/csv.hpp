#pragma once

#include "entrokit/dataset.hpp"

#include <filesystem>
#include <iosfwd>

namespace entrokit {

// Comma-separated n x d numeric table; a single non-numeric first row is
// treated as a header and skipped. Rejects ragged rows and non-numeric cells
// (ParseError carries the 1-based location).
DataSet ingest_csv(const std::filesystem::path& path);
DataSet ingest_csv(std::istream& in);

// Shortest round-trip formatting; re-ingesting reproduces the values
// bit-identically.
void write_csv(const DataSet& data, std::ostream& out);
void write_csv(const DataSet& data, const std::filesystem::path& path);

// Locale-independent double formatting used across all report writers.
std::string format_double(double value);

} // namespace entrokit
