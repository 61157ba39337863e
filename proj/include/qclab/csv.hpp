#pragma once

#include <string>
#include <vector>

namespace qclab {

// Numeric table: header row plus one record per grid point. Values are
// rendered with 12 significant digits and line-feed record separators, so a
// fixed input always serializes to byte-identical text.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

std::string format_sig12(double v);
std::string to_csv(const CsvTable& t);

// Writes via a temporary file and rename, so readers never observe a
// partially written artifact.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace qclab
