#include "qclab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "qclab/errors.hpp"

namespace qclab {

std::string format_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string to_csv(const CsvTable& t) {
    if (t.header.empty()) throw ValidationError("csv: header must be nonempty");
    if (t.rows.empty()) throw ValidationError("csv: refusing to emit a table with no rows");
    std::string out;
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (i) out += ',';
        out += t.header[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        if (row.size() != t.header.size())
            throw ValidationError("csv: row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (!std::isfinite(row[i]))
                throw ValidationError("csv: non-finite value in column '" + t.header[i] +
                                      "'");
            if (i) out += ',';
            out += format_sig12(row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot open '" + tmp + "' for writing");
        f << content;
        if (!f.good()) throw Error("short write to '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("cannot move '" + tmp + "' to '" + path + "'");
}

}  // namespace qclab
