#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "drast/error.hpp"
#include "drast/features.hpp"

namespace drast {

// Feature rows as CSV: bug_id,file,f1,f2,f3,f4,f5,f6,label with a header.
// Fields containing commas or quotes are quoted; doubles print with %.17g so
// a read-back is bit-identical.

namespace csv_detail {

inline std::string escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Splits one CSV record, honoring quotes.
inline std::vector<std::string> split_record(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

}  // namespace csv_detail

inline constexpr const char* kPairsCsvHeader =
    "bug_id,file,f1,f2,f3,f4,f5,f6,label";

inline void save_pairs_csv(const std::filesystem::path& path,
                           std::span<const FeatureRow> rows) {
    std::ofstream out(path);
    if (!out) throw Error(errc::io_failure, "cannot write " + path.string());
    out << kPairsCsvHeader << '\n';
    for (const FeatureRow& row : rows) {
        out << csv_detail::escape(row.bug_id) << ',' << csv_detail::escape(row.file);
        for (double v : row.f) out << ',' << csv_detail::format_double(v);
        out << ',' << row.label << '\n';
    }
    if (!out) throw Error(errc::io_failure, "short write to " + path.string());
}

inline std::vector<FeatureRow> load_pairs_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io_failure, "cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line) || csv_detail::split_record(line).size() != 9)
        throw Error(errc::schema_violation, "missing or malformed CSV header in " +
                                                path.string());
    std::vector<FeatureRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = csv_detail::split_record(line);
        if (fields.size() != 9)
            throw Error(errc::schema_violation,
                        path.string() + ":" + std::to_string(lineno) + ": expected 9 fields");
        FeatureRow row;
        row.bug_id = fields[0];
        row.file = fields[1];
        for (std::size_t i = 0; i < 6; ++i) row.f[i] = std::stod(fields[2 + i]);
        row.label = std::stoi(fields[8]);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace drast
