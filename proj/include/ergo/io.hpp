#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ergo {

// Raised for filesystem-level failures (missing file, unwritable path).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Raised for malformed CSV input; carries a 1-based row/column location.
class CsvParseError : public std::runtime_error {
public:
    CsvParseError(std::size_t row, std::size_t col, const std::string& what)
        : std::runtime_error("csv parse error at row " + std::to_string(row) +
                             ", column " + std::to_string(col) + ": " + what),
          row_(row),
          col_(col) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

// Shortest decimal form with 9 significant digits. All CSV and text report
// numbers go through here so regenerated outputs are byte-stable.
inline std::string format_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// Splits one CSV record into fields. Double-quoted fields may contain commas
// and "" escapes a quote; embedded newlines are not supported.
inline std::vector<std::string> split_csv_record(const std::string& line, std::size_t row) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    std::size_t col = 1;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            if (!field.empty())
                throw CsvParseError(row, col, "quote inside unquoted field");
            quoted = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
            col = static_cast<std::size_t>(fields.size()) + 1;
        } else {
            field += c;
        }
    }
    if (quoted)
        throw CsvParseError(row, col, "unterminated quoted field");
    fields.push_back(field);
    return fields;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out)
        throw IoError("write to '" + path + "' failed");
}

}  // namespace ergo
