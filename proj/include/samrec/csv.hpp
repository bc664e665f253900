#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "samrec/error.hpp"

namespace samrec {

// Minimal CSV reader: header row, comma separation, double-quoted fields with
// "" escapes. Fields may not span lines.
class CsvFile {
public:
    explicit CsvFile(const std::string& path);

    // Column index for a header name; throws when the column is missing.
    std::size_t column(const std::string& name) const;

    // Reads the next record into fields; false at end of file.
    bool next(std::vector<std::string>& fields);

    std::size_t line() const { return line_; }
    const std::string& path() const { return path_; }

    [[noreturn]] void fail(const std::string& message) const;

private:
    void parse_line(const std::string& raw, std::vector<std::string>& fields) const;

    std::string path_;
    std::ifstream stream_;
    std::vector<std::string> header_;
    std::size_t line_ = 0;
};

} // namespace samrec
