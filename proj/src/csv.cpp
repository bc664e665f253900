#include "samrec/csv.hpp"

namespace samrec {

CsvFile::CsvFile(const std::string& path) : path_(path), stream_(path, std::ios::binary) {
    if (!stream_) {
        throw Error(ErrorCode::io, "cannot open csv file: " + path);
    }
    std::string raw;
    if (!std::getline(stream_, raw)) {
        throw Error(ErrorCode::parse, path + ": missing header row");
    }
    line_ = 1;
    parse_line(raw, header_);
}

std::size_t CsvFile::column(const std::string& name) const {
    for (std::size_t i = 0; i < header_.size(); i++) {
        if (header_[i] == name) return i;
    }
    throw Error(ErrorCode::parse, path_ + ": missing column '" + name + "'");
}

void CsvFile::fail(const std::string& message) const {
    throw Error(ErrorCode::parse, path_ + ":" + std::to_string(line_) + ": " + message);
}

void CsvFile::parse_line(const std::string& raw, std::vector<std::string>& fields) const {
    fields.clear();
    std::string field;
    bool quoted = false;
    std::size_t i = 0;
    std::size_t end = raw.size();
    if (end > 0 && raw[end - 1] == '\r') end--;
    while (i < end) {
        char c = raw[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < end && raw[i + 1] == '"') {
                    field.push_back('"');
                    i += 2;
                    continue;
                }
                quoted = false;
                i++;
                continue;
            }
            field.push_back(c);
            i++;
        } else if (c == '"') {
            quoted = true;
            i++;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            i++;
        } else {
            field.push_back(c);
            i++;
        }
    }
    if (quoted) fail("unterminated quoted field");
    fields.push_back(std::move(field));
}

bool CsvFile::next(std::vector<std::string>& fields) {
    std::string raw;
    while (std::getline(stream_, raw)) {
        line_++;
        if (raw.empty() || raw == "\r") continue;
        parse_line(raw, fields);
        if (fields.size() != header_.size()) {
            fail("expected " + std::to_string(header_.size()) + " fields, got " +
                 std::to_string(fields.size()));
        }
        return true;
    }
    return false;
}

} // namespace samrec
