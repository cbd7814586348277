#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace rydcz {

// Deterministic CSV writer: fixed %.12g formatting, rejects non-finite cells.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path, std::vector<std::string> columns)
        : path_(path), columns_(std::move(columns)), out_(path) {
        if (!out_) throw IoError("cannot open CSV for writing: " + path);
        for (size_t i = 0; i < columns_.size(); ++i)
            out_ << (i ? "," : "") << columns_[i];
        out_ << "\n";
    }

    void row(const std::vector<double>& values) {
        if (values.size() != columns_.size())
            throw ContractViolation("CsvWriter: column count mismatch in " + path_);
        char buf[32];
        for (size_t i = 0; i < values.size(); ++i) {
            if (!std::isfinite(values[i]))
                throw OutOfRegime("CsvWriter: non-finite value for column '" + columns_[i] +
                                  "' in " + path_);
            std::snprintf(buf, sizeof buf, "%.12g", values[i]);
            out_ << (i ? "," : "") << buf;
        }
        out_ << "\n";
        if (!out_) throw IoError("write failure on " + path_);
    }

    void close() {
        out_.close();
        if (!out_) throw IoError("close failure on " + path_);
    }

private:
    std::string path_;
    std::vector<std::string> columns_;
    std::ofstream out_;
};

}  // namespace rydcz
