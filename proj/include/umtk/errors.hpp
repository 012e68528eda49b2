#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace umtk {

// Domain violation: bad values, broken preconditions. The CLI maps this to exit 3.
class InvalidInput : public std::runtime_error {
public:
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file. Carries the location that failed. The CLI maps this to exit 2.
class CsvError : public std::runtime_error {
public:
    CsvError(std::string file, std::size_t row, std::size_t column, const std::string& what)
        : std::runtime_error(what), file_(std::move(file)), row_(row), column_(column) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t row() const noexcept { return row_; }        // 1-based line number
    std::size_t column() const noexcept { return column_; }  // 1-based field number

private:
    std::string file_;
    std::size_t row_;
    std::size_t column_;
};

}  // namespace umtk
