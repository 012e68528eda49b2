#include "umtk/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "umtk/errors.hpp"

namespace umtk {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(trim(std::string_view(line).substr(start)));
            break;
        }
        fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

std::optional<double> parse_double(const std::string& field) {
    if (field.empty()) return std::nullopt;
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return value;
}

struct RawCsv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;   // raw fields
    std::vector<std::size_t> line_numbers;        // 1-based source line per row
};

RawCsv read_raw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError(path, 0, 0, "cannot open file: " + path);
    RawCsv raw;
    std::string line;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_fields(line);
        if (first_content) {
            first_content = false;
            bool all_numeric = true;
            for (const auto& f : fields)
                if (!parse_double(f)) {
                    all_numeric = false;
                    break;
                }
            if (!all_numeric) {
                raw.header = std::move(fields);
                continue;
            }
        }
        raw.rows.push_back(std::move(fields));
        raw.line_numbers.push_back(line_no);
    }
    if (raw.rows.empty()) throw CsvError(path, line_no, 0, "no data rows in " + path);
    return raw;
}

}  // namespace

CsvTable read_csv_table(const std::string& path) {
    RawCsv raw = read_raw(path);
    const std::size_t width = raw.rows.front().size();
    for (std::size_t r = 0; r < raw.rows.size(); ++r)
        if (raw.rows[r].size() != width)
            throw CsvError(path, raw.line_numbers[r], raw.rows[r].size(),
                           "expected " + std::to_string(width) + " fields, got " +
                               std::to_string(raw.rows[r].size()));

    // Columns are numeric or label, decided by the first data row.
    std::vector<std::size_t> numeric_cols;
    for (std::size_t c = 0; c < width; ++c)
        if (parse_double(raw.rows.front()[c])) numeric_cols.push_back(c);
    if (numeric_cols.empty())
        throw CsvError(path, raw.line_numbers.front(), 1, "no numeric columns in " + path);

    CsvTable table;
    table.values = Matrix(raw.rows.size(), numeric_cols.size());
    for (std::size_t r = 0; r < raw.rows.size(); ++r)
        for (std::size_t c = 0; c < numeric_cols.size(); ++c) {
            const auto value = parse_double(raw.rows[r][numeric_cols[c]]);
            if (!value)
                throw CsvError(path, raw.line_numbers[r], numeric_cols[c] + 1,
                               "not a number: '" + raw.rows[r][numeric_cols[c]] + "'");
            table.values(r, c) = *value;
        }
    for (const std::size_t c : numeric_cols) {
        table.kept_columns.push_back(c + 1);
        if (!raw.header.empty()) table.header.push_back(raw.header[c]);
    }
    return table;
}

Matrix read_matrix_csv(const std::string& path) { return read_csv_table(path).values; }

DistanceMatrix read_distance_csv(const std::string& path) {
    RawCsv raw = read_raw(path);
    const std::size_t row_count = raw.rows.size();

    std::vector<std::vector<double>> rows(row_count);
    for (std::size_t r = 0; r < row_count; ++r) {
        rows[r].reserve(raw.rows[r].size());
        for (std::size_t c = 0; c < raw.rows[r].size(); ++c) {
            const auto value = parse_double(raw.rows[r][c]);
            if (!value)
                throw CsvError(path, raw.line_numbers[r], c + 1,
                               "not a number: '" + raw.rows[r][c] + "'");
            rows[r].push_back(*value);
        }
    }

    bool square = true;
    bool triangular = true;
    for (std::size_t r = 0; r < row_count; ++r) {
        if (rows[r].size() != row_count) square = false;
        if (rows[r].size() != r + 1) triangular = false;
    }

    Matrix values;
    if (square) {
        values = Matrix(row_count, row_count);
        for (std::size_t i = 0; i < row_count; ++i)
            for (std::size_t j = 0; j < row_count; ++j) values(i, j) = rows[i][j];
    } else if (triangular) {
        // Row lengths 1..m. If every row's trailing entry is zero, read it as
        // the lower triangle including the diagonal (n = m); otherwise as the
        // strict lower triangle (n = m + 1).
        bool with_diagonal = true;
        for (const auto& row : rows)
            if (row.back() != 0.0) {
                with_diagonal = false;
                break;
            }
        const std::size_t n = with_diagonal ? row_count : row_count + 1;
        values = Matrix(n, n, 0.0);
        for (std::size_t r = 0; r < row_count; ++r) {
            const std::size_t i = with_diagonal ? r : r + 1;
            for (std::size_t j = 0; j < rows[r].size(); ++j) {
                values(i, j) = rows[r][j];
                values(j, i) = rows[r][j];
            }
        }
    } else {
        throw CsvError(path, raw.line_numbers.front(), 0,
                       "distance matrix must be a full square or a lower triangle "
                       "(row lengths 1..m)");
    }
    return DistanceMatrix::from_matrix(std::move(values));
}

std::vector<double> read_series_csv(const std::string& path) {
    const CsvTable table = read_csv_table(path);
    if (table.values.cols() != 1)
        throw CsvError(path, 1, table.values.cols(),
                       "series file must have exactly one numeric column, got " +
                           std::to_string(table.values.cols()));
    std::vector<double> series(table.values.rows());
    for (std::size_t i = 0; i < series.size(); ++i) series[i] = table.values(i, 0);
    return series;
}

std::string format_double(double v) {
    char buf[32];
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // Prefer the shortest representation that still round-trips.
    for (int precision = 1; precision < 17; ++precision) {
        char candidate[32];
        std::snprintf(candidate, sizeof(candidate), "%.*g", precision, v);
        double back = 0.0;
        std::from_chars(candidate, candidate + std::string_view(candidate).size(), back);
        if (back == v) return candidate;
    }
    return buf;
}

void write_matrix_csv(const std::string& path, const Matrix& values,
                      const std::vector<std::string>& header) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write file: " + path);
    if (!header.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c)
            out << (c ? "," : "") << header[c];
        out << '\n';
    }
    for (std::size_t i = 0; i < values.rows(); ++i) {
        for (std::size_t j = 0; j < values.cols(); ++j)
            out << (j ? "," : "") << format_double(values(i, j));
        out << '\n';
    }
    if (!out) throw InvalidInput("write failed: " + path);
}

void write_cloud_csv(const std::string& path, const Matrix& points,
                     const std::vector<int>& labels) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write file: " + path);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        for (std::size_t j = 0; j < points.cols(); ++j)
            out << (j ? "," : "") << format_double(points(i, j));
        if (!labels.empty()) out << ',' << labels[i];
        out << '\n';
    }
    if (!out) throw InvalidInput("write failed: " + path);
}

}  // namespace umtk
