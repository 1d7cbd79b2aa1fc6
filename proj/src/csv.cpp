#include "qgenome/csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace qgenome::csv {

std::string format_real(double value) {
    char buffer[40];
    const int n = std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return std::string(buffer, static_cast<std::size_t>(n));
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_real(std::string_view field, std::size_t line_number) {
    field = trim(field);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw std::runtime_error("line " + std::to_string(line_number) + ": cannot parse number '" + std::string(field) + "'");
    }
    return value;
}

Eigen::MatrixXd read_matrix(std::istream &in, std::vector<std::string> *header_out) {
    std::string line;
    std::size_t line_number = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_number;
        if (!trim(line).empty()) {
            header = split(trim(line));
            break;
        }
    }
    if (header.empty()) {
        throw std::runtime_error("matrix CSV is empty");
    }
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_number;
        const auto content = trim(line);
        if (content.empty()) {
            continue;
        }
        const auto fields = split(content);
        if (fields.size() != header.size()) {
            throw std::runtime_error("line " + std::to_string(line_number) + ": expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto &f : fields) {
            row.push_back(parse_real(f, line_number));
        }
        rows.push_back(std::move(row));
    }
    Eigen::MatrixXd M(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(header.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    if (header_out != nullptr) {
        *header_out = std::move(header);
    }
    return M;
}

void write_matrix(std::ostream &out, const Eigen::Ref<const Eigen::MatrixXd> &M, const std::vector<std::string> &header) {
    if (static_cast<Eigen::Index>(header.size()) != M.cols()) {
        throw std::invalid_argument("CSV header width does not match matrix");
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
        out << (c ? "," : "") << header[c];
    }
    out << '\n';
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
        for (Eigen::Index c = 0; c < M.cols(); ++c) {
            out << (c ? "," : "") << format_real(M(r, c));
        }
        out << '\n';
    }
}

}  // namespace qgenome::csv
