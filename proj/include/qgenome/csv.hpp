#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qgenome::csv {

// %.17g, enough to round-trip any double
std::string format_real(double value);

std::vector<std::string> split(std::string_view line, char sep = ',');

std::string_view trim(std::string_view s);

double parse_real(std::string_view field, std::size_t line_number);

// numeric matrix with a mandatory header row; the header is returned through header_out when given
Eigen::MatrixXd read_matrix(std::istream &in, std::vector<std::string> *header_out = nullptr);

void write_matrix(std::ostream &out, const Eigen::Ref<const Eigen::MatrixXd> &M, const std::vector<std::string> &header);

}  // namespace qgenome::csv
