#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace repgame {

// Headerless numeric CSV, one matrix row per line, 17-significant-digit
// round-trip formatting.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(const std::string& path);

// Tabular CSV with an explicit header row.
void write_table_csv(const std::string& path, const std::string& header,
                     const std::vector<std::vector<double>>& rows);

std::string format_double(double v);  // shortest round-trip decimal form

}  // namespace repgame
