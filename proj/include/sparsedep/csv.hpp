#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace sparsedep {

// Shortest round-trip decimal form (std::to_chars), so CSV output is
// byte-deterministic and parses back to the identical double.
std::string format_double(double x);

// One CSV line from already-formatted fields.
std::string join_csv(const std::vector<std::string>& fields);

// Splits a CSV line on commas; fields are trimmed of surrounding spaces.
std::vector<std::string> split_csv_line(const std::string& line);

bool parse_double(const std::string& field, double& out);

struct RegressionData {
  Eigen::MatrixXd X;  // n x p fixed design
  Eigen::VectorXd Y;  // n responses
};

// First column Y, remaining columns X. A non-numeric first row is treated as
// a header and skipped.
RegressionData read_regression_csv(const std::string& path);

// Rectangular numeric matrix, optional header row auto-detected as above.
Eigen::MatrixXd read_matrix_csv(const std::string& path);

void write_lines(const std::string& path, const std::vector<std::string>& lines);

}  // namespace sparsedep
