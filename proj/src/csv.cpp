#include "sparsedep/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sparsedep {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string join_csv(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += fields[i];
  }
  return line;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, ',')) {
    std::size_t a = cur.find_first_not_of(" \t\r");
    std::size_t b = cur.find_last_not_of(" \t\r");
    fields.push_back(a == std::string::npos ? "" : cur.substr(a, b - a + 1));
  }
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

bool parse_double(const std::string& field, double& out) {
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

namespace {

std::vector<std::vector<double>> read_numeric_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first_row = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    std::vector<double> row(fields.size());
    bool ok = true;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (!parse_double(fields[i], row[i])) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      if (first_row) {  // header row
        first_row = false;
        continue;
      }
      throw std::runtime_error("non-numeric field in " + path + ": " + line);
    }
    first_row = false;
    if (!rows.empty() && rows.front().size() != row.size())
      throw std::runtime_error("ragged rows in " + path);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("no data rows in " + path);
  return rows;
}

}  // namespace

RegressionData read_regression_csv(const std::string& path) {
  auto rows = read_numeric_rows(path);
  const int n = static_cast<int>(rows.size());
  const int cols = static_cast<int>(rows.front().size());
  if (cols < 2) throw std::runtime_error("regression CSV needs Y plus at least one X column");
  RegressionData data;
  data.Y.resize(n);
  data.X.resize(n, cols - 1);
  for (int i = 0; i < n; ++i) {
    data.Y(i) = rows[i][0];
    for (int j = 1; j < cols; ++j) data.X(i, j - 1) = rows[i][j];
  }
  return data;
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  auto rows = read_numeric_rows(path);
  const int n = static_cast<int>(rows.size());
  const int m = static_cast<int>(rows.front().size());
  Eigen::MatrixXd out(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) out(i, j) = rows[i][j];
  return out;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);  // fixed newlines on every platform
  if (!out) throw std::runtime_error("cannot write file: " + path);
  for (const auto& l : lines) out << l << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sparsedep
