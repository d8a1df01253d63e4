#include "catknock/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "catknock/errors.hpp"

namespace catknock {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, std::size_t row, std::size_t col) {
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE)
    throw ingestion_error("CSV: cannot parse \"" + s + "\" as a number at row " +
                          std::to_string(row) + ", column " + std::to_string(col));
  return v;
}

long long parse_code(const std::string& s, std::size_t row, std::size_t col) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ingestion_error("CSV: cannot parse \"" + s + "\" as an integer code at row " +
                          std::to_string(row) + ", column " + std::to_string(col));
  return v;
}

// Shortest round-trip formatting; keeps written files reproducible.
std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  double back = std::strtod(buf, nullptr);
  if (back == v) {
    for (int prec = 1; prec <= 16; ++prec) {
      char shorter[32];
      std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
      if (std::strtod(shorter, nullptr) == v) return shorter;
    }
  }
  return buf;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ingestion_error("cannot open " + path);
  CsvTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() && in.peek() == EOF) break;
    auto cells = split_line(line);
    if (lineno == 1) {
      t.header = cells;
      continue;
    }
    if (cells.size() != t.header.size())
      throw ingestion_error(path + ": row " + std::to_string(lineno) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(t.header.size()));
    t.cells.push_back(std::move(cells));
  }
  if (t.header.empty()) throw ingestion_error(path + ": missing header row");
  if (t.cells.empty()) throw ingestion_error(path + ": no data rows");
  return t;
}

CategoricalMatrix read_codes_csv(const std::string& path, int m) {
  CsvTable t = read_csv(path);
  CategoricalMatrix X;
  X.rows = t.cells.size();
  X.cols = t.header.size();
  X.m = m;
  X.codes.reserve(X.rows * X.cols);
  for (std::size_t i = 0; i < X.rows; ++i)
    for (std::size_t j = 0; j < X.cols; ++j) {
      long long c = parse_code(t.cells[i][j], i + 2, j + 1);
      if (c < 0 || c > m)
        throw ingestion_error(path + ": code " + std::to_string(c) + " at row " +
                              std::to_string(i + 2) + ", column " +
                              std::to_string(j + 1) + " outside {0,...," +
                              std::to_string(m) + "}");
      X.codes.push_back(static_cast<int>(c));
    }
  return X;
}

Matrix read_matrix_csv(const std::string& path) {
  CsvTable t = read_csv(path);
  Matrix X(t.cells.size(), t.header.size());
  for (std::size_t i = 0; i < X.rows; ++i)
    for (std::size_t j = 0; j < X.cols; ++j)
      X(i, j) = parse_double(t.cells[i][j], i + 2, j + 1);
  return X;
}

std::vector<double> read_column_csv(const std::string& path) {
  CsvTable t = read_csv(path);
  std::vector<double> y(t.cells.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] = parse_double(t.cells[i][0], i + 2, 1);
  return y;
}

Dataset read_dataset_csv(const std::string& path, int m) {
  CsvTable t = read_csv(path);
  if (t.header.size() < 2)
    throw ingestion_error(path + ": need at least one covariate column and a response");
  Dataset d;
  std::size_t p = t.header.size() - 1;
  d.column_names.assign(t.header.begin(), t.header.begin() + static_cast<std::ptrdiff_t>(p));
  d.X.rows = t.cells.size();
  d.X.cols = p;
  d.X.m = m;
  d.X.codes.reserve(d.X.rows * p);
  d.y.resize(t.cells.size());
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      long long c = parse_code(t.cells[i][j], i + 2, j + 1);
      if (c < 0 || c > m)
        throw ingestion_error(path + ": code " + std::to_string(c) + " at row " +
                              std::to_string(i + 2) + ", column " +
                              std::to_string(j + 1) + " outside {0,...," +
                              std::to_string(m) + "}");
      d.X.codes.push_back(static_cast<int>(c));
    }
    d.y[i] = parse_double(t.cells[i][p], i + 2, p + 1);
  }
  return d;
}

namespace {

void write_header(std::ofstream& out, std::size_t cols,
                  const std::vector<std::string>& names, const char* prefix) {
  for (std::size_t j = 0; j < cols; ++j) {
    if (j) out << ',';
    if (j < names.size())
      out << names[j];
    else
      out << prefix << (j + 1);
  }
  out << '\n';
}

}  // namespace

void write_codes_csv(const std::string& path, const CategoricalMatrix& X,
                     const std::vector<std::string>& names) {
  std::ofstream out(path);
  if (!out) throw ingestion_error("cannot write " + path);
  write_header(out, X.cols, names, "x");
  for (std::size_t i = 0; i < X.rows; ++i) {
    for (std::size_t j = 0; j < X.cols; ++j) {
      if (j) out << ',';
      out << X(i, j);
    }
    out << '\n';
  }
}

void write_matrix_csv(const std::string& path, const Matrix& X,
                      const std::vector<std::string>& names) {
  std::ofstream out(path);
  if (!out) throw ingestion_error("cannot write " + path);
  write_header(out, X.cols, names, "x");
  for (std::size_t i = 0; i < X.rows; ++i) {
    for (std::size_t j = 0; j < X.cols; ++j) {
      if (j) out << ',';
      out << format_double(X(i, j));
    }
    out << '\n';
  }
}

void write_column_csv(const std::string& path, const std::vector<double>& y,
                      const std::string& name) {
  std::ofstream out(path);
  if (!out) throw ingestion_error("cannot write " + path);
  out << name << '\n';
  for (double v : y) out << format_double(v) << '\n';
}

}  // namespace catknock
