#include "lrs/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lrs::io {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_field(const std::string& field, const std::string& path,
                   std::size_t line_no) {
  const std::string t = trim(field);
  double v = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || t.empty()) {
    throw ParseError(path + ":" + std::to_string(line_no) +
                     ": not a number: '" + t + "'");
  }
  if (!std::isfinite(v)) {
    throw ParseError(path + ":" + std::to_string(line_no) +
                     ": non-finite entry");
  }
  return v;
}

struct Table {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> comments;
};

Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  Table table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      table.comments.push_back(t);
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      row.push_back(parse_field(field, path, line_no));
    }
    if (!table.rows.empty() && row.size() != table.rows.front().size()) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": ragged row (expected " +
                       std::to_string(table.rows.front().size()) + " fields, got " +
                       std::to_string(row.size()) + ")");
    }
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) throw ParseError(path + ": no data rows");
  return table;
}

Matrix to_matrix(const Table& table) {
  const Index rows = static_cast<Index>(table.rows.size());
  const Index cols = static_cast<Index>(table.rows.front().size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = table.rows[static_cast<std::size_t>(i)]
                          [static_cast<std::size_t>(j)];
    }
  }
  return m;
}

void write_table(const std::string& path, const Matrix& m,
                 const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  for (const std::string& c : comments) {
    out << (c.rfind('#', 0) == 0 ? "" : "# ") << c << '\n';
  }
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_value(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw ParseError(path + ": write failed");
}

}  // namespace

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Matrix load_matrix(const std::string& path, Orientation orientation) {
  const Matrix m = to_matrix(read_table(path));
  if (orientation == Orientation::RowsAreSamples) {
    return m.transpose();
  }
  return m;
}

void save_matrix(const std::string& path, const Matrix& m,
                 const std::vector<std::string>& comments) {
  write_table(path, m, comments);
}

std::vector<int> load_labels(const std::string& path) {
  const Table table = read_table(path);
  std::vector<int> labels;
  labels.reserve(table.rows.size());
  std::size_t line_no = 0;
  for (const auto& row : table.rows) {
    ++line_no;
    if (row.size() != 1) {
      throw ParseError(path + ": labels must have one column");
    }
    const double v = row.front();
    if (v != std::floor(v)) {
      throw ParseError(path + ": label is not an integer (row " +
                       std::to_string(line_no) + ")");
    }
    labels.push_back(static_cast<int>(v));
  }
  return labels;
}

void save_labels(const std::string& path, const std::vector<int>& labels,
                 const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  for (const std::string& c : comments) {
    out << (c.rfind('#', 0) == 0 ? "" : "# ") << c << '\n';
  }
  for (int label : labels) out << label << '\n';
  if (!out) throw ParseError(path + ": write failed");
}

void save_graph(const std::string& path, const AffinityGraph& g,
                const std::vector<std::string>& comments) {
  std::vector<std::string> header;
  header.push_back("# lrs-graph v1 n=" + std::to_string(g.w.rows()));
  header.insert(header.end(), comments.begin(), comments.end());
  write_table(path, g.w, header);
}

AffinityGraph load_graph(const std::string& path) {
  const Table table = read_table(path);
  if (table.comments.empty() ||
      table.comments.front().rfind("# lrs-graph v1 n=", 0) != 0) {
    throw ParseError(path + ": missing '# lrs-graph v1 n=<n>' header");
  }
  const std::string& header = table.comments.front();
  const std::string count = header.substr(std::string("# lrs-graph v1 n=").size());
  const long n = std::stol(count);
  AffinityGraph g;
  g.w = to_matrix(table);
  if (g.w.rows() != n || g.w.cols() != n) {
    throw ParseError(path + ": header says n=" + count +
                     " but the table is " + std::to_string(g.w.rows()) + "x" +
                     std::to_string(g.w.cols()));
  }
  if ((g.w - g.w.transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
      g.w.minCoeff() < 0.0) {
    throw ParseError(path + ": graph must be symmetric and nonnegative");
  }
  return g;
}

void save_projection(const std::string& path, const Matrix& p,
                     const std::vector<std::string>& comments) {
  std::vector<std::string> header;
  header.push_back("# lrs-matrix v1 rows=" + std::to_string(p.rows()) +
                   " cols=" + std::to_string(p.cols()));
  header.insert(header.end(), comments.begin(), comments.end());
  write_table(path, p, header);
}

Matrix load_projection(const std::string& path) {
  const Table table = read_table(path);
  if (table.comments.empty() ||
      table.comments.front().rfind("# lrs-matrix v1 ", 0) != 0) {
    throw ParseError(path + ": missing '# lrs-matrix v1' header");
  }
  return to_matrix(table);
}

}  // namespace lrs::io
