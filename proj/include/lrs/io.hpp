#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lrs/graph.hpp"
#include "lrs/matrix.hpp"

namespace lrs::io {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Orientation { ColumnsAreSamples, RowsAreSamples };

// Comma-delimited numeric table; lines starting with '#' and blank lines
// are skipped. Ragged rows and non-finite entries are rejected with the
// offending line number. The result always holds samples as columns.
Matrix load_matrix(const std::string& path, Orientation orientation);

// Writes rows as comma-separated values preceded by the given '#' comment
// lines. %.17g formatting; output is byte-stable for identical inputs.
void save_matrix(const std::string& path, const Matrix& m,
                 const std::vector<std::string>& comments = {});

// Single integer label per line.
std::vector<int> load_labels(const std::string& path);
void save_labels(const std::string& path, const std::vector<int>& labels,
                 const std::vector<std::string>& comments = {});

// Graph container: "# lrs-graph v1 n=<n>" header, optional further comment
// lines, then an n x n weight matrix.
void save_graph(const std::string& path, const AffinityGraph& g,
                const std::vector<std::string>& comments = {});
AffinityGraph load_graph(const std::string& path);

// Projection container: same delimited-text layout with a
// "# lrs-matrix v1 rows=<r> cols=<c>" header.
void save_projection(const std::string& path, const Matrix& p,
                     const std::vector<std::string>& comments = {});
Matrix load_projection(const std::string& path);

std::string format_value(double v);  // %.17g

}  // namespace lrs::io
