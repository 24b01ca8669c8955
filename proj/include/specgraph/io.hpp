#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specgraph/types.hpp"

namespace specgraph {

/// Ingested table: values is p x N_total (components x time), labels are
/// per-sample integers when a label column was extracted.
struct LabeledSeries {
    Matrix values;
    std::optional<std::vector<int>> labels;
    std::vector<std::string> columnNames;  // empty without a header row
};

struct CsvOptions {
    bool headerRow = false;
    std::string labelColumn;  // extracted by name; requires headerRow
    char delimiter = ',';
};

/// Rows are time samples, columns are components; the result is transposed
/// into p x N. Parse errors carry 1-based row/column locations.
LabeledSeries ingest_csv(const std::string& path, const CsvOptions& opts = {});

/// Write a block as CSV, one row per time sample, round-trip precision.
void write_series_csv(const std::string& path, const Matrix& values,
                      const std::vector<std::string>& columnNames = {});

struct PreprocessOptions {
    double outlierMadK = 5.0;
    int boxcarLen = 5;
};

/// Drop samples deviating from the per-component median by more than
/// outlierMadK * MAD, then subtract a centered boxcar moving average
/// (truncated at the edges) from each component.
LabeledSeries preprocess(const LabeledSeries& series, const PreprocessOptions& opts = {});

enum class GraphFormat { Json, Dot, EdgeCsv };

/// Canonical serialization: 1-based labels, r < r', lexicographic order.
void export_graph(const Graph& graph, GraphFormat format, const std::string& path);
std::string graph_to_json(const Graph& graph);
Graph import_graph_json(const std::string& path);

}  // namespace specgraph
