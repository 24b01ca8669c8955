#include "specgraph/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace specgraph {

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, delimiter)) fields.push_back(field);
    if (!line.empty() && line.back() == delimiter) fields.emplace_back();
    return fields;
}

std::string trimmed(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    const std::string t = trimmed(cell);
    const char* first = t.data();
    const char* last = t.data() + t.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << "ingest_csv: non-numeric cell at row " << row << ", column " << col << ": '" << cell << "'";
        throw DataError(msg.str());
    }
    return value;
}

double median_of(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of empty range");
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    std::nth_element(v.begin(), v.begin() + mid - 1, v.end());
    return 0.5 * (hi + v[mid - 1]);
}

}  // namespace

LabeledSeries ingest_csv(const std::string& path, const CsvOptions& opts) {
    std::ifstream file(path);
    if (!file) throw DataError("ingest_csv: cannot open '" + path + "'");
    if (!opts.labelColumn.empty() && !opts.headerRow)
        throw ConfigError("ingest_csv: label column requires a header row");

    std::string line;
    std::size_t lineNo = 0;
    std::vector<std::string> names;
    std::ptrdiff_t labelIdx = -1;

    if (opts.headerRow) {
        if (!std::getline(file, line)) throw DataError("ingest_csv: empty file");
        ++lineNo;
        for (const auto& name : split_line(line, opts.delimiter)) names.push_back(trimmed(name));
        if (!opts.labelColumn.empty()) {
            const auto it = std::find(names.begin(), names.end(), opts.labelColumn);
            if (it == names.end())
                throw DataError("ingest_csv: label column '" + opts.labelColumn + "' not found");
            labelIdx = it - names.begin();
        }
    }

    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::size_t width = names.empty() ? 0 : names.size();
    while (std::getline(file, line)) {
        ++lineNo;
        if (trimmed(line).empty()) continue;
        const auto fields = split_line(line, opts.delimiter);
        if (width == 0) width = fields.size();
        if (fields.size() != width) {
            std::ostringstream msg;
            msg << "ingest_csv: ragged row " << lineNo << " (" << fields.size() << " cells, expected " << width << ")";
            throw DataError(msg.str());
        }
        std::vector<double> row;
        row.reserve(width);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const double value = parse_cell(fields[c], lineNo, c + 1);
            if (static_cast<std::ptrdiff_t>(c) == labelIdx)
                labels.push_back(static_cast<int>(std::lround(value)));
            else
                row.push_back(value);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("ingest_csv: no data rows");

    LabeledSeries out;
    const auto p = static_cast<Index>(rows.front().size());
    const auto n = static_cast<Index>(rows.size());
    out.values.resize(p, n);
    for (Index t = 0; t < n; ++t)
        for (Index c = 0; c < p; ++c) out.values(c, t) = rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)];
    if (labelIdx >= 0) out.labels = std::move(labels);
    if (!names.empty()) {
        for (std::size_t c = 0; c < names.size(); ++c)
            if (static_cast<std::ptrdiff_t>(c) != labelIdx) out.columnNames.push_back(names[c]);
    }
    return out;
}

void write_series_csv(const std::string& path, const Matrix& values,
                      const std::vector<std::string>& columnNames) {
    std::ofstream file(path);
    if (!file) throw DataError("write_series_csv: cannot open '" + path + "' for writing");
    if (!columnNames.empty()) {
        for (std::size_t c = 0; c < columnNames.size(); ++c)
            file << (c ? "," : "") << columnNames[c];
        file << "\n";
    }
    char buf[32];
    for (Index t = 0; t < values.cols(); ++t) {
        for (Index c = 0; c < values.rows(); ++c) {
            const int len = std::snprintf(buf, sizeof(buf), "%.17g", values(c, t));
            if (c) file << ',';
            file.write(buf, len);
        }
        file << "\n";
    }
    if (!file) throw DataError("write_series_csv: write failed for '" + path + "'");
}

LabeledSeries preprocess(const LabeledSeries& series, const PreprocessOptions& opts) {
    if (opts.boxcarLen < 1 || opts.boxcarLen % 2 == 0)
        throw std::invalid_argument("preprocess: boxcarLen must be odd and positive");
    if (opts.outlierMadK < 0.0) throw std::invalid_argument("preprocess: outlierMadK must be nonnegative");
    const Index p = series.values.rows();
    const Index n = series.values.cols();
    if (series.labels && static_cast<Index>(series.labels->size()) != n)
        throw std::invalid_argument("preprocess: label length mismatch");

    // per-component median and MAD
    Vector med(p), mad(p);
    for (Index r = 0; r < p; ++r) {
        std::vector<double> vals(series.values.row(r).begin(), series.values.row(r).end());
        med(r) = median_of(vals);
        std::vector<double> dev(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i) dev[i] = std::abs(vals[i] - med(r));
        mad(r) = median_of(dev);
    }

    std::vector<Index> keep;
    keep.reserve(static_cast<std::size_t>(n));
    for (Index t = 0; t < n; ++t) {
        bool ok = true;
        for (Index r = 0; r < p; ++r) {
            if (std::abs(series.values(r, t) - med(r)) > opts.outlierMadK * mad(r)) {
                ok = false;
                break;
            }
        }
        if (ok) keep.push_back(t);
    }
    if (keep.empty()) throw DataError("preprocess: all samples removed as outliers");

    LabeledSeries out;
    out.columnNames = series.columnNames;
    const auto kept = static_cast<Index>(keep.size());
    Matrix pruned(p, kept);
    for (Index i = 0; i < kept; ++i) pruned.col(i) = series.values.col(keep[static_cast<std::size_t>(i)]);
    if (series.labels) {
        std::vector<int> labels(static_cast<std::size_t>(kept));
        for (Index i = 0; i < kept; ++i)
            labels[static_cast<std::size_t>(i)] = (*series.labels)[static_cast<std::size_t>(keep[static_cast<std::size_t>(i)])];
        out.labels = std::move(labels);
    }

    // centered boxcar detrend, truncated at the edges
    const Index half = opts.boxcarLen / 2;
    out.values.resize(p, kept);
    for (Index t = 0; t < kept; ++t) {
        const Index lo = std::max<Index>(0, t - half);
        const Index hi = std::min<Index>(kept - 1, t + half);
        const double width = static_cast<double>(hi - lo + 1);
        out.values.col(t) = pruned.col(t) - pruned.middleCols(lo, hi - lo + 1).rowwise().sum() / width;
    }
    return out;
}

std::string graph_to_json(const Graph& graph) {
    nlohmann::ordered_json j;
    j["p"] = graph.p;
    auto edges = nlohmann::ordered_json::array();
    for (const auto& [a, b] : graph.edges) edges.push_back({a + 1, b + 1});
    j["edges"] = std::move(edges);
    return j.dump();
}

void export_graph(const Graph& graph, GraphFormat format, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw DataError("export_graph: cannot open '" + path + "' for writing");
    switch (format) {
        case GraphFormat::Json:
            file << graph_to_json(graph) << "\n";
            break;
        case GraphFormat::Dot:
            file << "graph cig {\n";
            for (int r = 1; r <= graph.p; ++r) file << "  " << r << ";\n";
            for (const auto& [a, b] : graph.edges) file << "  " << a + 1 << " -- " << b + 1 << ";\n";
            file << "}\n";
            break;
        case GraphFormat::EdgeCsv:
            file << "r,rp\n";
            for (const auto& [a, b] : graph.edges) file << a + 1 << "," << b + 1 << "\n";
            break;
    }
    if (!file) throw DataError("export_graph: write failed for '" + path + "'");
}

Graph import_graph_json(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw DataError("import_graph_json: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        file >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(std::string("import_graph_json: ") + e.what());
    }
    if (!j.contains("p") || !j.contains("edges")) throw DataError("import_graph_json: missing 'p' or 'edges'");
    Graph graph(j.at("p").get<int>());
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw DataError("import_graph_json: malformed edge");
        graph.add_edge(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);
    }
    return graph;
}

}  // namespace specgraph
