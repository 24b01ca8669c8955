#pragma once

#include <Eigen/Dense>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace specgraph {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Raised for malformed configuration or parameters (CLI exit code 1).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised for unusable input data such as ragged CSV rows (CLI exit code 2).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Observed data block: column n holds the sample x[n], so values is p x N.
struct TimeSeriesBlock {
    Matrix values;

    TimeSeriesBlock() = default;
    explicit TimeSeriesBlock(Matrix v) : values(std::move(v)) {
        if (values.rows() < 1 || values.cols() < 1)
            throw std::invalid_argument("TimeSeriesBlock: need p >= 1 and N >= 1");
        if (!values.allFinite())
            throw std::invalid_argument("TimeSeriesBlock: non-finite entries");
    }

    int p() const { return static_cast<int>(values.rows()); }
    Index n() const { return values.cols(); }
};

/// Undirected graph over components 0..p-1, no self-loops, edges stored
/// with first < second. Serialization uses 1-based node labels.
struct Graph {
    int p = 0;
    std::set<std::pair<int, int>> edges;

    Graph() = default;
    explicit Graph(int p_) : p(p_) {
        if (p_ < 1) throw std::invalid_argument("Graph: p must be positive");
    }

    void add_edge(int r, int s) {
        if (r == s) throw std::invalid_argument("Graph: self-loop");
        if (r < 0 || s < 0 || r >= p || s >= p)
            throw std::invalid_argument("Graph: node out of range");
        edges.emplace(std::min(r, s), std::max(r, s));
    }

    bool has_edge(int r, int s) const {
        return edges.count({std::min(r, s), std::max(r, s)}) > 0;
    }

    std::vector<int> degrees() const {
        std::vector<int> d(static_cast<std::size_t>(p), 0);
        for (const auto& [a, b] : edges) {
            ++d[static_cast<std::size_t>(a)];
            ++d[static_cast<std::size_t>(b)];
        }
        return d;
    }

    int max_degree() const {
        int m = 0;
        for (int d : degrees()) m = std::max(m, d);
        return m;
    }

    std::set<int> neighbors(int r) const {
        std::set<int> out;
        for (const auto& [a, b] : edges) {
            if (a == r) out.insert(b);
            if (b == r) out.insert(a);
        }
        return out;
    }

    bool operator==(const Graph& other) const {
        return p == other.p && edges == other.edges;
    }
};

}  // namespace specgraph
