#pragma once

#include <set>
#include <vector>

#include "specgraph/mlasso.hpp"
#include "specgraph/types.hpp"

namespace specgraph {

enum class CombineRule { And, Or };

struct GmsConfig {
    double windowScale = 44.0;
    int f = 4;             // frequency bins
    int quadPoints = 8;
    double lambda = 0.1;
    double eta = 0.1;
    CombineRule rule = CombineRule::Or;
    SolverOptions solver;
    bool bestEffort = false;  // keep going past non-converged nodes

    void validate() const;
};

/// Per-node solver outcome; groupNorms(v) belongs to original component
/// regressorIndex(v).
struct NodeDiagnostics {
    int node = -1;
    Vector groupNorms;
    std::vector<int> regressorIndex;
    SolverReport report;
};

/// Sanity rule-of-thumb for the number of bins, F ~ 2 mu_x.
int suggested_bin_count(double muX);

/// Neighborhood of node r (0-based): solve the node's group problem and keep
/// regressors whose group norm strictly exceeds eta.
std::set<int> estimate_neighborhood(const TimeSeriesBlock& d, int r, const GmsConfig& cfg,
                                    NodeDiagnostics* diag = nullptr);

/// Combine per-node neighborhood estimates under the AND / OR rule.
Graph combine_graph(const std::vector<std::set<int>>& neighborhoods, CombineRule rule);

struct InferenceResult {
    Graph graph;
    std::vector<NodeDiagnostics> diagnostics;
};

/// Neighborhood estimation for every node followed by rule combination;
/// nodes run independently and may execute concurrently.
InferenceResult infer_cig(const TimeSeriesBlock& d, const GmsConfig& cfg);

}  // namespace specgraph
