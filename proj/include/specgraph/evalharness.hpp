#pragma once

#include <cstdint>
#include <vector>

#include "specgraph/gms.hpp"
#include "specgraph/procgen.hpp"
#include "specgraph/types.hpp"

namespace specgraph {

/// Average edge false-alarm and detection fractions over M runs.
struct SelectionMetrics {
    double pFa = 0.0;
    double pD = 0.0;
    int runs = 0;
};

struct RocPoint {
    double lambda = 0.0;
    double pFa = 0.0;
    double pD = 0.0;
};

struct RocCurve {
    std::vector<RocPoint> points;  // lambdas strictly increasing
};

struct TauPoint {
    Index n = 0;
    double tau = 0.0;
    double pD = 0.0;
};

struct MetricsOptions {
    // Detection as printed in the source text, |E_hat|/|E|, instead of the
    // correct-decision fraction |E_hat intersect E|/|E|; can exceed 1.
    bool paperPd = false;
};

SelectionMetrics selection_metrics(const std::vector<Graph>& estimates, const Graph& truth,
                                   const MetricsOptions& opts = {});

/// Simulate M blocks, run the full inference per lambda over the same blocks,
/// and average the metrics. Deterministic given seed.
RocCurve roc_sweep(const ProcessModel& model, const Graph& truth, const GmsConfig& cfgBase,
                   const std::vector<double>& lambdas, Index n, int m, std::uint64_t seed);

/// Trapezoid area with (0,0) and (1,1) endpoints appended.
double roc_area(const std::vector<std::pair<double, double>>& points);
double roc_area(const RocCurve& curve);

/// N / (ln(p) * sMax^3).
double rescaled_tau(Index n, int p, int sMax);

/// Detection probability against the rescaled sample size for a ladder of
/// block lengths at fixed lambda.
std::vector<TauPoint> tau_sweep(const ProcessModel& model, const Graph& truth, const GmsConfig& cfgBase,
                                const std::vector<Index>& ns, int m, std::uint64_t seed);

/// First upward crossing of pD = 0.5, linearly interpolated in tau.
double tau_crossing(const std::vector<TauPoint>& points, double level = 0.5);

/// Row-wise lasso fit of the one-step autoregression coefficient matrix,
/// by cyclic coordinate descent on (1/(2(N-1))) ||y - A z||^2 + lambda ||a||_1.
Matrix var1_lasso_fit(const TimeSeriesBlock& d, double lambda);

/// Baseline graph: edge {r,s} present iff either fitted coefficient
/// magnitude exceeds eta.
Graph var_baseline_gms(const TimeSeriesBlock& d, double lambda, double eta);

}  // namespace specgraph
