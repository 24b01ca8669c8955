#include "specgraph/evalharness.hpp"

#include <algorithm>
#include <cmath>

#include "specgraph/parallel.hpp"

namespace specgraph {

SelectionMetrics selection_metrics(const std::vector<Graph>& estimates, const Graph& truth,
                                   const MetricsOptions& opts) {
    if (estimates.empty()) throw std::invalid_argument("selection_metrics: no estimates");
    const int p = truth.p;
    const auto totalPairs = static_cast<double>(p) * (p - 1) / 2.0;
    const auto trueEdges = static_cast<double>(truth.edges.size());
    if (trueEdges == 0.0) throw std::invalid_argument("selection_metrics: truth has no edges, pD undefined");
    if (totalPairs - trueEdges <= 0.0)
        throw std::invalid_argument("selection_metrics: truth has no non-edges, pFa undefined");

    SelectionMetrics out;
    out.runs = static_cast<int>(estimates.size());
    for (const Graph& est : estimates) {
        if (est.p != p) throw std::invalid_argument("selection_metrics: estimate dimension mismatch");
        double falseAlarms = 0.0, hits = 0.0;
        for (const auto& e : est.edges) {
            if (truth.edges.count(e))
                hits += 1.0;
            else
                falseAlarms += 1.0;
        }
        out.pFa += falseAlarms / (totalPairs - trueEdges);
        out.pD += (opts.paperPd ? static_cast<double>(est.edges.size()) : hits) / trueEdges;
    }
    out.pFa /= out.runs;
    out.pD /= out.runs;
    return out;
}

namespace {

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 step keeps per-run streams well separated
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Per-run neighborhoods for several lambdas over one assembled problem set.
std::vector<Graph> sweep_one_block(const TimeSeriesBlock& d, const GmsConfig& cfgBase,
                                   const std::vector<double>& lambdas) {
    const int p = d.p();
    const WindowSpec w = make_gaussian_window(cfgBase.windowScale, d.n());
    const auto problems = assemble_group_problems(d, w, cfgBase.f, cfgBase.quadPoints);
    std::vector<Graph> graphs;
    graphs.reserve(lambdas.size());
    for (double lambda : lambdas) {
        GmsConfig cfg = cfgBase;
        cfg.lambda = lambda;
        std::vector<std::set<int>> nbrs(static_cast<std::size_t>(p));
        for (int r = 0; r < p; ++r) {
            auto [coeffs, report] = solve_mlasso_admm(problems[static_cast<std::size_t>(r)], lambda, cfg.solver);
            if (!report.converged && !cfg.bestEffort)
                throw SolverError("roc sweep: solver did not converge", report, r);
            const Vector norms = coeffs.group_norms();
            std::vector<int> perm(static_cast<std::size_t>(p));
            for (int i = 0; i < p; ++i) perm[static_cast<std::size_t>(i)] = i;
            std::swap(perm[0], perm[static_cast<std::size_t>(r)]);
            for (int v = 1; v < p; ++v)
                if (norms(v - 1) > cfg.eta) nbrs[static_cast<std::size_t>(r)].insert(perm[static_cast<std::size_t>(v)]);
        }
        graphs.push_back(combine_graph(nbrs, cfg.rule));
    }
    return graphs;
}

}  // namespace

RocCurve roc_sweep(const ProcessModel& model, const Graph& truth, const GmsConfig& cfgBase,
                   const std::vector<double>& lambdas, Index n, int m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("roc_sweep: M must be positive");
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        if (!(lambdas[i] > lambdas[i - 1]))
            throw std::invalid_argument("roc_sweep: lambdas must be strictly increasing");

    std::vector<std::vector<Graph>> perRun(static_cast<std::size_t>(m));
    parallel_for(m, [&](Index run) {
        const TimeSeriesBlock d = simulate(model, n, 1000, derived_seed(seed, static_cast<std::uint64_t>(run)));
        perRun[static_cast<std::size_t>(run)] = sweep_one_block(d, cfgBase, lambdas);
    });

    RocCurve curve;
    curve.points.reserve(lambdas.size());
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
        std::vector<Graph> estimates;
        estimates.reserve(static_cast<std::size_t>(m));
        for (int run = 0; run < m; ++run) estimates.push_back(perRun[static_cast<std::size_t>(run)][li]);
        const SelectionMetrics metrics = selection_metrics(estimates, truth);
        curve.points.push_back({lambdas[li], metrics.pFa, metrics.pD});
    }
    return curve;
}

double roc_area(const std::vector<std::pair<double, double>>& points) {
    std::vector<std::pair<double, double>> pts = points;
    pts.emplace_back(0.0, 0.0);
    pts.emplace_back(1.0, 1.0);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double area = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        area += (pts[i].first - pts[i - 1].first) * (pts[i].second + pts[i - 1].second) / 2.0;
    return area;
}

double roc_area(const RocCurve& curve) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(curve.points.size());
    for (const auto& pt : curve.points) pts.emplace_back(pt.pFa, pt.pD);
    return roc_area(pts);
}

double rescaled_tau(Index n, int p, int sMax) {
    if (p < 2) throw std::invalid_argument("rescaled_tau: p must be at least 2");
    if (sMax < 1) throw std::invalid_argument("rescaled_tau: sMax must be positive");
    const double s = sMax;
    return static_cast<double>(n) / (std::log(static_cast<double>(p)) * s * s * s);
}

std::vector<TauPoint> tau_sweep(const ProcessModel& model, const Graph& truth, const GmsConfig& cfgBase,
                                const std::vector<Index>& ns, int m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("tau_sweep: M must be positive");
    std::vector<TauPoint> out(ns.size());
    const int sMax = truth.max_degree();
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const Index n = ns[i];
        std::vector<Graph> estimates(static_cast<std::size_t>(m), Graph(model.p));
        parallel_for(m, [&](Index run) {
            const TimeSeriesBlock d =
                simulate(model, n, 1000, derived_seed(seed + 7919 * static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(run)));
            estimates[static_cast<std::size_t>(run)] = infer_cig(d, cfgBase).graph;
        });
        const SelectionMetrics metrics = selection_metrics(estimates, truth);
        out[i] = {n, rescaled_tau(n, model.p, sMax), metrics.pD};
    }
    return out;
}

double tau_crossing(const std::vector<TauPoint>& points, double level) {
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double d0 = points[i - 1].pD, d1 = points[i].pD;
        if (d0 < level && d1 >= level) {
            const double t0 = points[i - 1].tau, t1 = points[i].tau;
            return t0 + (level - d0) * (t1 - t0) / (d1 - d0);
        }
    }
    throw std::runtime_error("tau_crossing: detection curve does not cross the level");
}

Matrix var1_lasso_fit(const TimeSeriesBlock& d, double lambda) {
    const int p = d.p();
    const Index n = d.n();
    if (n < 2) throw std::invalid_argument("var1_lasso_fit: need N >= 2");
    const Matrix z = d.values.leftCols(n - 1);
    const Matrix y = d.values.rightCols(n - 1);
    const double count = static_cast<double>(n - 1);
    const Matrix gram = z * z.transpose() / count;
    const Matrix cross = y * z.transpose() / count;
    for (int j = 0; j < p; ++j)
        if (gram(j, j) <= 0.0) throw std::invalid_argument("var1_lasso_fit: degenerate regressor");

    Matrix coeffs = Matrix::Zero(p, p);
    for (int r = 0; r < p; ++r) {
        Vector a = Vector::Zero(p);
        Vector gramA = Vector::Zero(p);  // gram * a, kept in sync
        for (int sweep = 0; sweep < 10000; ++sweep) {
            double maxDelta = 0.0;
            for (int j = 0; j < p; ++j) {
                const double rho = cross(r, j) - gramA(j) + gram(j, j) * a(j);
                const double next = std::copysign(std::max(std::abs(rho) - lambda, 0.0), rho) / gram(j, j);
                const double delta = next - a(j);
                if (delta != 0.0) {
                    gramA += delta * gram.col(j);
                    a(j) = next;
                }
                maxDelta = std::max(maxDelta, std::abs(delta));
            }
            if (maxDelta < 1e-8) break;
        }
        coeffs.row(r) = a.transpose();
    }
    return coeffs;
}

Graph var_baseline_gms(const TimeSeriesBlock& d, double lambda, double eta) {
    const Matrix a = var1_lasso_fit(d, lambda);
    const int p = d.p();
    Graph graph(p);
    for (int r = 0; r < p; ++r)
        for (int s = r + 1; s < p; ++s)
            if (std::abs(a(r, s)) > eta || std::abs(a(s, r)) > eta) graph.add_edge(r, s);
    return graph;
}

}  // namespace specgraph
