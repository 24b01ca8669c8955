#include "specgraph/gms.hpp"

#include <cmath>
#include <sstream>

#include "specgraph/parallel.hpp"

namespace specgraph {

void GmsConfig::validate() const {
    if (!(windowScale > 0.0)) throw std::invalid_argument("GmsConfig: windowScale must be positive");
    if (f < 1) throw std::invalid_argument("GmsConfig: F must be positive");
    if (quadPoints < 1) throw std::invalid_argument("GmsConfig: quadPoints must be positive");
    if (!(lambda > 0.0)) throw std::invalid_argument("GmsConfig: lambda must be positive");
    if (eta < 0.0) throw std::invalid_argument("GmsConfig: eta must be nonnegative");
}

int suggested_bin_count(double muX) {
    if (muX < 0.0) throw std::invalid_argument("suggested_bin_count: muX must be nonnegative");
    return std::max(1, static_cast<int>(std::lround(2.0 * muX)));
}

namespace {

std::vector<int> swap_permutation(int p, int r) {
    std::vector<int> perm(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::swap(perm[0], perm[static_cast<std::size_t>(r)]);
    return perm;
}

std::set<int> neighborhood_from_problem(const GroupProblem& prob, int p, int r, const GmsConfig& cfg,
                                        NodeDiagnostics* diag) {
    auto [coeffs, report] = solve_mlasso_admm(prob, cfg.lambda, cfg.solver);
    if (!report.converged && !cfg.bestEffort) {
        std::ostringstream msg;
        msg << "mLASSO did not converge for node " << r + 1 << " after " << report.iterations
            << " iterations";
        throw SolverError(msg.str(), report, r);
    }
    const Vector norms = coeffs.group_norms();
    const auto perm = swap_permutation(p, r);
    std::set<int> nbrs;
    for (int v = 1; v < p; ++v)
        if (norms(v - 1) > cfg.eta) nbrs.insert(perm[static_cast<std::size_t>(v)]);
    if (diag) {
        diag->node = r;
        diag->groupNorms = norms;
        diag->regressorIndex.assign(perm.begin() + 1, perm.end());
        diag->report = report;
    }
    return nbrs;
}

}  // namespace

std::set<int> estimate_neighborhood(const TimeSeriesBlock& d, int r, const GmsConfig& cfg,
                                    NodeDiagnostics* diag) {
    cfg.validate();
    if (d.p() < 2) throw std::invalid_argument("estimate_neighborhood: need p >= 2");
    const WindowSpec w = make_gaussian_window(cfg.windowScale, d.n());
    const GroupProblem prob = assemble_group_problem(d, w, r, cfg.f, cfg.quadPoints);
    return neighborhood_from_problem(prob, d.p(), r, cfg, diag);
}

Graph combine_graph(const std::vector<std::set<int>>& neighborhoods, CombineRule rule) {
    const int p = static_cast<int>(neighborhoods.size());
    Graph graph(p);
    for (int r = 0; r < p; ++r) {
        for (int s : neighborhoods[static_cast<std::size_t>(r)]) {
            if (s == r) throw std::invalid_argument("combine_graph: node listed in its own neighborhood");
            if (s < 0 || s >= p) throw std::invalid_argument("combine_graph: node index out of range");
            const bool mutual = neighborhoods[static_cast<std::size_t>(s)].count(r) > 0;
            if (rule == CombineRule::Or || mutual) graph.add_edge(r, s);
        }
    }
    return graph;
}

InferenceResult infer_cig(const TimeSeriesBlock& d, const GmsConfig& cfg) {
    cfg.validate();
    const int p = d.p();
    if (p < 2) throw std::invalid_argument("infer_cig: need p >= 2");
    const WindowSpec w = make_gaussian_window(cfg.windowScale, d.n());
    const auto problems = assemble_group_problems(d, w, cfg.f, cfg.quadPoints);

    std::vector<std::set<int>> neighborhoods(static_cast<std::size_t>(p));
    std::vector<NodeDiagnostics> diags(static_cast<std::size_t>(p));
    parallel_for(p, [&](Index r) {
        const auto ri = static_cast<std::size_t>(r);
        neighborhoods[ri] = neighborhood_from_problem(problems[ri], p, static_cast<int>(r), cfg, &diags[ri]);
    });

    InferenceResult result;
    result.graph = combine_graph(neighborhoods, cfg.rule);
    result.diagnostics = std::move(diags);
    return result;
}

}  // namespace specgraph
