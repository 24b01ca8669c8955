#include "specgraph/mlasso.hpp"

#include <cmath>

namespace specgraph {

namespace {

// Integral of the full-p estimator Gram over each bin; node problems are
// extracted from these shared matrices.
std::vector<CMatrix> binned_sdm_integrals(const TimeSeriesBlock& d, const WindowSpec& w, int f,
                                          int quadPoints) {
    if (f < 1) throw std::invalid_argument("assemble_group_problem: F must be positive");
    if (quadPoints < 1) throw std::invalid_argument("assemble_group_problem: quadPoints must be positive");
    const int p = d.p();
    const double weight = 1.0 / (static_cast<double>(f) * quadPoints);
    std::vector<CMatrix> bins(static_cast<std::size_t>(f), CMatrix::Zero(p, p));
    const double n = static_cast<double>(d.n());
    for (int b = 0; b < f; ++b) {
        for (int i = 0; i < quadPoints; ++i) {
            const double theta = static_cast<double>(b) / f + (i + 0.5) * weight;
            const SpectralFactor factor = spectral_factor(d, w, theta);
            bins[static_cast<std::size_t>(b)] += weight / n * (factor.a.adjoint() * factor.a);
        }
    }
    return bins;
}

GroupProblem extract_node_problem(const std::vector<CMatrix>& bins, int p, int r) {
    if (p < 2) throw std::invalid_argument("assemble_group_problem: need p >= 2");
    if (r < 0 || r >= p) throw std::invalid_argument("assemble_group_problem: node out of range");
    std::vector<int> perm(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::swap(perm[0], perm[static_cast<std::size_t>(r)]);

    GroupProblem prob;
    prob.f = static_cast<int>(bins.size());
    prob.q = p - 1;
    prob.grams.reserve(bins.size());
    prob.corrs.reserve(bins.size());
    for (const CMatrix& s : bins) {
        CMatrix g(p - 1, p - 1);
        CVector c(p - 1);
        for (int i = 1; i < p; ++i) {
            c(i - 1) = s(perm[static_cast<std::size_t>(i)], perm[0]);
            for (int j = 1; j < p; ++j)
                g(i - 1, j - 1) = s(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        }
        g = 0.5 * (g + g.adjoint()).eval();
        prob.grams.push_back(std::move(g));
        prob.corrs.push_back(std::move(c));
    }
    return prob;
}

}  // namespace

GroupProblem assemble_group_problem(const TimeSeriesBlock& d, const WindowSpec& w, int r, int f,
                                    int quadPoints) {
    return extract_node_problem(binned_sdm_integrals(d, w, f, quadPoints), d.p(), r);
}

std::vector<GroupProblem> assemble_group_problems(const TimeSeriesBlock& d, const WindowSpec& w,
                                                  int f, int quadPoints) {
    const auto bins = binned_sdm_integrals(d, w, f, quadPoints);
    std::vector<GroupProblem> out;
    out.reserve(static_cast<std::size_t>(d.p()));
    for (int r = 0; r < d.p(); ++r) out.push_back(extract_node_problem(bins, d.p(), r));
    return out;
}

CVector group_soft_threshold(const CVector& v, double kappa) {
    if (kappa < 0.0) throw std::invalid_argument("group_soft_threshold: kappa must be nonnegative");
    const double norm = v.norm();
    if (norm <= kappa) return CVector::Zero(v.size());
    return (1.0 - kappa / norm) * v;
}

double mlasso_objective(const GroupProblem& prob, const GroupCoefficients& coeffs, double lambda) {
    double value = 0.0;
    for (int f = 0; f < prob.f; ++f) {
        const CVector beta = coeffs.blocks.col(f);
        value += (beta.adjoint() * prob.grams[static_cast<std::size_t>(f)] * beta).value().real();
        value -= 2.0 * prob.corrs[static_cast<std::size_t>(f)].dot(beta).real();
    }
    for (int r = 0; r < prob.q; ++r) value += lambda * coeffs.blocks.row(r).norm();
    return value;
}

std::pair<GroupCoefficients, SolverReport> solve_mlasso_admm(const GroupProblem& prob, double lambda,
                                                             const SolverOptions& opts) {
    if (lambda < 0.0) throw std::invalid_argument("solve_mlasso_admm: lambda must be nonnegative");
    const int f = prob.f;
    const int q = prob.q;
    for (const auto& g : prob.grams)
        if (!g.allFinite()) throw std::invalid_argument("solve_mlasso_admm: non-finite Gram");
    for (const auto& c : prob.corrs)
        if (!c.allFinite()) throw std::invalid_argument("solve_mlasso_admm: non-finite correlation");

    double rho = opts.rho;
    std::vector<Eigen::LLT<CMatrix>> factors;
    auto refactor = [&] {
        factors.clear();
        factors.reserve(static_cast<std::size_t>(f));
        for (const auto& g : prob.grams)
            factors.emplace_back(CMatrix(g + rho * CMatrix::Identity(q, q)));
    };
    refactor();

    CMatrix beta = CMatrix::Zero(q, f);
    CMatrix z = CMatrix::Zero(q, f);
    CMatrix u = CMatrix::Zero(q, f);
    const double rootDim = std::sqrt(static_cast<double>(f) * q);

    SolverReport report;
    for (int it = 0; it < opts.maxIter; ++it) {
        for (int b = 0; b < f; ++b)
            beta.col(b) = factors[static_cast<std::size_t>(b)].solve(
                prob.corrs[static_cast<std::size_t>(b)] + rho * (z.col(b) - u.col(b)));

        const CMatrix zOld = z;
        const CMatrix v = beta + u;
        for (int r = 0; r < q; ++r)
            z.row(r) = group_soft_threshold(v.row(r).transpose(), lambda / (2.0 * rho)).transpose();
        u += beta - z;

        report.iterations = it + 1;
        report.primalResidual = (beta - z).norm();
        report.dualResidual = 2.0 * rho * (z - zOld).norm();
        const double epsPrimal =
            rootDim * opts.absTol + opts.relTol * std::max(beta.norm(), z.norm());
        const double epsDual = rootDim * opts.absTol + opts.relTol * (2.0 * rho * u.norm());
        if (report.primalResidual <= epsPrimal && report.dualResidual <= epsDual) {
            report.converged = true;
            break;
        }
        if (opts.adaptRho && (it + 1) % 50 == 0) {
            if (report.primalResidual > 10.0 * report.dualResidual) {
                rho *= 2.0;
                u /= 2.0;
                refactor();
            } else if (report.dualResidual > 10.0 * report.primalResidual) {
                rho /= 2.0;
                u *= 2.0;
                refactor();
            }
        }
    }

    GroupCoefficients coeffs;
    coeffs.blocks = z;
    report.objective = mlasso_objective(prob, coeffs, lambda);
    return {std::move(coeffs), report};
}

}  // namespace specgraph
