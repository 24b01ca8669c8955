#pragma once

#include <utility>
#include <vector>

#include "specgraph/spectral.hpp"
#include "specgraph/types.hpp"

namespace specgraph {

/// Frequency-binned quadratic data: per-bin Gram matrices and correlation
/// vectors of the masked regression, integrated over each bin.
struct GroupProblem {
    int f = 0;  // number of frequency bins
    int q = 0;  // number of variables (p-1)
    std::vector<CMatrix> grams;  // F Hermitian psd q x q
    std::vector<CVector> corrs;  // F vectors of length q
};

/// Solution blocks beta_f stored as columns of a q x F matrix; group r is
/// row r across bins.
struct GroupCoefficients {
    CMatrix blocks;  // q x F

    int f() const { return static_cast<int>(blocks.cols()); }
    int q() const { return static_cast<int>(blocks.rows()); }

    /// (1/sqrt(F)) * ||beta^(r)||_2 per variable.
    Vector group_norms() const {
        Vector out(blocks.rows());
        for (Index r = 0; r < blocks.rows(); ++r)
            out(r) = blocks.row(r).norm() / std::sqrt(static_cast<double>(blocks.cols()));
        return out;
    }
};

struct SolverReport {
    int iterations = 0;
    double primalResidual = 0.0;
    double dualResidual = 0.0;
    double objective = 0.0;
    bool converged = false;
};

struct SolverOptions {
    double rho = 1.0;
    double absTol = 1e-8;
    double relTol = 1e-6;
    int maxIter = 10000;
    bool adaptRho = false;  // residual-balancing update of rho
};

/// Raised when the solver hits the iteration cap and best-effort mode is off.
struct SolverError : std::runtime_error {
    SolverReport report;
    int node = -1;
    SolverError(const std::string& what, SolverReport r, int node_ = -1)
        : std::runtime_error(what), report(std::move(r)), node(node_) {}
};

/// G_f and c_f for node r by composite midpoint quadrature with quadPoints
/// nodes per bin, each node evaluated through the masked-regression Gram.
GroupProblem assemble_group_problem(const TimeSeriesBlock& d, const WindowSpec& w, int r, int f,
                                    int quadPoints);

/// Group problems for every node at once; the per-frequency factor Gram is
/// shared, so results are bitwise identical to the single-node assembly.
std::vector<GroupProblem> assemble_group_problems(const TimeSeriesBlock& d, const WindowSpec& w,
                                                  int f, int quadPoints);

/// max(0, 1 - kappa/||v||) * v; zero stays zero.
CVector group_soft_threshold(const CVector& v, double kappa);

/// Objective sum_f beta_f^H G_f beta_f - 2 Re{c_f^H beta_f} + lambda sum_r ||beta^(r)||.
double mlasso_objective(const GroupProblem& prob, const GroupCoefficients& coeffs, double lambda);

/// ADMM with per-bin cached factorizations and group soft-thresholding;
/// all-zero initialization, deterministic iteration.
std::pair<GroupCoefficients, SolverReport> solve_mlasso_admm(const GroupProblem& prob, double lambda,
                                                             const SolverOptions& opts = {});

}  // namespace specgraph
