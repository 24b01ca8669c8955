#pragma once

#include <cstdint>
#include <optional>

#include "specgraph/procgen.hpp"
#include "specgraph/spectral.hpp"
#include "specgraph/types.hpp"

namespace specgraph {

/// Inputs to the sample-size conditions of the consistency analysis.
struct TheoryParams {
    Index n = 0;
    int p = 0;
    int sMax = 0;
    double rhoMin = 0.0;
    double u = 1.0;      // eigenvalue upper bound after L = 1 normalization
    double delta = 0.1;  // target error probability
    double windowL1 = 1.0;
    double muH1 = 0.0;
    std::optional<double> phiLowerBound;

    void validate() const;
};

enum class BoundVariant { PerNode, FullGraph };

struct BoundCheck {
    bool satisfied = false;
    double marginN = 0.0;  // left side minus right side of the N condition
    bool momentOk = false;
};

/// Grid maximum of the entrywise max-modulus difference between two SDM grids.
double sup_estimation_error(const SdmGrid& est, const SdmGrid& truth);

/// N-condition and ACF-moment condition of the per-node / full-graph
/// consistency guarantee.
BoundCheck theorem_bound_check(const TheoryParams& tp, BoundVariant variant);

/// Smallest sample size whose bound check is satisfied (and stays satisfied).
Index crossover_sample_size(TheoryParams tp, BoundVariant variant);

/// True iff the estimation error is small enough for the 1/sqrt(2)
/// compatibility-constant guarantee.
bool compatibility_condition_check(double e, int sMax);

struct McCheckResult {
    double empiricalProb = 0.0;
    double bound = 1.0;
    bool passed = false;  // empirical <= bound + 3 binomial standard errors
    double muH1 = 0.0;    // sdm tail check only
};

/// Monte-Carlo exceedance of the sup estimation error against the
/// concentration bound; the process is rescaled internally so L = 1.
McCheckResult mc_sdm_tail_check(const ProcessModel& model, const WindowSpec& w, Index n, double nu,
                                int trials, std::uint64_t seed);

/// Monte-Carlo exceedance of |y^T Q x - E| >= N*nu for (x, y) jointly
/// Gaussian with covariance cz (2N x 2N), against the quadratic-form bound.
McCheckResult mc_quadratic_form_check(const Matrix& cz, const Matrix& q, double nu, int trials,
                                      std::uint64_t seed);

/// Closed-form expectation of the windowed estimator, from the analytic ACF.
SdmGrid expected_bt_sdm(const ProcessModel& model, const WindowSpec& w, Index n,
                        const std::vector<double>& thetas);

}  // namespace specgraph
