#pragma once

#include <vector>

#include "specgraph/types.hpp"
#include "specgraph/window.hpp"

namespace specgraph {

/// Hermitian p x p spectral matrices on a frequency grid (cycles in [0,1)).
struct SdmGrid {
    std::vector<double> thetas;
    std::vector<CMatrix> matrices;

    int p() const { return matrices.empty() ? 0 : static_cast<int>(matrices.front().rows()); }
    std::size_t size() const { return matrices.size(); }
};

/// Factor A(theta) of the windowed estimator: S_hat(theta) = (1/N) A^H A.
struct SpectralFactor {
    double theta = 0.0;
    CMatrix a;  // (2N-1) x p
};

/// Frequency-domain regression data for one node after the 1 <-> node swap:
/// y regressed on X, both masked DFT columns.
struct MaskedRegression {
    double theta = 0.0;
    CVector y;   // 2N-1
    CMatrix x;   // (2N-1) x (p-1)
    int node = 0;  // 0-based regressed component
};

/// Uniform grid theta_t = t/T, t = 0..T-1.
std::vector<double> uniform_grid(Index t);

/// Shared default grid size for sup-over-theta quantities.
Index default_grid_size(Index n);

/// Empirical autocovariance at lag m (Eq.-(10)-style sample average);
/// negative lags return the transpose of the positive-lag estimate.
Matrix empirical_acf(const TimeSeriesBlock& d, Index m);

/// Windowed-ACF spectral estimate on a uniform grid of gridSize points.
/// Uses one FFT per matrix entry when gridSize >= 2N-1, direct summation
/// otherwise.
SdmGrid bt_sdm(const TimeSeriesBlock& d, const WindowSpec& w, Index gridSize);

/// Same estimator evaluated by direct summation at arbitrary frequencies.
SdmGrid bt_sdm_at(const TimeSeriesBlock& d, const WindowSpec& w, const std::vector<double>& thetas);

/// Factor with clamped spectral mask; warns on stderr when the clamped mass
/// exceeds 1e-6 of the total mask mass.
SpectralFactor spectral_factor(const TimeSeriesBlock& d, const WindowSpec& w, double theta);

struct RegressionOptions {
    bool normalize = true;  // scale columns by 1/sqrt(N) so the Gram equals the SDM estimate
};

/// Build the per-frequency regression for node r (0-based) from the permuted
/// block; with normalize, (y X)^H (y X) equals the estimator of the permuted
/// process at theta.
MaskedRegression build_masked_regression(const TimeSeriesBlock& d, const WindowSpec& w, int r,
                                         double theta, const RegressionOptions& opts = {});

}  // namespace specgraph
