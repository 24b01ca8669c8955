#pragma once

#include <cstdint>
#include <vector>

#include "specgraph/spectral.hpp"
#include "specgraph/types.hpp"

namespace specgraph {

/// Synthetic stationary Gaussian process with a known spectral density.
struct ProcessModel {
    enum class Kind { Var1, FirMa, WhiteNoise };

    Kind kind = Kind::WhiteNoise;
    int p = 1;
    Matrix var1A;      // Var1 only
    Matrix noiseCov;   // Var1 innovation covariance / FirMa C0
    Vector firCoeffs;  // FirMa filter taps g[0..L-1]
    double sigma = 1.0;  // WhiteNoise only

    static ProcessModel var1(Matrix a, Matrix noiseCov);
    static ProcessModel var1(Matrix a, double sigma);
    static ProcessModel fir_ma(Vector g, Matrix c0);
    static ProcessModel white_noise(int p, double sigma);

    double spectral_radius() const;  // Var1 only
};

/// Ground-truth quantities derived from the analytic spectral density.
struct GroundTruth {
    Graph graph;
    double rhoMin = 0.0;   // min over present edges of the L2 ratio functional
    int sMax = 0;
    double u = 0.0;        // max grid eigenvalue
    double l = 0.0;        // min grid eigenvalue
    double muX = 0.0;      // sum_m |m| ||R[m]||_inf
};

/// Simulate N samples; Var1 starts from zero and discards burnIn samples.
/// Deterministic given seed.
TimeSeriesBlock simulate(const ProcessModel& model, Index n, Index burnIn, std::uint64_t seed);

/// Exact autocovariance R[m]; Var1 uses the truncated matrix power series.
Matrix analytic_acf(const ProcessModel& model, Index m, Index truncation = 0);

/// Exact spectral density on the given frequencies.
SdmGrid analytic_sdm(const ProcessModel& model, const std::vector<double>& thetas);

/// Edges from the inverse analytic SDM on the grid, plus the constants the
/// consistency analysis needs.
GroundTruth ground_truth_graph(const ProcessModel& model, const std::vector<double>& thetas, double tol);

/// Covariance C0 = K^{-1} with K = I + coupling * D^{-1/2} M D^{-1/2} for a
/// random adjacency M of maximum degree <= sMax; the inverse's support equals
/// M's support. Returns C0; plantedGraph receives M when non-null.
Matrix random_sparse_covariance(int p, int sMax, double coupling, std::uint64_t seed,
                                Graph* plantedGraph = nullptr);

/// ACF moment with weight |m|.
double acf_moment_absm(const ProcessModel& model, Index truncation);

/// ACF moment with the bias weight h1[m] = |1 - w[m](1-|m|/N)| for |m| < N,
/// 1 otherwise.
double acf_moment_h1(const ProcessModel& model, const WindowSpec& w, Index n, Index truncation);

/// Default moment truncation: exact support for FirMa/WhiteNoise, geometric
/// tail margin for Var1.
Index default_acf_truncation(const ProcessModel& model);

}  // namespace specgraph
