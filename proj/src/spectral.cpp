#include "specgraph/spectral.hpp"

#include <cmath>
#include <complex>
#include <iostream>
#include <numbers>

#include "specgraph/fft.hpp"

namespace specgraph {

namespace {

constexpr std::complex<double> kJ{0.0, 1.0};

// R_hat[m] for m = 0..N-1. Direct products for short blocks, FFT
// cross-correlation for long ones; both evaluate the same sums.
std::vector<Matrix> empirical_acf_block(const TimeSeriesBlock& d) {
    const int p = d.p();
    const Index n = d.n();
    std::vector<Matrix> acf(static_cast<std::size_t>(n));
    if (n <= 512) {
        for (Index m = 0; m < n; ++m)
            acf[static_cast<std::size_t>(m)] =
                d.values.rightCols(n - m) * d.values.leftCols(n - m).transpose() / static_cast<double>(n);
        return acf;
    }
    const Index m2 = 2 * n - 1;
    std::vector<CVector> dfts(static_cast<std::size_t>(p));
    for (int r = 0; r < p; ++r)
        dfts[static_cast<std::size_t>(r)] = fft::forward_padded(d.values.row(r).transpose(), m2);
    for (Index m = 0; m < n; ++m) acf[static_cast<std::size_t>(m)].setZero(p, p);
    CVector prod(m2);
    for (int r = 0; r < p; ++r) {
        for (int t = 0; t < p; ++t) {
            prod = dfts[static_cast<std::size_t>(r)].cwiseProduct(dfts[static_cast<std::size_t>(t)].conjugate());
            CVector corr = fft::inverse(prod);
            for (Index m = 0; m < n; ++m)
                acf[static_cast<std::size_t>(m)](r, t) = corr(m).real() / static_cast<double>(n);
        }
    }
    return acf;
}

CMatrix bt_at_theta(const std::vector<Matrix>& acf, const WindowSpec& w, double theta) {
    const int p = static_cast<int>(acf.front().rows());
    const Index n = static_cast<Index>(acf.size());
    CMatrix s = w.coeffs(0) * acf[0].cast<std::complex<double>>();
    const Index h = std::min<Index>(w.halfwidth(), n);
    for (Index m = 1; m < h; ++m) {
        const std::complex<double> e = std::exp(-kJ * (2.0 * std::numbers::pi * theta * static_cast<double>(m)));
        s.noalias() += w.coeffs(m) * (acf[static_cast<std::size_t>(m)].cast<std::complex<double>>() * e +
                                      acf[static_cast<std::size_t>(m)].transpose().cast<std::complex<double>>() * std::conj(e));
    }
    return s;
}

}  // namespace

std::vector<double> uniform_grid(Index t) {
    if (t < 1) throw std::invalid_argument("uniform_grid: size must be positive");
    std::vector<double> out(static_cast<std::size_t>(t));
    for (Index i = 0; i < t; ++i) out[static_cast<std::size_t>(i)] = static_cast<double>(i) / static_cast<double>(t);
    return out;
}

Index default_grid_size(Index n) { return std::max<Index>(256, 2 * (2 * n - 1)); }

Matrix empirical_acf(const TimeSeriesBlock& d, Index m) {
    const Index n = d.n();
    if (m <= -n || m >= n) throw std::out_of_range("empirical_acf: |m| must be below N");
    if (m < 0) return empirical_acf(d, -m).transpose();
    return d.values.rightCols(n - m) * d.values.leftCols(n - m).transpose() / static_cast<double>(n);
}

SdmGrid bt_sdm(const TimeSeriesBlock& d, const WindowSpec& w, Index gridSize) {
    const Index n = d.n();
    if (w.halfwidth() > n) throw std::invalid_argument("bt_sdm: window halfwidth exceeds N");
    if (gridSize < 1) throw std::invalid_argument("bt_sdm: grid size must be positive");
    const int p = d.p();
    const auto acf = empirical_acf_block(d);

    SdmGrid grid;
    grid.thetas = uniform_grid(gridSize);
    grid.matrices.assign(static_cast<std::size_t>(gridSize), CMatrix());

    if (gridSize < 2 * n - 1) {
        for (Index t = 0; t < gridSize; ++t)
            grid.matrices[static_cast<std::size_t>(t)] = bt_at_theta(acf, w, grid.thetas[static_cast<std::size_t>(t)]);
        return grid;
    }

    // One length-gridSize FFT per matrix entry of the windowed ACF sequence.
    for (Index t = 0; t < gridSize; ++t) grid.matrices[static_cast<std::size_t>(t)].setZero(p, p);
    const Index h = std::min<Index>(w.halfwidth(), n);
    CVector seq(gridSize);
    for (int r = 0; r < p; ++r) {
        for (int c = 0; c < p; ++c) {
            seq.setZero();
            seq(0) = w.coeffs(0) * acf[0](r, c);
            for (Index m = 1; m < h; ++m) {
                seq(m) += w.coeffs(m) * acf[static_cast<std::size_t>(m)](r, c);
                seq(gridSize - m) += w.coeffs(m) * acf[static_cast<std::size_t>(m)](c, r);
            }
            CVector vals = fft::forward(seq);
            for (Index t = 0; t < gridSize; ++t) grid.matrices[static_cast<std::size_t>(t)](r, c) = vals(t);
        }
    }
    return grid;
}

SdmGrid bt_sdm_at(const TimeSeriesBlock& d, const WindowSpec& w, const std::vector<double>& thetas) {
    if (w.halfwidth() > d.n()) throw std::invalid_argument("bt_sdm_at: window halfwidth exceeds N");
    const auto acf = empirical_acf_block(d);
    SdmGrid grid;
    grid.thetas = thetas;
    grid.matrices.reserve(thetas.size());
    for (double th : thetas) grid.matrices.push_back(bt_at_theta(acf, w, th));
    return grid;
}

SpectralFactor spectral_factor(const TimeSeriesBlock& d, const WindowSpec& w, double theta) {
    const Index n = d.n();
    if (w.halfwidth() > n) throw std::invalid_argument("spectral_factor: window halfwidth exceeds N");
    const int p = d.p();
    const Index m = 2 * n - 1;

    double clamped = 0.0;
    Vector mask = window_mask_clamped(w, theta, n, &clamped);
    const double total = window_mask(w, theta, n).cwiseAbs().sum();
    if (total > 0.0 && clamped > 1e-6 * total)
        std::cerr << "specgraph: spectral mask clamped mass " << clamped << " exceeds 1e-6 of total " << total
                  << " at theta=" << theta << "\n";

    SpectralFactor factor;
    factor.theta = theta;
    factor.a.resize(m, p);
    const Vector scale = (mask / static_cast<double>(m)).cwiseSqrt();
    for (int r = 0; r < p; ++r)
        factor.a.col(r) = scale.asDiagonal() * fft::forward_padded(d.values.row(r).transpose(), m);
    return factor;
}

MaskedRegression build_masked_regression(const TimeSeriesBlock& d, const WindowSpec& w, int r,
                                         double theta, const RegressionOptions& opts) {
    const int p = d.p();
    if (p < 2) throw std::invalid_argument("build_masked_regression: need p >= 2");
    if (r < 0 || r >= p) throw std::invalid_argument("build_masked_regression: node out of range");

    TimeSeriesBlock permuted = d;
    if (r != 0) {
        permuted.values.row(0) = d.values.row(r);
        permuted.values.row(r) = d.values.row(0);
    }
    SpectralFactor factor = spectral_factor(permuted, w, theta);
    const double scale = opts.normalize ? 1.0 / std::sqrt(static_cast<double>(d.n())) : 1.0;

    MaskedRegression reg;
    reg.theta = theta;
    reg.node = r;
    reg.y = scale * factor.a.col(0);
    reg.x = scale * factor.a.rightCols(p - 1);
    return reg;
}

}  // namespace specgraph
