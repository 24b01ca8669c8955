#include "specgraph/window.hpp"

#include <cmath>
#include <numbers>

#include "specgraph/fft.hpp"

namespace specgraph {

WindowSpec WindowSpec::from_coeffs(Vector oneSided) {
    if (oneSided.size() < 1) throw std::invalid_argument("window: empty coefficient array");
    if (std::abs(oneSided(0) - 1.0) > 1e-12)
        throw std::invalid_argument("window: w[0] must equal 1");
    if (!oneSided.allFinite()) throw std::invalid_argument("window: non-finite coefficient");
    WindowSpec spec;
    spec.coeffs = std::move(oneSided);
    spec.l1norm = spec.coeffs(0);
    for (Index m = 1; m < spec.coeffs.size(); ++m) spec.l1norm += 2.0 * std::abs(spec.coeffs(m));
    return spec;
}

WindowSpec make_gaussian_window(double scale, Index n) {
    if (!(scale > 0.0)) throw std::invalid_argument("make_gaussian_window: scale must be positive");
    if (n < 1) throw std::invalid_argument("make_gaussian_window: N must be positive");
    Vector c(n);
    for (Index m = 0; m < n; ++m) c(m) = std::exp(-static_cast<double>(m) * static_cast<double>(m) / scale);
    return WindowSpec::from_coeffs(std::move(c));
}

WindowSpec make_delta_window() { return WindowSpec::from_coeffs(Vector::Ones(1)); }

double window_dtft(const WindowSpec& w, double theta) {
    double acc = w.coeffs(0);
    for (Index m = 1; m < w.coeffs.size(); ++m)
        acc += 2.0 * w.coeffs(m) * std::cos(2.0 * std::numbers::pi * theta * static_cast<double>(m));
    return acc;
}

Vector window_mask(const WindowSpec& w, double theta, Index n) {
    if (n < 1) throw std::invalid_argument("window_mask: N must be positive");
    if (w.halfwidth() > n)
        throw std::invalid_argument("window_mask: window halfwidth exceeds N");
    const Index m = 2 * n - 1;
    // W(theta_f + theta) = sum_k (w[k] e^{-j2pi theta k}) e^{-j2pi (f-1)k/(2N-1)},
    // one length-(2N-1) DFT of the modulated window sequence.
    CVector seq = CVector::Zero(m);
    for (Index k = 0; k < w.coeffs.size(); ++k) {
        const std::complex<double> v =
            w.coeffs(k) * std::exp(std::complex<double>(0.0, -2.0 * std::numbers::pi * theta * static_cast<double>(k)));
        seq(k) += v;
        if (k > 0) seq(m - k) += std::conj(v);
    }
    return fft::forward(seq).real();
}

Vector window_mask_clamped(const WindowSpec& w, double theta, Index n, double* clampedMass) {
    Vector mask = window_mask(w, theta, n);
    double removed = 0.0;
    for (Index f = 0; f < mask.size(); ++f) {
        if (mask(f) < 0.0) {
            removed += -mask(f);
            mask(f) = 0.0;
        }
    }
    if (clampedMass) *clampedMass = removed;
    return mask;
}

}  // namespace specgraph
