#pragma once

#include "specgraph/types.hpp"

namespace specgraph {

/// Symmetric lag window w[m] with w[0] = 1. Only the m >= 0 half is stored;
/// w[m] = 0 for |m| >= halfwidth().
struct WindowSpec {
    Vector coeffs;   // coeffs(m) = w[m] for m = 0..halfwidth-1
    double l1norm = 0.0;

    static WindowSpec from_coeffs(Vector oneSided);

    int halfwidth() const { return static_cast<int>(coeffs.size()); }

    double w(Index m) const {
        const Index a = m < 0 ? -m : m;
        return a < coeffs.size() ? coeffs(a) : 0.0;
    }
};

/// Gaussian lag window w[m] = exp(-m^2/scale) truncated to |m| < n.
WindowSpec make_gaussian_window(double scale, Index n);

/// w[0] = 1, all other lags zero.
WindowSpec make_delta_window();

/// DTFT W(theta) = sum_m w[m] e^{-j 2 pi theta m}; real by symmetry. May be
/// negative for truncated windows.
double window_dtft(const WindowSpec& w, double theta);

/// Spectral mask W(theta_f + theta) for f = 1..2N-1, theta_f = (f-1)/(2N-1).
/// Unclamped; negative sidelobe entries are kept as-is.
Vector window_mask(const WindowSpec& w, double theta, Index n);

/// Mask with negative entries clamped to zero; clampedMass collects the
/// absolute mass removed.
Vector window_mask_clamped(const WindowSpec& w, double theta, Index n, double* clampedMass = nullptr);

}  // namespace specgraph
