#pragma once

#include <complex>

#include "specgraph/types.hpp"

namespace specgraph::fft {

/// Forward DFT, X[k] = sum_n x[n] e^{-j 2 pi k n / M}. Any length M >= 1.
CVector forward(const CVector& in);

/// Inverse DFT with 1/M normalization.
CVector inverse(const CVector& in);

/// Forward DFT of a real signal zero-padded to length m; returns length m.
CVector forward_padded(const Vector& in, Index m);

}  // namespace specgraph::fft
