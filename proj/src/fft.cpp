#include "specgraph/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace specgraph::fft {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution on the plan's
// own arrays happens under the same lock since plans are short-lived here.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

CVector transform(const CVector& in, int sign) {
    const Index m = in.size();
    CVector out(m);
    if (m == 1) {
        out(0) = in(0);
        return out;
    }
    std::lock_guard<std::mutex> lock(planner_mutex());
    CVector buf = in;
    auto* src = reinterpret_cast<fftw_complex*>(buf.data());
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(m), src, dst, sign, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return out;
}

}  // namespace

CVector forward(const CVector& in) { return transform(in, FFTW_FORWARD); }

CVector inverse(const CVector& in) {
    CVector out = transform(in, FFTW_BACKWARD);
    out /= static_cast<double>(in.size());
    return out;
}

CVector forward_padded(const Vector& in, Index m) {
    if (m < in.size()) throw std::invalid_argument("forward_padded: m < input length");
    CVector buf = CVector::Zero(m);
    buf.head(in.size()) = in.cast<std::complex<double>>();
    return forward(buf);
}

}  // namespace specgraph::fft
