#include "specgraph/analysis.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <random>

#include "specgraph/parallel.hpp"

namespace specgraph {

void TheoryParams::validate() const {
    if (n < 1) throw std::invalid_argument("TheoryParams: N must be positive");
    if (p < 2) throw std::invalid_argument("TheoryParams: p must be at least 2");
    if (sMax < 1) throw std::invalid_argument("TheoryParams: sMax must be positive");
    if (!(rhoMin > 0.0)) throw std::invalid_argument("TheoryParams: rhoMin must be positive");
    if (!(u >= 1.0)) throw std::invalid_argument("TheoryParams: U must be at least 1 after normalization");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("TheoryParams: delta must lie in (0,1)");
    if (!(windowL1 > 0.0)) throw std::invalid_argument("TheoryParams: windowL1 must be positive");
    if (muH1 < 0.0) throw std::invalid_argument("TheoryParams: muH1 must be nonnegative");
}

double sup_estimation_error(const SdmGrid& est, const SdmGrid& truth) {
    if (est.size() != truth.size() || est.p() != truth.p())
        throw std::invalid_argument("sup_estimation_error: grid mismatch");
    for (std::size_t t = 0; t < est.size(); ++t)
        if (std::abs(est.thetas[t] - truth.thetas[t]) > 1e-12)
            throw std::invalid_argument("sup_estimation_error: grid mismatch");
    double sup = 0.0;
    for (std::size_t t = 0; t < est.size(); ++t)
        sup = std::max(sup, (est.matrices[t] - truth.matrices[t]).cwiseAbs().maxCoeff());
    return sup;
}

namespace {

double n_condition_margin(const TheoryParams& tp, BoundVariant variant, Index n) {
    const double s = tp.sMax;
    const double lhs = static_cast<double>(n) * std::pow(tp.rhoMin / 256.0, 2.0) /
                           (8.0 * s * s * s * tp.windowL1 * tp.windowL1 * std::pow(tp.u, 4.0)) -
                       std::log(2.0 * static_cast<double>(n));
    const double exponent = variant == BoundVariant::FullGraph ? 3.0 : 2.0;
    const double rhs = std::log(2.0 * std::pow(static_cast<double>(tp.p), exponent) / tp.delta);
    return lhs - rhs;
}

bool moment_condition(const TheoryParams& tp) {
    return tp.muH1 <= tp.rhoMin / (256.0 * tp.u * std::pow(static_cast<double>(tp.sMax), 1.5));
}

}  // namespace

BoundCheck theorem_bound_check(const TheoryParams& tp, BoundVariant variant) {
    tp.validate();
    BoundCheck out;
    out.marginN = n_condition_margin(tp, variant, tp.n);
    out.momentOk = moment_condition(tp);
    out.satisfied = out.marginN >= 0.0 && out.momentOk;
    return out;
}

Index crossover_sample_size(TheoryParams tp, BoundVariant variant) {
    tp.n = 1;
    tp.validate();
    if (!moment_condition(tp))
        throw std::invalid_argument("crossover_sample_size: moment condition fails for all N");
    Index hi = 1;
    while (n_condition_margin(tp, variant, hi) < 0.0) {
        if (hi > (Index{1} << 60)) throw std::runtime_error("crossover_sample_size: no crossover found");
        hi *= 2;
    }
    Index lo = hi / 2;  // margin(lo) < 0 unless hi == 1
    if (hi == 1) return 1;
    // For N at the crossover the left side is increasing, so the satisfied
    // set is an upper ray and bisection applies.
    while (hi - lo > 1) {
        const Index mid = lo + (hi - lo) / 2;
        if (n_condition_margin(tp, variant, mid) >= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

bool compatibility_condition_check(double e, int sMax) {
    if (e < 0.0) throw std::invalid_argument("compatibility_condition_check: E must be nonnegative");
    if (sMax < 1) throw std::invalid_argument("compatibility_condition_check: sMax must be positive");
    return e <= 1.0 / (32.0 * static_cast<double>(sMax));
}

namespace {

double binomial_slack(double bound, int trials) {
    return 3.0 * std::sqrt(std::max(bound * (1.0 - bound), 0.0) / trials);
}

}  // namespace

McCheckResult mc_sdm_tail_check(const ProcessModel& model, const WindowSpec& w, Index n, double nu,
                                int trials, std::uint64_t seed) {
    if (!(nu > 0.0 && nu < 0.5)) throw std::invalid_argument("mc_sdm_tail_check: need 0 < nu < 1/2");
    if (trials < 1) throw std::invalid_argument("mc_sdm_tail_check: trials must be positive");

    const Index gridSize = default_grid_size(n);
    const auto thetas = uniform_grid(gridSize);
    SdmGrid truth = analytic_sdm(model, thetas);

    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& s : truth.matrices) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
        lo = std::min(lo, es.eigenvalues().minCoeff());
        hi = std::max(hi, es.eigenvalues().maxCoeff());
    }
    if (!(lo > 0.0)) throw std::invalid_argument("mc_sdm_tail_check: SDM not positive definite on grid");
    // Footnote-2 normalization: scale the process so L = 1.
    const double scale = 1.0 / lo;
    const double u = hi / lo;
    for (auto& s : truth.matrices) s *= scale;

    const double muH1 = scale * acf_moment_h1(model, w, n, default_acf_truncation(model));
    const double threshold = nu + muH1;

    std::atomic<int> exceed{0};
    parallel_for(trials, [&](Index trial) {
        TimeSeriesBlock d = simulate(model, n, 1000, seed + static_cast<std::uint64_t>(trial));
        d.values *= std::sqrt(scale);
        const SdmGrid est = bt_sdm(d, w, gridSize);
        if (sup_estimation_error(est, truth) >= threshold) exceed.fetch_add(1);
    });

    McCheckResult out;
    out.muH1 = muH1;
    out.empiricalProb = static_cast<double>(exceed.load()) / trials;
    const double exponent = -static_cast<double>(n) * nu * nu / (8.0 * w.l1norm * w.l1norm * u * u) +
                            2.0 * std::log(static_cast<double>(model.p)) +
                            std::log(2.0 * static_cast<double>(n));
    out.bound = std::min(1.0, 2.0 * std::exp(exponent));
    out.passed = out.empiricalProb <= out.bound + binomial_slack(out.bound, trials);
    return out;
}

McCheckResult mc_quadratic_form_check(const Matrix& cz, const Matrix& q, double nu, int trials,
                                      std::uint64_t seed) {
    if (!(nu > 0.0 && nu < 0.5)) throw std::invalid_argument("mc_quadratic_form_check: need 0 < nu < 1/2");
    if (trials < 1) throw std::invalid_argument("mc_quadratic_form_check: trials must be positive");
    const Index n = q.rows();
    if (q.cols() != n) throw std::invalid_argument("mc_quadratic_form_check: Q must be square");
    if (cz.rows() != 2 * n || cz.cols() != 2 * n)
        throw std::invalid_argument("mc_quadratic_form_check: Cz must be 2N x 2N");
    if ((cz - cz.transpose()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("mc_quadratic_form_check: Cz must be symmetric");

    Eigen::SelfAdjointEigenSolver<Matrix> es(cz);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument("mc_quadratic_form_check: Cz must be positive semidefinite");
    const Matrix sqrtCz =
        es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();

    const double lambdaMax = std::max(
        Eigen::SelfAdjointEigenSolver<Matrix>(cz.topLeftCorner(n, n)).eigenvalues().cwiseAbs().maxCoeff(),
        Eigen::SelfAdjointEigenSolver<Matrix>(cz.bottomRightCorner(n, n)).eigenvalues().cwiseAbs().maxCoeff());
    const double lambdaPrime = q.jacobiSvd().singularValues()(0);

    // E{y^T Q x} = sum_ij Q_ij E{y_i x_j}
    const Matrix cyx = cz.bottomLeftCorner(n, n);
    const double mean = (q.cwiseProduct(cyx)).sum();

    std::atomic<int> exceed{0};
    parallel_for(trials, [&](Index trial) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(trial));
        std::normal_distribution<double> normal(0.0, 1.0);
        Vector v(2 * n);
        for (Index i = 0; i < 2 * n; ++i) v(i) = normal(rng);
        const Vector z = sqrtCz * v;
        const double val = z.tail(n).dot(q * z.head(n));
        if (std::abs(val - mean) >= static_cast<double>(n) * nu) exceed.fetch_add(1);
    });

    McCheckResult out;
    out.empiricalProb = static_cast<double>(exceed.load()) / trials;
    const double denom = 8.0 * std::max(lambdaPrime * lambdaPrime * lambdaMax * lambdaMax, 1.0);
    out.bound = std::min(1.0, 2.0 * std::exp(-static_cast<double>(n) * nu * nu / denom));
    out.passed = out.empiricalProb <= out.bound + binomial_slack(out.bound, trials);
    return out;
}

SdmGrid expected_bt_sdm(const ProcessModel& model, const WindowSpec& w, Index n,
                        const std::vector<double>& thetas) {
    constexpr std::complex<double> kJ{0.0, 1.0};
    const Index h = std::min<Index>(w.halfwidth(), n);
    std::vector<Matrix> acf(static_cast<std::size_t>(h));
    for (Index m = 0; m < h; ++m) acf[static_cast<std::size_t>(m)] = analytic_acf(model, m);

    SdmGrid grid;
    grid.thetas = thetas;
    grid.matrices.reserve(thetas.size());
    for (double th : thetas) {
        CMatrix s = w.coeffs(0) * acf[0].cast<std::complex<double>>();
        for (Index m = 1; m < h; ++m) {
            const double taper = w.coeffs(m) * (1.0 - static_cast<double>(m) / static_cast<double>(n));
            const std::complex<double> e = std::exp(-kJ * (2.0 * std::numbers::pi * th * static_cast<double>(m)));
            s += taper * (acf[static_cast<std::size_t>(m)].cast<std::complex<double>>() * e +
                          acf[static_cast<std::size_t>(m)].transpose().cast<std::complex<double>>() * std::conj(e));
        }
        grid.matrices.push_back(std::move(s));
    }
    return grid;
}

}  // namespace specgraph
