#include "specgraph/procgen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace specgraph {

namespace {

constexpr std::complex<double> kJ{0.0, 1.0};

void check_psd_cov(const Matrix& c, const char* what) {
    if (c.rows() != c.cols()) throw std::invalid_argument(std::string(what) + ": must be square");
    if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument(std::string(what) + ": must be symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> es(c);
    if (es.eigenvalues().minCoeff() < 1e-10)
        throw std::invalid_argument(std::string(what) + ": must be positive definite");
}

Matrix gaussian_block(int p, Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix out(p, n);
    for (Index j = 0; j < n; ++j)
        for (int i = 0; i < p; ++i) out(i, j) = normal(rng);
    return out;
}

}  // namespace

ProcessModel ProcessModel::var1(Matrix a, Matrix noiseCov) {
    ProcessModel m;
    m.kind = Kind::Var1;
    m.p = static_cast<int>(a.rows());
    if (a.rows() != a.cols()) throw std::invalid_argument("var1: A must be square");
    m.var1A = std::move(a);
    check_psd_cov(noiseCov, "var1 noise covariance");
    if (noiseCov.rows() != m.p) throw std::invalid_argument("var1: covariance dimension mismatch");
    m.noiseCov = std::move(noiseCov);
    if (m.spectral_radius() >= 1.0)
        throw std::invalid_argument("var1: spectral radius must be below one");
    return m;
}

ProcessModel ProcessModel::var1(Matrix a, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("var1: sigma must be positive");
    const int p = static_cast<int>(a.rows());
    return var1(std::move(a), sigma * sigma * Matrix::Identity(p, p));
}

ProcessModel ProcessModel::fir_ma(Vector g, Matrix c0) {
    ProcessModel m;
    m.kind = Kind::FirMa;
    m.p = static_cast<int>(c0.rows());
    if (g.size() < 1) throw std::invalid_argument("fir_ma: empty filter");
    check_psd_cov(c0, "fir_ma C0");
    m.firCoeffs = std::move(g);
    m.noiseCov = std::move(c0);
    return m;
}

ProcessModel ProcessModel::white_noise(int p, double sigma) {
    if (p < 1) throw std::invalid_argument("white_noise: p must be positive");
    if (!(sigma > 0.0)) throw std::invalid_argument("white_noise: sigma must be positive");
    ProcessModel m;
    m.kind = Kind::WhiteNoise;
    m.p = p;
    m.sigma = sigma;
    return m;
}

double ProcessModel::spectral_radius() const {
    if (kind != Kind::Var1) return 0.0;
    return var1A.eigenvalues().cwiseAbs().maxCoeff();
}

TimeSeriesBlock simulate(const ProcessModel& model, Index n, Index burnIn, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("simulate: N must be positive");
    if (burnIn < 0) throw std::invalid_argument("simulate: burnIn must be nonnegative");
    std::mt19937_64 rng(seed);

    switch (model.kind) {
        case ProcessModel::Kind::WhiteNoise: {
            Matrix d = model.sigma * gaussian_block(model.p, n, rng);
            return TimeSeriesBlock(std::move(d));
        }
        case ProcessModel::Kind::Var1: {
            Eigen::LLT<Matrix> llt(model.noiseCov);
            const Matrix chol = llt.matrixL();
            Vector x = Vector::Zero(model.p);
            Matrix out(model.p, n);
            std::normal_distribution<double> normal(0.0, 1.0);
            Vector z(model.p);
            for (Index t = -burnIn; t < n; ++t) {
                for (int i = 0; i < model.p; ++i) z(i) = normal(rng);
                x = model.var1A * x + chol * z;
                if (t >= 0) out.col(t) = x;
            }
            return TimeSeriesBlock(std::move(out));
        }
        case ProcessModel::Kind::FirMa: {
            Eigen::LLT<Matrix> llt(model.noiseCov);
            const Matrix chol = llt.matrixL();
            const Index taps = model.firCoeffs.size();
            Matrix innov = chol * gaussian_block(model.p, n + taps - 1, rng);
            Matrix out = Matrix::Zero(model.p, n);
            // x[t] = sum_m g[m] e[t-m]; innov column taps-1 is e at output time 0.
            for (Index m = 0; m < taps; ++m)
                out += model.firCoeffs(m) * innov.middleCols(taps - 1 - m, n);
            return TimeSeriesBlock(std::move(out));
        }
    }
    throw std::logic_error("simulate: unknown model kind");
}

Index default_acf_truncation(const ProcessModel& model) {
    switch (model.kind) {
        case ProcessModel::Kind::WhiteNoise:
            return 1;
        case ProcessModel::Kind::FirMa:
            return model.firCoeffs.size();
        case ProcessModel::Kind::Var1: {
            const double rho = model.spectral_radius();
            return 50 * static_cast<Index>(std::ceil(1.0 / (1.0 - rho)));
        }
    }
    throw std::logic_error("default_acf_truncation: unknown model kind");
}

Matrix analytic_acf(const ProcessModel& model, Index m, Index truncation) {
    if (m < 0) return analytic_acf(model, -m, truncation).transpose();
    switch (model.kind) {
        case ProcessModel::Kind::WhiteNoise:
            return m == 0 ? model.sigma * model.sigma * Matrix::Identity(model.p, model.p)
                          : Matrix::Zero(model.p, model.p);
        case ProcessModel::Kind::FirMa: {
            const Index taps = model.firCoeffs.size();
            if (m >= taps) return Matrix::Zero(model.p, model.p);
            double acc = 0.0;
            for (Index k = 0; k + m < taps; ++k) acc += model.firCoeffs(k + m) * model.firCoeffs(k);
            return acc * model.noiseCov;
        }
        case ProcessModel::Kind::Var1: {
            // R[m] = A^m R[0], R[0] = sum_l A^l Sigma_w (A^T)^l.
            if (truncation <= 0) truncation = default_acf_truncation(model);
            Matrix r0 = Matrix::Zero(model.p, model.p);
            Matrix term = model.noiseCov;
            for (Index l = 0; l <= truncation; ++l) {
                r0 += term;
                term = model.var1A * term * model.var1A.transpose();
            }
            Matrix am = Matrix::Identity(model.p, model.p);
            for (Index k = 0; k < m; ++k) am = model.var1A * am;
            return am * r0;
        }
    }
    throw std::logic_error("analytic_acf: unknown model kind");
}

SdmGrid analytic_sdm(const ProcessModel& model, const std::vector<double>& thetas) {
    SdmGrid grid;
    grid.thetas = thetas;
    grid.matrices.reserve(thetas.size());
    const int p = model.p;
    switch (model.kind) {
        case ProcessModel::Kind::WhiteNoise: {
            const CMatrix s = model.sigma * model.sigma * CMatrix::Identity(p, p);
            for (std::size_t i = 0; i < thetas.size(); ++i) grid.matrices.push_back(s);
            return grid;
        }
        case ProcessModel::Kind::FirMa: {
            for (double th : thetas) {
                std::complex<double> g{0.0, 0.0};
                for (Index m = 0; m < model.firCoeffs.size(); ++m)
                    g += model.firCoeffs(m) * std::exp(-kJ * (2.0 * std::numbers::pi * th * static_cast<double>(m)));
                grid.matrices.push_back(std::norm(g) * model.noiseCov.cast<std::complex<double>>());
            }
            return grid;
        }
        case ProcessModel::Kind::Var1: {
            const CMatrix eye = CMatrix::Identity(p, p);
            const CMatrix sw = model.noiseCov.cast<std::complex<double>>();
            for (double th : thetas) {
                const std::complex<double> e = std::exp(-kJ * (2.0 * std::numbers::pi * th));
                const CMatrix b = (eye - model.var1A.cast<std::complex<double>>() * e).inverse();
                grid.matrices.push_back(b * sw * b.adjoint());
            }
            return grid;
        }
    }
    throw std::logic_error("analytic_sdm: unknown model kind");
}

GroundTruth ground_truth_graph(const ProcessModel& model, const std::vector<double>& thetas, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("ground_truth_graph: tol must be positive");
    const SdmGrid sdm = analytic_sdm(model, thetas);
    const int p = model.p;
    const auto nt = static_cast<double>(thetas.size());

    GroundTruth gt;
    gt.graph = Graph(p);
    gt.u = 0.0;
    gt.l = std::numeric_limits<double>::infinity();

    Matrix ratioSq = Matrix::Zero(p, p);  // accumulates |S^-1_rs / S^-1_rr|^2 over the grid
    for (std::size_t t = 0; t < sdm.size(); ++t) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(sdm.matrices[t]);
        const double lo = es.eigenvalues().minCoeff();
        const double hi = es.eigenvalues().maxCoeff();
        gt.l = std::min(gt.l, lo);
        gt.u = std::max(gt.u, hi);
        if (lo <= tol) {
            std::ostringstream msg;
            msg << "ground_truth_graph: SDM nearly singular at theta=" << sdm.thetas[t]
                << " (min eigenvalue " << lo << ")";
            throw std::invalid_argument(msg.str());
        }
        const CMatrix inv = sdm.matrices[t].inverse();
        for (int r = 0; r < p; ++r)
            for (int s = 0; s < p; ++s)
                if (r != s) ratioSq(r, s) += std::norm(inv(r, s) / inv(r, r)) / nt;
    }

    gt.rhoMin = std::numeric_limits<double>::infinity();
    for (int r = 0; r < p; ++r) {
        for (int s = r + 1; s < p; ++s) {
            const double rho = std::sqrt(std::max(ratioSq(r, s), ratioSq(s, r)));
            if (rho > tol) {
                gt.graph.add_edge(r, s);
                gt.rhoMin = std::min({gt.rhoMin, std::sqrt(ratioSq(r, s)), std::sqrt(ratioSq(s, r))});
            }
        }
    }
    if (gt.graph.edges.empty()) gt.rhoMin = 0.0;
    gt.sMax = gt.graph.max_degree();
    gt.muX = acf_moment_absm(model, default_acf_truncation(model));
    return gt;
}

Matrix random_sparse_covariance(int p, int sMax, double coupling, std::uint64_t seed, Graph* plantedGraph) {
    if (p < 2) throw std::invalid_argument("random_sparse_covariance: p must be at least 2");
    if (sMax < 0 || sMax >= p) throw std::invalid_argument("random_sparse_covariance: need 0 <= sMax < p");
    if (!(coupling > 0.0 && coupling < 1.0))
        throw std::invalid_argument("random_sparse_covariance: coupling must lie in (0,1)");

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) pairs.emplace_back(i, j);
    std::mt19937_64 rng(seed);
    std::shuffle(pairs.begin(), pairs.end(), rng);

    Graph planted(p);
    std::vector<int> deg(static_cast<std::size_t>(p), 0);
    for (const auto& [i, j] : pairs) {
        if (deg[static_cast<std::size_t>(i)] < sMax && deg[static_cast<std::size_t>(j)] < sMax) {
            planted.add_edge(i, j);
            ++deg[static_cast<std::size_t>(i)];
            ++deg[static_cast<std::size_t>(j)];
        }
    }

    Matrix k = Matrix::Identity(p, p);
    for (const auto& [i, j] : planted.edges) {
        const double di = std::max(deg[static_cast<std::size_t>(i)], 1);
        const double dj = std::max(deg[static_cast<std::size_t>(j)], 1);
        k(i, j) = k(j, i) = coupling / std::sqrt(di * dj);
    }
    if (plantedGraph) *plantedGraph = planted;
    return k.inverse();
}

namespace {

double moment_sum(const ProcessModel& model, Index truncation, const std::function<double(Index)>& weight) {
    if (truncation <= 0) truncation = default_acf_truncation(model);
    double acc = 0.0;
    // h[0] * ||R[0]||_inf
    acc += weight(0) * analytic_acf(model, 0, truncation).cwiseAbs().maxCoeff();
    for (Index m = 1; m <= truncation; ++m) {
        const double norm = analytic_acf(model, m, truncation).cwiseAbs().maxCoeff();
        acc += 2.0 * weight(m) * norm;  // lags +-m
    }
    return acc;
}

}  // namespace

double acf_moment_absm(const ProcessModel& model, Index truncation) {
    return moment_sum(model, truncation, [](Index m) { return static_cast<double>(m); });
}

double acf_moment_h1(const ProcessModel& model, const WindowSpec& w, Index n, Index truncation) {
    return moment_sum(model, truncation, [&](Index m) {
        if (m >= n) return 1.0;
        return std::abs(1.0 - w.w(m) * (1.0 - static_cast<double>(m) / static_cast<double>(n)));
    });
}

}  // namespace specgraph
