#include "ftmi/grid_mi.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>

#include "ftmi/errors.hpp"

namespace ftmi {

namespace {

constexpr double kJitterEps = 1e-12;

// log det via LLT log-diagonal accumulation; returns false when the
// factorization does not go through.
bool cholesky_logdet(const Eigen::MatrixXd& m, double& out) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) return false;
    out = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    return std::isfinite(out);
}

// Factor with one jitter retry. Reports the jitter actually applied.
double logdet_with_jitter(const Eigen::MatrixXd& m, const char* label, double& jitter_applied) {
    double v;
    if (cholesky_logdet(m, v)) return v;
    const int n = static_cast<int>(m.rows());
    const double jitter = kJitterEps * (m.trace() / n);
    Eigen::MatrixXd jittered = m;
    jittered.diagonal().array() += jitter;
    if (cholesky_logdet(jittered, v)) {
        jitter_applied = std::max(jitter_applied, jitter);
        return v;
    }
    throw NumericalError(std::string("Cholesky failed on ") + label +
                             " even after jitter " + std::to_string(jitter),
                         jitter);
}

} // namespace

SamplingGrid SamplingGrid::uniform_left_endpoint(double T, int n) {
    if (T <= 0.0) throw std::invalid_argument("window T must be positive");
    if (n < 1) throw std::invalid_argument("grid needs at least one point");
    SamplingGrid g;
    g.T = T;
    g.scheme = GridScheme::UniformLeftEndpoint;
    g.instants.resize(n);
    for (int i = 0; i < n; ++i) g.instants[i] = static_cast<double>(i) * T / n;
    return g;
}

SamplingGrid SamplingGrid::dyadic_nested(double T, int level) {
    if (level < 0) throw std::invalid_argument("dyadic level must be >= 0");
    SamplingGrid g = uniform_left_endpoint(T, 1 << level);
    g.scheme = GridScheme::DyadicNested;
    return g;
}

CovarianceMatrix build_covariance(const KernelSpec& kernel, const SamplingGrid& grid) {
    const int n = grid.size();
    CovarianceMatrix cov;
    cov.source = CovSource::Signal;
    cov.mat.resize(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double v = eval_kernel(kernel, grid.instants[i], grid.instants[j]);
            cov.mat(i, j) = v;
            cov.mat(j, i) = v;
        }
    }
    return cov;
}

CovarianceMatrix build_covariance(const NoiseSpec& noise, const SamplingGrid& grid) {
    if (noise.is_awgn) {
        if (!grid.is_uniform())
            throw std::invalid_argument("AWGN discretization requires a uniform grid");
        const double delta = grid.spacing();
        CovarianceMatrix cov;
        cov.source = CovSource::Noise;
        cov.mat = (noise.n0 / (2.0 * delta)) *
                  Eigen::MatrixXd::Identity(grid.size(), grid.size());
        return cov;
    }
    CovarianceMatrix cov = build_covariance(noise.kernel, grid);
    cov.source = CovSource::Noise;
    return cov;
}

MIReport discrete_mi(const CovarianceMatrix& Kx, const CovarianceMatrix& Kn,
                     double window_T) {
    if (Kx.dim() != Kn.dim())
        throw std::invalid_argument("covariance dimensions differ");
    if (window_T <= 0.0) throw std::invalid_argument("window T must be positive");

    MIReport r;
    r.method = MIMethod::GridLogdet;
    r.terms = Kx.dim();

    const Eigen::MatrixXd Ky = Kx.mat + Kn.mat;
    const double ld_y = logdet_with_jitter(Ky, "Kx + Kn", r.jitter_applied);
    const double ld_n = logdet_with_jitter(Kn.mat, "Kn", r.jitter_applied);

    r.value_nats = std::max(0.0, 0.5 * (ld_y - ld_n));
    r.rate_nats_per_s = r.value_nats / window_T;
    return r;
}

std::vector<std::pair<int, MIReport>> mi_convergence_sweep(
    const KernelSpec& signal, const NoiseSpec& noise, double T,
    const std::vector<int>& n_values) {
    for (std::size_t i = 1; i < n_values.size(); ++i)
        if (n_values[i] <= n_values[i - 1])
            throw std::invalid_argument("n_values must be strictly increasing");

    std::vector<std::pair<int, MIReport>> out;
    out.reserve(n_values.size());
    for (int n : n_values) {
        const SamplingGrid grid = SamplingGrid::uniform_left_endpoint(T, n);
        const CovarianceMatrix kx = build_covariance(signal, grid);
        const CovarianceMatrix kn = build_covariance(noise, grid);
        out.emplace_back(n, discrete_mi(kx, kn, T));
    }
    return out;
}

} // namespace ftmi
