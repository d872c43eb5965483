#ifndef FTMI_GRID_MI_HPP
#define FTMI_GRID_MI_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "ftmi/kernels.hpp"

namespace ftmi {

enum class GridScheme { UniformLeftEndpoint, DyadicNested, Explicit };

/// Sampling instants inside [0, T], strictly increasing.
struct SamplingGrid {
    double T = 0.0;
    std::vector<double> instants;
    GridScheme scheme = GridScheme::Explicit;

    /// t_i = (i-1) T / n for i = 1..n.
    static SamplingGrid uniform_left_endpoint(double T, int n);

    /// Level L is the uniform left-endpoint grid with n = 2^L points, so
    /// level L+1 contains level L as a subset.
    static SamplingGrid dyadic_nested(double T, int level);

    int size() const { return static_cast<int>(instants.size()); }
    bool is_uniform() const { return scheme != GridScheme::Explicit; }
    double spacing() const { return T / static_cast<double>(size()); }
};

enum class CovSource { Signal, Noise, Received };

struct CovarianceMatrix {
    Eigen::MatrixXd mat;
    CovSource source = CovSource::Signal;

    int dim() const { return static_cast<int>(mat.rows()); }
};

enum class MIMethod { GridLogdet, MercerSeries };

struct MIReport {
    double value_nats = 0.0;
    double rate_nats_per_s = 0.0;
    MIMethod method = MIMethod::GridLogdet;
    int terms = 0;              // grid size n, or series truncation K
    double jitter_applied = 0.0;
    double tail_bound_nats = 0.0;  // series mode only
};

CovarianceMatrix build_covariance(const KernelSpec& kernel, const SamplingGrid& grid);

/// AWGN requires a uniform grid; per-sample variance is n0 / (2 Delta) with
/// Delta = T/n, so that grid MI converges to the Mercer series as n grows.
CovarianceMatrix build_covariance(const NoiseSpec& noise, const SamplingGrid& grid);

/// (1/2) [logdet(Kx + Kn) - logdet(Kn)] in nats via Cholesky of each matrix.
/// On factorization failure retries once with jitter eps * (trace/n) * I,
/// eps = 1e-12, then throws NumericalError.
MIReport discrete_mi(const CovarianceMatrix& Kx, const CovarianceMatrix& Kn,
                     double window_T);

std::vector<std::pair<int, MIReport>> mi_convergence_sweep(
    const KernelSpec& signal, const NoiseSpec& noise, double T,
    const std::vector<int>& n_values);

} // namespace ftmi

#endif
