#ifndef FTMI_MERCER_HPP
#define FTMI_MERCER_HPP

#include <vector>

#include "ftmi/kernels.hpp"

namespace ftmi {

enum class SpectrumMode { AnalyticExponential, Nystrom };

struct EigenPair {
    int k = 0;
    double omega = 0.0;   // rad/s, analytic mode only
    double lambda = 0.0;  // power * seconds
    double z = 0.0;       // normalization constant, analytic mode only
};

/// Ordered eigen-spectrum of the autocorrelation operator on [0, T].
struct MercerSpectrum {
    KernelSpec kernel;
    double T = 0.0;
    SpectrumMode mode = SpectrumMode::AnalyticExponential;
    std::vector<EigenPair> pairs;   // lambda nonincreasing
    int negative_clamped = 0;       // Nystrom roundoff diagnostics

    int truncation() const { return static_cast<int>(pairs.size()); }
    double signal_energy() const { return kernel.power * T; }  // tr(M) = PT
    double partial_trace() const;
    double tail_mass() const { return signal_energy() - partial_trace(); }
};

struct TraceReport {
    double partial_sum = 0.0;
    double total = 0.0;      // PT
    double tail_mass = 0.0;  // total - partial_sum
};

/// Unique root of 2 arctan(w/alpha) + w T - k pi on ((k-1)pi/T, k pi/T),
/// residual below 1e-12. Bisection to bracket the root, Newton to polish.
double solve_omega(double alpha, double T, int k);

/// Residual 2 arctan(w/alpha) + w T - k pi evaluated in extended precision.
/// Naive double evaluation loses ~5e-12 to cancellation at k ~ 1e4.
double omega_residual(double alpha, double T, int k, double omega);

/// Closed-form eigenpairs of the exponential kernel: lambda_k =
/// 2 alpha P / (alpha^2 + omega_k^2), eigenfunctions normalized on [0, T].
MercerSpectrum exponential_spectrum(double P, double alpha, double T, int K);

/// Truncation level giving analytic tail estimate 2 alpha T / (pi^2 K)
/// below tail_fraction of PT.
int default_truncation(double alpha, double T, double tail_fraction = 1e-4);

/// Eigenvalues of W^{1/2} K W^{1/2} on an n-point trapezoid grid, decreasing;
/// negative roundoff eigenvalues clamped to zero and counted.
MercerSpectrum nystrom_spectrum(const KernelSpec& kernel, double T, int n);

TraceReport trace(const MercerSpectrum& spectrum);

/// tr(M^2) = sum of lambda_k^2 for the exponential kernel, closed form.
double trace_of_square(double P, double alpha, double T);

/// phi_k(t) = (omega_k cos(omega_k t) + alpha sin(omega_k t)) / Z_k.
/// Analytic mode only; t must lie in [0, T].
double eigenfunction_value(const MercerSpectrum& spectrum, int k, double t);

} // namespace ftmi

#endif
