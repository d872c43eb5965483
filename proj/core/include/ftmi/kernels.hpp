#ifndef FTMI_KERNELS_HPP
#define FTMI_KERNELS_HPP

#include <string>
#include <vector>

namespace ftmi {

enum class KernelKind { SincBandlimited, ExponentialOU, Tabulated };

/// Stationary autocorrelation kernel R(tau) with, where available, a
/// closed-form two-sided power spectral density.
///
///   SincBandlimited:  R(tau) = P * sinc(2 W tau),  sinc(x) = sin(pi x)/(pi x)
///   ExponentialOU:    R(tau) = P * exp(-alpha |tau|)
///   Tabulated:        monotone cubic interpolation of (tau, R) samples,
///                     extended to negative lags by symmetry
struct KernelSpec {
    KernelKind kind = KernelKind::ExponentialOU;
    double power = 1.0;      // P = R(0)
    double bandwidth = 0.0;  // W [Hz], SincBandlimited only
    double decay = 0.0;      // alpha [1/s], ExponentialOU only

    // Tabulated samples at nonnegative lags, tau strictly increasing from 0.
    std::vector<double> tab_tau;
    std::vector<double> tab_value;

    static KernelSpec sinc_bandlimited(double P, double W);
    static KernelSpec exponential_ou(double P, double alpha);
    static KernelSpec tabulated(std::vector<double> tau, std::vector<double> value);
};

struct NoiseSpec {
    bool is_awgn = false;
    double n0 = 0.0;     // two-sided PSD is n0/2
    KernelSpec kernel;   // colored case

    static NoiseSpec awgn(double n0);
    static NoiseSpec colored(KernelSpec kernel);
};

/// R(t1 - t2). Tabulated lookups outside the table range throw
/// std::domain_error.
double eval_kernel(const KernelSpec& spec, double t1, double t2);

/// Two-sided PSD at frequency f [Hz]. Tabulated kernels are unsupported and
/// throw std::invalid_argument.
double eval_psd(const KernelSpec& spec, double f);
double eval_psd(const NoiseSpec& spec, double f);

} // namespace ftmi

#endif
