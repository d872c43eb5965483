#include "ftmi/mercer.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ftmi/errors.hpp"
#include "ftmi/grid_mi.hpp"

namespace ftmi {

namespace {

// Characteristic function g(w) = 2 arctan(w/alpha) + w T - k pi; strictly
// increasing in w, with a sign change on ((k-1)pi/T, k pi/T). Evaluated in
// long double: wT and k pi are both O(k pi) and cancel to O(1).
long double char_fn(long double w, long double alpha, long double T, int k) {
    constexpr long double pi_l = 3.14159265358979323846264338327950288L;
    return 2.0L * std::atan(w / alpha) + w * T - k * pi_l;
}

// Normalization: integral over [0,T] of (w cos(wt) + a sin(wt))^2 dt.
double norm_sq(double w, double alpha, double T) {
    const double s2 = std::sin(2.0 * w * T);
    const double sT = std::sin(w * T);
    return 0.5 * (w * w + alpha * alpha) * T +
           (w * w - alpha * alpha) * s2 / (4.0 * w) +
           alpha * sT * sT;
}

} // namespace

double MercerSpectrum::partial_trace() const {
    double s = 0.0;
    for (const auto& p : pairs) s += p.lambda;
    return s;
}

double solve_omega(double alpha, double T, int k) {
    if (alpha <= 0.0 || T <= 0.0 || k < 1)
        throw std::invalid_argument("solve_omega requires alpha > 0, T > 0, k >= 1");

    const long double pi = 3.14159265358979323846264338327950288L;
    long double lo = (k - 1) * pi / T;
    long double hi = k * pi / T;

    // Bisection until the bracket is tight; g is monotone so this cannot fail.
    for (int it = 0; it < 80 && hi - lo > 1e-10L * std::max(1.0L, hi); ++it) {
        const long double mid = 0.5L * (lo + hi);
        if (char_fn(mid, alpha, T, k) < 0.0L) lo = mid;
        else hi = mid;
    }

    // Newton polish; g'(w) = 2 alpha/(alpha^2 + w^2) + T.
    long double w = 0.5L * (lo + hi);
    for (int it = 0; it < 3; ++it) {
        const long double g = char_fn(w, alpha, T, k);
        const long double gp = 2.0L * alpha / (alpha * alpha + w * w) + T;
        const long double next = w - g / gp;
        if (next > lo && next < hi) w = next;
    }
    return static_cast<double>(w);
}

double omega_residual(double alpha, double T, int k, double omega) {
    return static_cast<double>(char_fn(omega, alpha, T, k));
}

int default_truncation(double alpha, double T, double tail_fraction) {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const int K = static_cast<int>(std::ceil(2.0 * alpha * T / (pi2 * tail_fraction)));
    return std::max(K, 1);
}

MercerSpectrum exponential_spectrum(double P, double alpha, double T, int K) {
    if (P <= 0.0 || alpha <= 0.0 || T <= 0.0 || K < 1)
        throw std::invalid_argument("exponential_spectrum requires positive P, alpha, T and K >= 1");

    MercerSpectrum s;
    s.kernel = KernelSpec::exponential_ou(P, alpha);
    s.T = T;
    s.mode = SpectrumMode::AnalyticExponential;
    s.pairs.resize(K);
    for (int k = 1; k <= K; ++k) {
        EigenPair& p = s.pairs[k - 1];
        p.k = k;
        p.omega = solve_omega(alpha, T, k);
        p.lambda = 2.0 * alpha * P / (alpha * alpha + p.omega * p.omega);
        p.z = std::sqrt(norm_sq(p.omega, alpha, T));
    }

    // The index ansatz m = k must yield a strictly decreasing spectrum.
    for (int i = 1; i < K; ++i)
        if (!(s.pairs[i].lambda < s.pairs[i - 1].lambda))
            throw NumericalError("exponential spectrum not strictly decreasing");
    return s;
}

MercerSpectrum nystrom_spectrum(const KernelSpec& kernel, double T, int n) {
    if (T <= 0.0) throw std::invalid_argument("window T must be positive");
    if (n < 2) throw std::invalid_argument("Nystrom needs n >= 2 quadrature points");

    // Trapezoid nodes on [0, T] endpoints included.
    const double h = T / (n - 1);
    Eigen::VectorXd sqrt_w(n);
    for (int i = 0; i < n; ++i)
        sqrt_w(i) = std::sqrt((i == 0 || i == n - 1) ? 0.5 * h : h);

    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i) {
        const double ti = i * h;
        for (int j = 0; j <= i; ++j) {
            const double v = sqrt_w(i) * sqrt_w(j) * eval_kernel(kernel, ti, j * h);
            A(i, j) = v;
            A(j, i) = v;
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("Nystrom eigensolver failed to converge");

    MercerSpectrum s;
    s.kernel = kernel;
    s.T = T;
    s.mode = SpectrumMode::Nystrom;
    s.pairs.resize(n);
    // Eigen returns ascending order.
    for (int i = 0; i < n; ++i) {
        double lam = es.eigenvalues()(n - 1 - i);
        if (lam < 0.0) {
            lam = 0.0;
            ++s.negative_clamped;
        }
        s.pairs[i].k = i + 1;
        s.pairs[i].lambda = lam;
    }
    return s;
}

TraceReport trace(const MercerSpectrum& spectrum) {
    TraceReport r;
    r.partial_sum = spectrum.partial_trace();
    r.total = spectrum.signal_energy();
    r.tail_mass = r.total - r.partial_sum;
    return r;
}

double trace_of_square(double P, double alpha, double T) {
    if (P <= 0.0 || alpha <= 0.0 || T <= 0.0)
        throw std::invalid_argument("trace_of_square requires positive P, alpha, T");
    return (P * P / alpha) * (T - (1.0 - std::exp(-2.0 * alpha * T)) / (2.0 * alpha));
}

double eigenfunction_value(const MercerSpectrum& spectrum, int k, double t) {
    if (spectrum.mode != SpectrumMode::AnalyticExponential)
        throw std::invalid_argument("eigenfunctions are only available in analytic mode");
    if (k < 1 || k > spectrum.truncation())
        throw std::invalid_argument("eigenfunction index out of range");
    if (t < 0.0 || t > spectrum.T)
        throw std::domain_error("eigenfunction queried outside [0, T]");
    const EigenPair& p = spectrum.pairs[k - 1];
    const double alpha = spectrum.kernel.decay;
    return (p.omega * std::cos(p.omega * t) + alpha * std::sin(p.omega * t)) / p.z;
}

} // namespace ftmi
