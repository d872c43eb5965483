#include "ftmi/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ftmi {

namespace {

double normalized_sinc(double x) {
    if (x == 0.0) return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

void validate(const KernelSpec& spec) {
    switch (spec.kind) {
    case KernelKind::SincBandlimited:
        if (spec.power <= 0.0 || spec.bandwidth <= 0.0)
            throw std::invalid_argument("sinc kernel requires P > 0 and W > 0");
        break;
    case KernelKind::ExponentialOU:
        if (spec.power <= 0.0 || spec.decay <= 0.0)
            throw std::invalid_argument("exponential kernel requires P > 0 and alpha > 0");
        break;
    case KernelKind::Tabulated:
        if (spec.tab_tau.size() < 2 || spec.tab_tau.size() != spec.tab_value.size())
            throw std::invalid_argument("tabulated kernel needs >= 2 (tau, R) samples");
        if (spec.tab_tau.front() != 0.0)
            throw std::invalid_argument("tabulated kernel must start at tau = 0");
        for (std::size_t i = 1; i < spec.tab_tau.size(); ++i)
            if (spec.tab_tau[i] <= spec.tab_tau[i - 1])
                throw std::invalid_argument("tabulated lags must be strictly increasing");
        break;
    }
}

// Fritsch-Carlson monotone cubic slopes. Keeps the interpolant inside the
// data range, so |R(tau)| cannot overshoot R(0).
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> h(n - 1), d(n - 1), m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        d[i] = (y[i + 1] - y[i]) / h[i];
    }
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    // endpoint limiter
    for (std::size_t i : {std::size_t{0}, n - 1}) {
        const double dd = (i == 0) ? d[0] : d[n - 2];
        if (dd == 0.0) m[i] = 0.0;
        else if (m[i] / dd < 0.0) m[i] = 0.0;
        else if (std::abs(m[i]) > 3.0 * std::abs(dd)) m[i] = 3.0 * dd;
    }
    return m;
}

double pchip_eval(const std::vector<double>& x, const std::vector<double>& y, double q) {
    const std::vector<double> slopes = pchip_slopes(x, y);
    auto it = std::upper_bound(x.begin(), x.end(), q);
    std::size_t i = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    if (i + 1 >= x.size()) i = x.size() - 2;
    const double h = x[i + 1] - x[i];
    const double t = (q - x[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y[i] + h10 * h * slopes[i] + h01 * y[i + 1] + h11 * h * slopes[i + 1];
}

} // namespace

KernelSpec KernelSpec::sinc_bandlimited(double P, double W) {
    KernelSpec s;
    s.kind = KernelKind::SincBandlimited;
    s.power = P;
    s.bandwidth = W;
    validate(s);
    return s;
}

KernelSpec KernelSpec::exponential_ou(double P, double alpha) {
    KernelSpec s;
    s.kind = KernelKind::ExponentialOU;
    s.power = P;
    s.decay = alpha;
    validate(s);
    return s;
}

KernelSpec KernelSpec::tabulated(std::vector<double> tau, std::vector<double> value) {
    KernelSpec s;
    s.kind = KernelKind::Tabulated;
    s.tab_tau = std::move(tau);
    s.tab_value = std::move(value);
    validate(s);
    s.power = s.tab_value.front();
    return s;
}

NoiseSpec NoiseSpec::awgn(double n0) {
    if (n0 <= 0.0) throw std::invalid_argument("AWGN requires n0 > 0");
    NoiseSpec n;
    n.is_awgn = true;
    n.n0 = n0;
    return n;
}

NoiseSpec NoiseSpec::colored(KernelSpec kernel) {
    validate(kernel);
    NoiseSpec n;
    n.is_awgn = false;
    n.kernel = std::move(kernel);
    return n;
}

double eval_kernel(const KernelSpec& spec, double t1, double t2) {
    const double tau = t1 - t2;
    switch (spec.kind) {
    case KernelKind::SincBandlimited:
        return spec.power * normalized_sinc(2.0 * spec.bandwidth * tau);
    case KernelKind::ExponentialOU:
        return spec.power * std::exp(-spec.decay * std::abs(tau));
    case KernelKind::Tabulated: {
        const double q = std::abs(tau);
        if (q > spec.tab_tau.back())
            throw std::domain_error("tabulated kernel queried outside lag range");
        return pchip_eval(spec.tab_tau, spec.tab_value, q);
    }
    }
    throw std::logic_error("unreachable kernel kind");
}

double eval_psd(const KernelSpec& spec, double f) {
    switch (spec.kind) {
    case KernelKind::SincBandlimited:
        return (std::abs(f) <= spec.bandwidth) ? spec.power / (2.0 * spec.bandwidth) : 0.0;
    case KernelKind::ExponentialOU: {
        const double w = 2.0 * std::numbers::pi * f;
        return 2.0 * spec.power * spec.decay / (spec.decay * spec.decay + w * w);
    }
    case KernelKind::Tabulated:
        throw std::invalid_argument("tabulated kernels have no analytic PSD");
    }
    throw std::logic_error("unreachable kernel kind");
}

double eval_psd(const NoiseSpec& spec, double f) {
    if (spec.is_awgn) return spec.n0 / 2.0;
    return eval_psd(spec.kernel, f);
}

} // namespace ftmi
