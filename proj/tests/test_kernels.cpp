#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ftmi/kernels.hpp"

using namespace ftmi;

TEST_CASE("exponential kernel pointwise values") {
    const auto k = KernelSpec::exponential_ou(1.0, 1.0);
    CHECK(eval_kernel(k, 0.7, 0.7) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval_kernel(k, 1.0, 0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(eval_kernel(k, 0.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("sinc kernel uses the normalized convention") {
    const auto k = KernelSpec::sinc_bandlimited(1.0, 5.0);
    CHECK(eval_kernel(k, 0.0, 0.0) == 1.0);
    // zeros of sinc(10 tau) at tau = 0.1, 0.2, ...
    CHECK(eval_kernel(k, 0.1, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(eval_kernel(k, 0.2, 0.0)) < 1e-15);
}

TEST_CASE("kernel symmetry and boundedness over random lags") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    const auto ks = {KernelSpec::sinc_bandlimited(2.0, 3.0),
                     KernelSpec::exponential_ou(1.5, 0.7)};
    for (const auto& k : ks) {
        for (int i = 0; i < 200; ++i) {
            const double t1 = u(rng), t2 = u(rng);
            CHECK(eval_kernel(k, t1, t2) == eval_kernel(k, t2, t1));
            CHECK(std::abs(eval_kernel(k, t1, t2)) <= k.power + 1e-15);
        }
    }
}

TEST_CASE("PSD values") {
    CHECK(eval_psd(KernelSpec::sinc_bandlimited(1.0, 5.0), 0.0) == doctest::Approx(0.1));
    CHECK(eval_psd(KernelSpec::sinc_bandlimited(1.0, 5.0), 5.1) == 0.0);
    CHECK(eval_psd(KernelSpec::exponential_ou(1.0, 1.0), 0.0) == doctest::Approx(2.0));
    CHECK(eval_psd(KernelSpec::exponential_ou(1.0, 1.0), 1e9) < 1e-15);
    CHECK(eval_psd(NoiseSpec::awgn(3.0), 123.4) == doctest::Approx(1.5));
}

TEST_CASE("PSD nonnegative over a frequency sweep") {
    const auto sinc = KernelSpec::sinc_bandlimited(1.0, 5.0);
    const auto ou = KernelSpec::exponential_ou(2.0, 0.5);
    for (double f = -50.0; f <= 50.0; f += 0.37) {
        CHECK(eval_psd(sinc, f) >= 0.0);
        CHECK(eval_psd(ou, f) >= 0.0);
    }
}

TEST_CASE("Parseval: integral of PSD recovers R(0) = P") {
    // Sinc: exactly (P / 2W) * 2W.
    const auto sinc = KernelSpec::sinc_bandlimited(1.0, 5.0);
    CHECK(eval_psd(sinc, 0.0) * 2.0 * sinc.bandwidth == doctest::Approx(1.0).epsilon(1e-12));

    // Exponential: composite Simpson out to a far cutoff plus the analytic
    // tail of 2Pa/(a^2 + 4 pi^2 f^2), which integrates to (2P/pi) atan(...).
    const auto ou = KernelSpec::exponential_ou(1.7, 0.9);
    const double cutoff = 2000.0;
    const int m = 400000;
    const double h = cutoff / m;
    double integral = eval_psd(ou, 0.0) + eval_psd(ou, cutoff);
    for (int i = 1; i < m; ++i)
        integral += (i % 2 ? 4.0 : 2.0) * eval_psd(ou, i * h);
    integral *= h / 3.0;
    const double tail = ou.power / std::numbers::pi *
                        (std::numbers::pi / 2.0 -
                         std::atan(2.0 * std::numbers::pi * cutoff / ou.decay));
    const double total = 2.0 * integral + 2.0 * tail;  // fold negative f
    CHECK(total == doctest::Approx(ou.power).epsilon(1e-6));
}

TEST_CASE("tabulated kernel interpolates and respects symmetry") {
    // Samples of exp(-|tau|) on a fine lag grid.
    std::vector<double> tau, val;
    for (int i = 0; i <= 400; ++i) {
        tau.push_back(i * 0.01);
        val.push_back(std::exp(-tau.back()));
    }
    const auto k = KernelSpec::tabulated(tau, val);
    CHECK(k.power == doctest::Approx(1.0));
    CHECK(eval_kernel(k, 0.0, 0.0) == doctest::Approx(1.0));
    CHECK(eval_kernel(k, 1.234, 0.0) == doctest::Approx(std::exp(-1.234)).epsilon(1e-6));
    CHECK(eval_kernel(k, 0.0, 1.234) == eval_kernel(k, 1.234, 0.0));
    // monotone interpolation cannot overshoot R(0)
    for (double t = 0.0; t < 4.0; t += 0.0137)
        CHECK(std::abs(eval_kernel(k, t, 0.0)) <= 1.0 + 1e-12);
}

TEST_CASE("tabulated kernel error paths") {
    const auto k = KernelSpec::tabulated({0.0, 1.0}, {1.0, 0.5});
    CHECK_THROWS_AS(eval_kernel(k, 5.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(eval_psd(k, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(KernelSpec::tabulated({0.5, 1.0}, {1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(KernelSpec::tabulated({0.0, 0.0}, {1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("spec validation rejects nonpositive parameters") {
    CHECK_THROWS_AS(KernelSpec::exponential_ou(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(KernelSpec::exponential_ou(1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(KernelSpec::sinc_bandlimited(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseSpec::awgn(0.0), std::invalid_argument);
}
