#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ftmi/errors.hpp"
#include "ftmi/mercer.hpp"

using namespace ftmi;

namespace {

// Independent bisection oracle for the characteristic root, long double.
double bisect_omega(double alpha, double T, int k) {
    const long double pi = 3.14159265358979323846264338327950288L;
    long double lo = (k - 1) * pi / T, hi = k * pi / T;
    for (int i = 0; i < 200; ++i) {
        const long double mid = 0.5L * (lo + hi);
        const long double g = 2.0L * std::atan(mid / (long double)alpha) + mid * T - k * pi;
        if (g < 0.0L) lo = mid;
        else hi = mid;
    }
    return static_cast<double>(0.5L * (lo + hi));
}

} // namespace

TEST_CASE("solve_omega matches the bisection oracle") {
    CHECK(solve_omega(1.0, 2.0, 1) == doctest::Approx(bisect_omega(1.0, 2.0, 1)).epsilon(1e-13));
    CHECK(solve_omega(1.0, 2.0, 1) == doctest::Approx(0.8603335890).epsilon(1e-9));
    for (int k : {2, 3, 4, 17, 100})
        CHECK(solve_omega(1.0, 2.0, k) ==
              doctest::Approx(bisect_omega(1.0, 2.0, k)).epsilon(1e-13));
}

TEST_CASE("omega_4 lies in (3pi/2, 2pi) for T=2, alpha=1") {
    const double w4 = solve_omega(1.0, 2.0, 4);
    CHECK(w4 > 1.5 * std::numbers::pi);
    CHECK(w4 < 2.0 * std::numbers::pi);
}

TEST_CASE("large-alpha limit: omega_k -> k pi / T") {
    for (int k : {1, 2, 5})
        CHECK(std::abs(solve_omega(1e8, 2.0, k) - k * std::numbers::pi / 2.0) < 1e-6);
}

TEST_CASE("root residuals and bracket containment") {
    const double alpha = 1.0, T = 2.0;
    for (int k = 1; k <= 10000; k = (k < 128 ? k + 1 : k * 2)) {
        const double w = solve_omega(alpha, T, k);
        CHECK(w > (k - 1) * std::numbers::pi / T);
        CHECK(w < k * std::numbers::pi / T);
        const double res = std::abs(omega_residual(alpha, T, k, w));
        // Rounding omega to double moves the residual by up to
        // g'(w) * ulp(w) / 2, which crosses 1e-12 near k ~ 5e3 for T = 2.
        const double ulp = std::nextafter(w, 2.0 * w) - w;
        const double gp = T + 2.0 * alpha / (alpha * alpha + w * w);
        CHECK(res <= std::max(1e-12, gp * ulp));
        if (k <= 5000) CHECK(res < 1e-12);
    }
}

TEST_CASE("exponential spectrum eigenvalues") {
    const auto s = exponential_spectrum(1.0, 1.0, 2.0, 10);
    const double w1 = s.pairs[0].omega;
    CHECK(s.pairs[0].lambda == doctest::Approx(2.0 / (1.0 + w1 * w1)).epsilon(1e-15));
    CHECK(s.pairs[0].lambda == doctest::Approx(1.1493104).epsilon(1e-6));

    SUBCASE("strictly decreasing") {
        for (std::size_t i = 1; i < s.pairs.size(); ++i)
            CHECK(s.pairs[i].lambda < s.pairs[i - 1].lambda);
    }
    SUBCASE("lambda linear in P") {
        const auto s2 = exponential_spectrum(2.0, 1.0, 2.0, 10);
        for (int i = 0; i < 10; ++i) {
            CHECK(s2.pairs[i].lambda == doctest::Approx(2.0 * s.pairs[i].lambda).epsilon(1e-14));
            CHECK(s2.pairs[i].omega == s.pairs[i].omega);
        }
    }
    SUBCASE("individual bound lambda_k <= 2P/alpha") {
        for (const auto& p : s.pairs) CHECK(p.lambda <= 2.0 + 1e-15);
    }
}

TEST_CASE("trace identity: partial sums increase toward PT") {
    const auto s = exponential_spectrum(1.0, 1.0, 2.0, 1000);
    const TraceReport t = trace(s);
    CHECK(t.total == doctest::Approx(2.0));
    CHECK(t.partial_sum <= t.total);
    CHECK(t.partial_sum >= 0.999 * t.total);
    CHECK(t.tail_mass >= 0.0);

    // tail_mass decreasing in K
    double prev_tail = t.total;
    for (int K : {10, 100, 500}) {
        const auto sk = exponential_spectrum(1.0, 1.0, 2.0, K);
        const double tail = trace(sk).tail_mass;
        CHECK(tail < prev_tail);
        prev_tail = tail;
    }
}

TEST_CASE("trace_of_square closed form") {
    CHECK(trace_of_square(1.0, 1.0, 2.0) ==
          doctest::Approx(2.0 - (1.0 - std::exp(-4.0)) / 2.0).epsilon(1e-15));
    CHECK(trace_of_square(1.0, 1.0, 2.0) == doctest::Approx(1.5091578194).epsilon(1e-9));
    CHECK(trace_of_square(1.0, 1.0, 1e-9) < 1e-8);
    CHECK(trace_of_square(2.0, 1.0, 2.0) ==
          doctest::Approx(4.0 * trace_of_square(1.0, 1.0, 2.0)).epsilon(1e-14));

    SUBCASE("partial sum of lambda_k^2 converges to it") {
        const auto s = exponential_spectrum(1.0, 1.0, 2.0, 10000);
        double sq = 0.0;
        for (const auto& p : s.pairs) sq += p.lambda * p.lambda;
        const double closed = trace_of_square(1.0, 1.0, 2.0);
        CHECK(std::abs(sq - closed) / closed < 1e-6);
    }
}

TEST_CASE("eigenfunctions") {
    const auto s = exponential_spectrum(1.0, 1.0, 2.0, 20);
    const double alpha = 1.0, T = 2.0;

    SUBCASE("boundary conditions via finite differences") {
        const double h = 1e-6;
        for (int k : {1, 2, 5}) {
            const double d0 = (eigenfunction_value(s, k, h) - eigenfunction_value(s, k, 0.0)) / h;
            CHECK(d0 == doctest::Approx(alpha * eigenfunction_value(s, k, 0.0)).epsilon(1e-4));
            const double dT =
                (eigenfunction_value(s, k, T) - eigenfunction_value(s, k, T - h)) / h;
            CHECK(dT == doctest::Approx(-alpha * eigenfunction_value(s, k, T)).epsilon(1e-4));
        }
    }
    SUBCASE("orthonormal Gram matrix under fine quadrature") {
        // Simpson on a 1e4-interval grid
        const int m = 10000;
        const double h = T / m;
        for (int a = 1; a <= 20; ++a) {
            for (int b = a; b <= 20; ++b) {
                double acc = eigenfunction_value(s, a, 0.0) * eigenfunction_value(s, b, 0.0) +
                             eigenfunction_value(s, a, T) * eigenfunction_value(s, b, T);
                for (int i = 1; i < m; ++i)
                    acc += (i % 2 ? 4.0 : 2.0) * eigenfunction_value(s, a, i * h) *
                           eigenfunction_value(s, b, i * h);
                acc *= h / 3.0;
                CHECK(std::abs(acc - (a == b ? 1.0 : 0.0)) < 1e-8);
            }
        }
    }
    SUBCASE("kernel reconstruction error shrinks with K") {
        // Convergence is O(1/K), dominated by the diagonal near the window
        // edges; measured 1.63e-3 at K=500 and 8.1e-4 at K=1000.
        double prev_err = 1e9;
        for (int K : {50, 200, 500, 1000}) {
            const auto sk = exponential_spectrum(1.0, 1.0, 2.0, K);
            double max_err = 0.0;
            for (int i = 0; i < 20; ++i) {
                for (int j = 0; j < 20; ++j) {
                    const double t1 = i * T / 19.0, t2 = j * T / 19.0;
                    double rec = 0.0;
                    for (const auto& p : sk.pairs)
                        rec += p.lambda * eigenfunction_value(sk, p.k, t1) *
                               eigenfunction_value(sk, p.k, t2);
                    max_err = std::max(max_err, std::abs(std::exp(-std::abs(t1 - t2)) - rec));
                }
            }
            CHECK(max_err < prev_err);
            prev_err = max_err;
            if (K == 500) CHECK(max_err < 2e-3);
            if (K == 1000) CHECK(max_err < 1e-3);
        }
    }
    SUBCASE("error paths") {
        CHECK_THROWS_AS(eigenfunction_value(s, 1, -0.1), std::domain_error);
        CHECK_THROWS_AS(eigenfunction_value(s, 1, 2.1), std::domain_error);
        CHECK_THROWS_AS(eigenfunction_value(s, 21, 1.0), std::invalid_argument);
        const auto ny = nystrom_spectrum(KernelSpec::exponential_ou(1.0, 1.0), 2.0, 16);
        CHECK_THROWS_AS(eigenfunction_value(ny, 1, 1.0), std::invalid_argument);
    }
}

TEST_CASE("Nystrom spectrum") {
    const auto ou = KernelSpec::exponential_ou(1.0, 1.0);

    SUBCASE("matches the analytic spectrum to 0.1% at n = 800") {
        const auto analytic = exponential_spectrum(1.0, 1.0, 2.0, 10);
        const auto ny = nystrom_spectrum(ou, 2.0, 800);
        for (int i = 0; i < 10; ++i)
            CHECK(std::abs(ny.pairs[i].lambda - analytic.pairs[i].lambda) /
                      analytic.pairs[i].lambda < 1e-3);
    }
    SUBCASE("quadrature refinement roughly halves the error") {
        const double exact = exponential_spectrum(1.0, 1.0, 2.0, 1).pairs[0].lambda;
        const double e400 = std::abs(nystrom_spectrum(ou, 2.0, 400).pairs[0].lambda - exact);
        const double e800 = std::abs(nystrom_spectrum(ou, 2.0, 800).pairs[0].lambda - exact);
        CHECK(e800 < 0.75 * e400);
    }
    SUBCASE("trace of the discrete problem approximates PT") {
        const auto ny = nystrom_spectrum(ou, 2.0, 800);
        CHECK(trace(ny).partial_sum == doctest::Approx(2.0).epsilon(5e-3));
    }
    SUBCASE("constant-zero tabulated kernel has an all-zero spectrum") {
        const auto zero = KernelSpec::tabulated({0.0, 1.0, 2.0}, {0.0, 0.0, 0.0});
        const auto ny = nystrom_spectrum(zero, 2.0, 32);
        for (const auto& p : ny.pairs) CHECK(p.lambda == 0.0);
    }
    SUBCASE("sinc kernel shows the 2WT spectral knee") {
        const auto sinc = KernelSpec::sinc_bandlimited(1.0, 5.0);
        const auto ny = nystrom_spectrum(sinc, 1.0, 600);  // 2WT = 10
        const double l1 = ny.pairs[0].lambda;
        CHECK(ny.pairs[10].lambda / l1 < ny.pairs[8].lambda / l1);
        // sharp decay after the knee
        CHECK(ny.pairs[8].lambda / l1 > 0.1);
        CHECK(ny.pairs[14].lambda / l1 < 0.01);
    }
    SUBCASE("eigenvalues nonincreasing and nonnegative") {
        const auto ny = nystrom_spectrum(KernelSpec::sinc_bandlimited(1.0, 5.0), 1.0, 200);
        for (std::size_t i = 1; i < ny.pairs.size(); ++i) {
            CHECK(ny.pairs[i].lambda <= ny.pairs[i - 1].lambda);
            CHECK(ny.pairs[i].lambda >= 0.0);
        }
    }
    CHECK_THROWS_AS(nystrom_spectrum(ou, 2.0, 1), std::invalid_argument);
}

TEST_CASE("default truncation meets the tail target") {
    const int K = default_truncation(1.0, 2.0);
    const auto s = exponential_spectrum(1.0, 1.0, 2.0, K);
    CHECK(trace(s).tail_mass / 2.0 < 1.2e-4);  // analytic estimate is approximate
}
