#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "berrylab/errors.hpp"
#include "berrylab/specfun.hpp"
#include "support/oracles.hpp"

using namespace berrylab;

TEST_CASE("standard normal CDF against a high-precision table") {
    // reference values computed with 40-digit arithmetic
    const struct { double s, phi; } table[] = {
        {0.0, 0.5},
        {0.25, 0.598706325682923724},
        {-0.25, 0.401293674317076276},
        {0.5, 0.691462461274013104},
        {-0.5, 0.308537538725986896},
        {1.0, 0.841344746068542949},
        {-1.0, 0.158655253931457051},
        {1.5, 0.933192798731141934},
        {-1.5, 0.066807201268858066},
        {2.0, 0.977249868051820793},
        {-2.0, 0.0227501319481792072},
        {2.5, 0.993790334674223865},
        {3.0, 0.998650101968369905},
        {-3.0, 0.00134989803163009453},
        {4.0, 0.99996832875816688},
        {-4.0, 0.0000316712418331199213},
        {5.0, 0.999999713348428121},
        {-5.0, 2.86651571879193912e-7},
        {6.0, 0.999999999013412355},
        {-6.0, 9.86587645037698141e-10},
        {8.0, 0.999999999999999378},
        {-8.0, 6.22096057427178412e-16},
    };
    for (const auto& row : table) {
        INFO("s = " << row.s);
        CHECK(std::fabs(std_normal_cdf(row.s) - row.phi) <= 1e-13 * std::max(row.phi, 1e-3));
        CHECK(std::fabs(std_normal_cdf(row.s) - row.phi) <= 1e-13);
    }
}

TEST_CASE("normal CDF is monotone and symmetric") {
    double prev = -1.0;
    for (int i = -80; i <= 80; ++i) {
        const double s = 0.1 * i;
        const double v = std_normal_cdf(s);
        CHECK(v >= prev);
        prev = v;
        CHECK(std_normal_cdf(s) + std_normal_cdf(-s) == Catch::Approx(1.0).margin(1e-15));
    }
}

TEST_CASE("normal CDF round-trips through an independent quantile") {
    for (double p : {1e-6, 1e-3, 0.025, 0.2, 0.5, 0.77, 0.975, 0.999, 1.0 - 1e-7}) {
        const double x = testsupport::normal_quantile(p);
        CHECK(std_normal_cdf(x) == Catch::Approx(p).epsilon(1e-12));
    }
}

TEST_CASE("log_gamma hits exact landmarks") {
    CHECK(log_gamma(1.0) == Catch::Approx(0.0).margin(1e-14));
    CHECK(log_gamma(2.0) == Catch::Approx(0.0).margin(1e-14));
    CHECK(log_gamma(0.5) == Catch::Approx(0.572364942924700087).epsilon(1e-14));
    CHECK(log_gamma(5.0) == Catch::Approx(std::log(24.0)).epsilon(1e-14));
    // factorials through 20 are exact in 64-bit integers
    for (int k = 3; k <= 20; ++k) {
        const double reference = std::log(static_cast<double>(testsupport::factorial_ll(k)));
        CHECK(log_gamma(k + 1.0) == Catch::Approx(reference).epsilon(1e-13));
    }
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-3.0), DomainError);
    // reflection branch
    CHECK(log_gamma(-0.5) == Catch::Approx(std::log(2.0 * std::sqrt(3.14159265358979324))).epsilon(1e-13));
}

TEST_CASE("gaussian absolute moments match the recursion table") {
    const double expect[] = {1.0,
                             0.797884560802865356,
                             1.0,
                             1.59576912160573071,
                             3.0,
                             6.38307648642292285,
                             15.0,
                             38.2984589185375371,
                             105.0,
                             306.387671348300297};
    for (int j = 0; j <= 9; ++j) {
        INFO("j = " << j);
        CHECK(gaussian_abs_moment(j) == Catch::Approx(expect[j]).epsilon(1e-14));
    }
    CHECK_THROWS_AS(gaussian_abs_moment(-1), DomainError);
}

TEST_CASE("stirling bracket sandwiches the exact factorial") {
    const struct { int k; double lo, hi; } frozen[] = {
        {1, 0.922137008895789117, 1.01435070978536803},
        {2, 1.91900435148898316, 2.11090478663788147},
        {5, 118.01916795759008, 129.821084753349088},
        {10, 3598695.61874103592, 3958565.18061513951},
        {20, 2.42278684676113339e+18, 2.66506553143724673e+18},
    };
    for (const auto& row : frozen) {
        const auto br = stirling_bracket(row.k);
        CHECK(br.lower == Catch::Approx(row.lo).epsilon(1e-14));
        CHECK(br.upper == Catch::Approx(row.hi).epsilon(1e-14));
    }
    for (int k = 1; k <= 20; ++k) {
        const auto br = stirling_bracket(k);
        const double exact = static_cast<double>(testsupport::factorial_ll(k));
        CHECK(br.lower <= exact);
        CHECK(exact <= br.upper);
    }
    CHECK_THROWS_AS(stirling_bracket(0), DomainError);
}

TEST_CASE("gaussian moments agree with direct quadrature") {
    // E|G|^j = integral of 2 x^j phi(x) over [0, 12] up to a sub-1e-16 tail
    for (int j = 1; j <= 8; ++j) {
        double acc = 0.0;
        const int cells = 24000;
        const double step = 12.0 / cells;
        for (int i = 0; i < cells; ++i) {
            const double a = i * step;
            const double m = a + 0.5 * step;
            const double b = a + step;
            auto f = [&](double x) { return 2.0 * std::pow(x, j) * std_normal_pdf(x); };
            acc += step * (f(a) + 4.0 * f(m) + f(b)) / 6.0;
        }
        CHECK(gaussian_abs_moment(j) == Catch::Approx(acc).epsilon(1e-10));
    }
}
