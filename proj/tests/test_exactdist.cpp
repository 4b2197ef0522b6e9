#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "berrylab/errors.hpp"
#include "berrylab/exactdist.hpp"
#include "berrylab/laws.hpp"
#include "berrylab/quadrature.hpp"
#include "berrylab/specfun.hpp"
#include "support/oracles.hpp"

using namespace berrylab;

TEST_CASE("irwin_hall_cdf against the exact rational oracle") {
    SECTION("frozen anchor values") {
        CHECK(irwin_hall_cdf(2, 0.5) == Catch::Approx(0.125).epsilon(1e-14));
        CHECK(irwin_hall_cdf(2, 1.0) == Catch::Approx(0.5).epsilon(1e-14));
        CHECK(irwin_hall_cdf(7, 2.125) ==
              Catch::Approx(0.0356547331999218653).epsilon(1e-13));
        CHECK(irwin_hall_cdf(12, 3.375) ==
              Catch::Approx(0.00375924210680187609).epsilon(1e-12));
    }
    SECTION("eighth-integer sweep through j = 12") {
        for (int j = 1; j <= 12; ++j) {
            for (int p = 1; p < 8 * j; ++p) {
                const auto got = berrylab::detail::irwin_hall_certified(j, p / 8.0);
                const double want =
                    static_cast<double>(testsupport::ih_rational(j, p, 8));
                INFO("j = " << j << ", x = " << p << "/8");
                CHECK(std::fabs(got.value - want) <= got.err + 1e-14);
            }
        }
    }
}

TEST_CASE("irwin_hall_cdf at the stability cap") {
    const double want40 = 0.0661825278269000498;
    const auto got = berrylab::detail::irwin_hall_certified(40, 17.25);
    CHECK(std::fabs(got.value - want40) <= got.err + 1e-13);
    CHECK(got.err < 1e-9);
    for (double x : {12.5, 15.25, 17.25, 19.875, 20.0, 24.75, 31.125}) {
        const auto v = berrylab::detail::irwin_hall_certified(40, x);
        const double want = static_cast<double>(testsupport::ih_longdouble(40, x));
        INFO("x = " << x);
        CHECK(std::fabs(v.value - want) <= v.err + 1e-13);
    }
    CHECK_THROWS_AS(irwin_hall_cdf(41, 20.0), StabilityError);
}

TEST_CASE("irwin_hall_cdf shape properties") {
    SECTION("range and endpoints") {
        CHECK(irwin_hall_cdf(5, -0.1) == 0.0);
        CHECK(irwin_hall_cdf(5, 0.0) == 0.0);
        CHECK(irwin_hall_cdf(5, 5.0) == 1.0);
        CHECK(irwin_hall_cdf(0, -1.0) == 0.0);
        CHECK(irwin_hall_cdf(0, 0.0) == 1.0);
    }
    SECTION("symmetry about j/2") {
        for (int j : {3, 17, 40}) {
            for (double x = 0.25; x < j; x += 0.5) {
                CHECK(irwin_hall_cdf(j, x) + irwin_hall_cdf(j, j - x) ==
                      Catch::Approx(1.0).margin(1e-12));
            }
            CHECK(irwin_hall_cdf(j, 0.5 * j) == Catch::Approx(0.5).margin(1e-12));
        }
    }
    SECTION("monotone in x") {
        double prev = -1.0;
        for (int i = 0; i <= 500; ++i) {
            const double v = irwin_hall_cdf(5, 0.01 * i);
            CHECK(v >= prev - 1e-13);
            prev = v;
        }
    }
    SECTION("moments recovered by integrating the survival function") {
        // E X = j/2 and E X^2 = (j/2)^2 + j/12 for the sum of j uniforms
        const int j = 6;
        auto surv = [&](double x) { return 1.0 - irwin_hall_cdf(j, x); };
        const double m1 = adaptive_simpson(surv, 0.0, 6.0, 1e-11);
        CHECK(m1 == Catch::Approx(3.0).epsilon(1e-9));
        auto xs = [&](double x) { return 2.0 * x * (1.0 - irwin_hall_cdf(j, x)); };
        const double m2 = adaptive_simpson(xs, 0.0, 6.0, 1e-11);
        CHECK(m2 == Catch::Approx(9.5).epsilon(1e-9));
    }
}

TEST_CASE("centered_uniform_sum_cdf is the affine image") {
    CHECK(centered_uniform_sum_cdf(3, 0.5, 0.0) == Catch::Approx(0.5).margin(1e-13));
    CHECK(centered_uniform_sum_cdf(1, 0.8, 0.2) == Catch::Approx(0.75).epsilon(1e-14));
    CHECK(centered_uniform_sum_cdf(2, 0.5, -0.5) == 0.0);
    CHECK(centered_uniform_sum_cdf(2, 0.5, 0.5) == 1.0);
    for (double u : {-0.2, -0.05, 0.0, 0.11, 0.24}) {
        CHECK(centered_uniform_sum_cdf(4, 0.3, u) ==
              Catch::Approx(irwin_hall_cdf(4, u / 0.3 + 2.0)).margin(1e-14));
    }
    CHECK_THROWS_AS(centered_uniform_sum_cdf(2, 0.0, 0.1), DomainError);
}

TEST_CASE("bernoulli_sum_pmf") {
    SECTION("exact small row") {
        const auto pmf = bernoulli_sum_pmf(4, 0.7);
        REQUIRE(pmf.size() == 5);
        const double want[] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
        for (int l = 0; l <= 4; ++l) {
            CHECK(pmf[l].mass == want[l]);
            CHECK(pmf[l].location == Catch::Approx((2.0 * l - 4.0) * 0.7));
        }
    }
    SECTION("log-space start matches exact binomials at n = 51") {
        const auto pmf = bernoulli_sum_pmf(51, 1.0);
        REQUIRE(pmf.size() == 52);
        double binom = 1.0; // C(51, l), exact in double through l = 25
        for (int l = 0; l <= 51; ++l) {
            if (l > 0) binom = binom * (52.0 - l) / l;
            CHECK(pmf[l].mass == Catch::Approx(std::ldexp(binom, -51)).epsilon(1e-12));
        }
    }
    SECTION("mass sums to one across the size regimes") {
        for (int n : {1, 50, 51, 1000, 20001}) {
            const auto pmf = bernoulli_sum_pmf(n, 0.3);
            double mass = 0.0;
            for (const auto& a : pmf) mass += a.mass;
            CHECK(mass == Catch::Approx(1.0).epsilon(1e-11));
        }
    }
    CHECK_THROWS_AS(bernoulli_sum_pmf(-1, 1.0), DomainError);
    CHECK_THROWS_AS(bernoulli_sum_pmf(3, 0.0), DomainError);
}

TEST_CASE("SumCdf degenerates to the sign lattice at h = 0") {
    SumCdf F(0.0, 0.5, 4);
    CHECK(F.atom_location() == Catch::Approx(1.0));
    CHECK(F.truncation_order() == 0);
    CHECK(F.tail_mass() == 0.0);
    CHECK(F.support_radius() == Catch::Approx(2.0));
    CHECK(F.eval(0.0).value == Catch::Approx(11.0 / 16).margin(1e-12));
    CHECK(F.eval(-0.5).value == Catch::Approx(5.0 / 16).margin(1e-12));
    const auto lv = F.eval_at_lattice(1);
    CHECK(lv.at.value == Catch::Approx(5.0 / 16).margin(1e-12));
    CHECK(lv.left.value == Catch::Approx(1.0 / 16).margin(1e-12));
    CHECK(F.jump_mass(2) == Catch::Approx(6.0 / 16).epsilon(1e-14));
}

TEST_CASE("SumCdf single factor equals the law itself") {
    SumCdf F(0.5, 0.5, 1);
    const double x = mu_hw_atom_location(0.5, 0.5);
    CHECK(F.eval(-1.15).value == Catch::Approx(0.375).margin(1e-12));
    CHECK(F.eval(0.0).value == Catch::Approx(0.5).margin(1e-12));
    CHECK(F.eval(0.1).value == Catch::Approx(0.55).margin(1e-12));
    CHECK(F.eval(0.25).value == Catch::Approx(0.625).margin(1e-12));
    CHECK(F.eval(0.3).value == Catch::Approx(0.625).margin(1e-12));
    CHECK(F.eval(x).value == Catch::Approx(1.0).margin(1e-12));
    const auto top = F.eval_at_lattice(1);
    CHECK(top.at.value == Catch::Approx(1.0).margin(1e-12));
    CHECK(top.left.value == Catch::Approx(0.625).margin(1e-12));
}

TEST_CASE("SumCdf two-factor jump structure") {
    SumCdf F(0.5, 0.5, 2);
    const double w0 = 0.75 * 0.75; // weight of the pure-sign mixture term
    CHECK(F.jump_mass(1) == Catch::Approx(w0 * 0.5).epsilon(1e-13));
    const auto mid = F.eval_at_lattice(1);
    CHECK(mid.at.value - mid.left.value == Catch::Approx(w0 * 0.5).margin(1e-11));
    // symmetric law: F(0) = 1/2 + jump/2
    CHECK(mid.at.value == Catch::Approx(0.5 + 0.5 * w0 * 0.5).margin(1e-11));
    // right continuity holds exactly at the central lattice point
    CHECK(F.eval(0.0).value == Catch::Approx(mid.at.value).margin(1e-13));
    double jump_total = 0.0;
    for (std::int64_t l = 0; l < F.lattice_count(); ++l) jump_total += F.jump_mass(l);
    CHECK(jump_total == Catch::Approx(w0).epsilon(1e-13));
}

TEST_CASE("SumCdf lattice geometry") {
    SumCdf F(0.5, 0.5, 16);
    CHECK(F.lattice_count() == 17);
    CHECK(F.lattice_point(0) == Catch::Approx(-F.support_radius()));
    CHECK(F.lattice_point(16) == Catch::Approx(F.support_radius()));
    CHECK(F.lattice_point(8) == Catch::Approx(0.0).margin(1e-15));
    CHECK(F.truncation_order() <= 16);
    CHECK(F.tail_mass() <= 0.5e-9);
    // CDF symmetry of the symmetric law on the lattice
    for (std::int64_t l : {0, 3, 8, 12, 16}) {
        const auto a = F.eval_at_lattice(l);
        const auto b = F.eval_at_lattice(16 - l);
        CHECK(a.at.value + b.left.value ==
              Catch::Approx(1.0).margin(2.0 * (a.at.err + b.left.err) + 1e-11));
    }
    CHECK_THROWS_AS(F.jump_mass(17), DomainError);
    CHECK_THROWS_AS(F.eval_at_lattice(-1), DomainError);
}

TEST_CASE("SumCdf large-N sparse-density regime") {
    // eps N = 10, so the mixture converges quickly while the sign lattice
    // runs through the log-space pmf branch
    SumCdf F(0.002, 0.5, 10000);
    const auto mid = F.eval(0.0);
    CHECK(std::fabs(mid.value - 0.5) <= 0.5 * F.jump_mass(5000) + mid.err + 1e-12);
    const auto one = F.eval(1.0);
    CHECK(one.value == Catch::Approx(std_normal_cdf(1.0)).margin(0.02));
    CHECK(mid.err < 1e-9);
}

TEST_CASE("SumCdf refuses what it cannot certify") {
    SECTION("dense mixture at large N") {
        try {
            SumCdf F(0.9, 0.9, 10000);
            FAIL("expected TruncationError");
        } catch (const TruncationError& e) {
            CHECK(std::string(e.what()).find("Monte Carlo") != std::string::npos);
        }
    }
    SECTION("domain validation") {
        CHECK_THROWS_AS(SumCdf(0.5, 0.0, 4), DomainError);
        CHECK_THROWS_AS(SumCdf(-0.1, 0.5, 4), DomainError);
        CHECK_THROWS_AS(SumCdf(1.0, 1.0, 4), DomainError);
        CHECK_THROWS_AS(SumCdf(0.5, 0.5, 0), DomainError);
        CHECK_THROWS_AS(SumCdf(0.5, 0.5, 200000000), DomainError);
        CHECK_THROWS_AS(SumCdf(0.5, 0.5, 4, 0.0), DomainError);
    }
}

TEST_CASE("exact_sum_cdf wrapper matches the engine") {
    const auto a = exact_sum_cdf(0.5, 0.5, 8, 0.37);
    const auto b = SumCdf(0.5, 0.5, 8).eval(0.37);
    CHECK(a.value == b.value);
    CHECK(a.err == b.err);
}

TEST_CASE("SumCdf against the grid-convolution oracle at small N") {
    // an independent discretized-convolution route; abscissae keep clear of
    // jump and kink neighborhoods where the grid blurs
    const double h = 0.5, w = 0.5;
    const int n = 3;
    testsupport::GridOracle oracle(h, w, n, 20000);
    for (int i = 0; i < n; ++i) oracle.advance();
    SumCdf F(h, w, n);
    const auto pts =
        testsupport::oracle_abscissae(h, w, n, 12, 20260816, 1.5e-3, 5e-4);
    for (double s : pts) {
        const auto got = F.eval(s);
        INFO("s = " << s);
        CHECK(std::fabs(got.value - oracle.cdf(s)) <= 3e-7 + got.err);
    }
}
