#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "berrylab/errors.hpp"
#include "berrylab/laws.hpp"

using namespace berrylab;

TEST_CASE("make_mixed_law validates and normalizes") {
    SECTION("unit mass accepted, atoms sorted") {
        auto law = make_mixed_law({{1.0, 0.25}, {-1.0, 0.25}}, {{-0.5, 0.5, 0.5}});
        REQUIRE(law.atoms.size() == 2);
        CHECK(law.atoms[0].location == -1.0);
        CHECK(law.atoms[1].location == 1.0);
    }
    SECTION("coincident atoms merge") {
        auto law = make_mixed_law({{0.5, 0.25}, {0.5, 0.25}, {-0.5, 0.5}}, {});
        REQUIRE(law.atoms.size() == 2);
        CHECK(law.atoms[1].mass == Catch::Approx(0.5));
    }
    SECTION("mass defect rejected") {
        CHECK_THROWS_AS(make_mixed_law({{1.0, 0.5}, {-1.0, 0.4}}, {}), TotalMassError);
    }
    SECTION("bad step geometry rejected") {
        CHECK_THROWS_AS(make_mixed_law({{0.0, 0.5}}, {{0.5, -0.5, 0.5}}), GeometryError);
        CHECK_THROWS_AS(make_mixed_law({{0.0, 0.5}}, {{-0.5, 0.5, -0.5}}), GeometryError);
    }
    SECTION("negative atom mass rejected") {
        CHECK_THROWS_AS(make_mixed_law({{0.0, -0.25}, {1.0, 1.25}}, {}), GeometryError);
    }
}

TEST_CASE("mu_hw matches its closed form") {
    SECTION("atom location at h = w = 0.5") {
        // x = sqrt((1 - hw^3/12)/(1 - hw)) = sqrt((1 - 1/192)/0.75)
        const double x = mu_hw_atom_location(0.5, 0.5);
        CHECK(x == Catch::Approx(1.15168958009043778).epsilon(1e-15));
        const auto law = mu_hw(0.5, 0.5);
        REQUIRE(law.atoms.size() == 2);
        CHECK(law.atoms[0].location == Catch::Approx(-x));
        CHECK(law.atoms[1].location == Catch::Approx(x));
        CHECK(law.atoms[0].mass == Catch::Approx(0.375)); // (1 - 0.25)/2
        REQUIRE(law.steps.size() == 1);
        CHECK(law.steps[0].lo == Catch::Approx(-0.25));
        CHECK(law.steps[0].hi == Catch::Approx(0.25));
        CHECK(law.steps[0].height == Catch::Approx(0.5));
    }
    SECTION("atom location at h = w = 0.2") {
        CHECK(mu_hw_atom_location(0.2, 0.2) ==
              Catch::Approx(1.02055268250971629).epsilon(1e-15));
    }
    SECTION("degenerate h*w = 1 rejected with a reasoned message") {
        try {
            mu_hw(1.0, 1.0);
            FAIL("expected DomainError");
        } catch (const DomainError& e) {
            CHECK(std::string(e.what()).find("unit-variance") != std::string::npos);
        }
    }
    SECTION("parameters outside (0,1] rejected") {
        CHECK_THROWS_AS(mu_hw(0.0, 0.5), DomainError);
        CHECK_THROWS_AS(mu_hw(0.5, 0.0), DomainError);
        CHECK_THROWS_AS(mu_hw(1.5, 0.5), DomainError);
        CHECK_THROWS_AS(mu_hw(0.5, 1.5), DomainError);
    }
}

TEST_CASE("mu_hw moments are normalized") {
    for (const auto [h, w] : {std::pair{0.5, 0.5}, {1.0, 0.5}, {0.9, 0.9}, {0.2, 0.2}}) {
        const auto law = mu_hw(h, w);
        CHECK(moment(law, 0) == Catch::Approx(1.0).margin(1e-14));
        CHECK(moment(law, 1) == Catch::Approx(0.0).margin(1e-14));
        CHECK(moment(law, 2) == Catch::Approx(1.0).epsilon(1e-13));
        CHECK(moment(law, 3) == Catch::Approx(0.0).margin(1e-14));
    }
}

TEST_CASE("fourth moments of the two-parameter family") {
    // m4 = (1 - hw) x^4 + h w^5/80 with x the atom location
    CHECK(moment(mu_hw(0.5, 0.5), 4) ==
          Catch::Approx(1.31967592592592593).epsilon(1e-14));
    CHECK(moment(mu_hw(1.0, 0.5), 4) ==
          Catch::Approx(1.95894097222222222).epsilon(1e-14));
    CHECK(moment(mu_hw(0.9, 0.9), 4) ==
          Catch::Approx(4.71000804210526316).epsilon(1e-14));
    CHECK(moment(mu_hw(0.2, 0.2), 4) ==
          Catch::Approx(1.04138970740740741).epsilon(1e-14));
}

TEST_CASE("abs_moment handles sign straddles") {
    const auto law = mu_hw(0.5, 0.5);
    // even orders agree with plain moments
    CHECK(abs_moment(law, 2) == Catch::Approx(moment(law, 2)).epsilon(1e-14));
    CHECK(abs_moment(law, 4) == Catch::Approx(moment(law, 4)).epsilon(1e-14));
    // odd order: 2 * (0.375 x^3 + h * (w/2)^4 / 4)
    const double x = mu_hw_atom_location(0.5, 0.5);
    const double expect = 2.0 * (0.375 * x * x * x + 0.5 * 0.25 * std::pow(0.25, 4));
    CHECK(abs_moment(law, 3) == Catch::Approx(expect).epsilon(1e-13));
    // a step strictly to one side needs no split
    const auto shifted = make_mixed_law({{-1.0, 0.5}}, {{0.5, 1.5, 0.5}});
    CHECK(abs_moment(shifted, 1) == Catch::Approx(0.5 + 0.5 * 1.0).epsilon(1e-13));
}

TEST_CASE("nu_delta composes the scale recipe") {
    SECTION("delta at N = 100000") {
        const double d = nu_delta(100000);
        CHECK(d == Catch::Approx(0.414339573421544879).epsilon(1e-15));
    }
    SECTION("small N pushes delta above 1 and nu_N refuses") {
        CHECK(nu_delta(10) == Catch::Approx(2.77085572693724527).epsilon(1e-14));
        CHECK_THROWS_AS(nu_N(10), DomainError);
    }
    SECTION("nu_N at a feasible size is mu_{delta,delta}") {
        const auto law = nu_N(100000);
        const double d = nu_delta(100000);
        REQUIRE(law.steps.size() == 1);
        CHECK(law.steps[0].height == Catch::Approx(d));
        CHECK(law.steps[0].hi == Catch::Approx(0.5 * d));
    }
}

TEST_CASE("density_rectangle picks the best-scored window") {
    SECTION("single uniform block is its own witness") {
        const auto law = mu_hw(0.5, 0.5);
        const auto rect = density_rectangle(law);
        CHECK(rect.h == Catch::Approx(0.5));
        CHECK(rect.w == Catch::Approx(0.5));
        CHECK(rect.a == Catch::Approx(-0.25));
    }
    SECTION("taller narrow block can lose to a wider low one") {
        // score h w^3: 1.0 * 0.1^3 = 1e-3 vs 0.2 * 0.9^3 = 0.1458
        const auto law = make_mixed_law(
            {{3.0, 0.36}, {-3.0, 0.36}},
            {{-2.0, -1.9, 1.0}, {0.0, 0.9, 0.2}});
        const auto rect = density_rectangle(law);
        CHECK(rect.h == Catch::Approx(0.2));
        CHECK(rect.w == Catch::Approx(0.9));
    }
    SECTION("purely atomic law has no density") {
        const auto law = make_mixed_law({{1.0, 0.5}, {-1.0, 0.5}}, {});
        CHECK_THROWS_AS(density_rectangle(law), NoDensityError);
    }
    SECTION("height clamp caps the score of tall slivers") {
        // score min(h,1) min(w,1)^3: the 5.0-high sliver scores 6.4e-5,
        // the 0.4-high block scores 0.05
        const auto law = make_mixed_law(
            {{2.0, 0.3}, {-2.0, 0.3}},
            {{-1.0, -0.96, 5.0}, {0.0, 0.5, 0.4}});
        const auto rect = density_rectangle(law);
        CHECK(rect.h == Catch::Approx(0.4));
    }
}
