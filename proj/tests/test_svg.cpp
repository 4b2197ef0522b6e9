#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "berrylab/errors.hpp"
#include "berrylab/svg.hpp"

using namespace berrylab;

TEST_CASE("LogLogSvg renders a complete document") {
    LogLogSvg plot("distance vs size", "N", "distance");
    plot.add_series("exact", {1.0, 4.0, 16.0}, {0.25, 0.12, 0.05});
    plot.add_series("bound", {1.0, 4.0, 16.0}, {0.9, 0.5, 0.2});
    const std::string svg = plot.render();
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("distance vs size") != std::string::npos);
    CHECK(svg.find("exact") != std::string::npos);
    CHECK(svg.find("bound") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    // two series, three markers each
    std::size_t circles = 0;
    for (std::size_t p = svg.find("<circle"); p != std::string::npos;
         p = svg.find("<circle", p + 1))
        ++circles;
    CHECK(circles == 6);
}

TEST_CASE("LogLogSvg escapes markup in labels") {
    LogLogSvg plot("a < b & c", "x", "y");
    plot.add_series("s>1", {1.0}, {1.0});
    const std::string svg = plot.render();
    CHECK(svg.find("a &lt; b &amp; c") != std::string::npos);
    CHECK(svg.find("s&gt;1") != std::string::npos);
    CHECK(svg.find("a < b") == std::string::npos);
}

TEST_CASE("LogLogSvg rejects unusable data") {
    LogLogSvg plot("t", "x", "y");
    CHECK_THROWS_AS(plot.render(), DomainError);
    CHECK_THROWS_AS(plot.add_series("bad", {1.0, 2.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(plot.add_series("bad", {}, {}), DomainError);
    CHECK_THROWS_AS(plot.add_series("bad", {0.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(plot.add_series("bad", {-1.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(plot.add_series("bad", {1.0}, {0.0}), DomainError);
}

TEST_CASE("LogLogSvg grid spans the data decades") {
    LogLogSvg plot("t", "x", "y");
    plot.add_series("s", {1.0, 1000.0}, {1e-6, 1e-1});
    const std::string svg = plot.render();
    CHECK(svg.find("1e0") != std::string::npos);
    CHECK(svg.find("1e3") != std::string::npos);
    CHECK(svg.find("1e-6") != std::string::npos);
}
