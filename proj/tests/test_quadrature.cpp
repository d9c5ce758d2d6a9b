#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "bilembed/quadrature.hpp"

using namespace bilembed;
using quad::cplx;

TEST_CASE("gk15 panel is exact on low-degree polynomials") {
    auto r = quad::gk15_panel([](double x) { return cplx(x * x, 0.0); }, 0.0, 1.0);
    CHECK(r.value.real() == Catch::Approx(1.0 / 3.0).epsilon(1e-14));
    auto r7 = quad::gk15_panel([](double x) { return cplx(std::pow(x, 13), 0.0); }, -1.0, 2.0);
    CHECK(r7.value.real() == Catch::Approx((std::pow(2.0, 14) - 1.0) / 14.0).epsilon(1e-12));
}

TEST_CASE("adaptive integration reaches requested tolerance") {
    auto r = quad::integrate([](double x) { return cplx(std::exp(-x * x), 0.0); }, -8.0, 8.0, 1e-12);
    CHECK(r.value.real() == Catch::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));

    // full turns of a unit phasor cancel
    auto o = quad::integrate([](double x) { return std::exp(cplx(0.0, x)); }, 0.0,
                             8.0 * std::numbers::pi, 1e-12);
    CHECK(std::abs(o.value) < 1e-10);
}

TEST_CASE("graded edges handle endpoint power singularities") {
    auto edges = quad::geometric_edges(1e-14, 1.0);
    auto r = quad::integrate_edges([](double s) { return cplx(1.0 / std::sqrt(s), 0.0); }, edges, 1e-10);
    CHECK(r.value.real() == Catch::Approx(2.0 * (1.0 - 1e-7)).epsilon(1e-9));
}

TEST_CASE("oscillation edges keep per-panel phase increments bounded") {
    const double w = 400.0;
    auto edges = quad::oscillation_edges(0.0, 10.0, [&](double) { return w; }, 30.0);
    REQUIRE(edges.size() > 100);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        CHECK((edges[i + 1] - edges[i]) * w <= 62.0);
    auto r = quad::integrate_edges([&](double x) { return std::exp(cplx(0.0, w * x)); }, edges, 1e-10);
    const cplx expect = (std::exp(cplx(0.0, w * 10.0)) - 1.0) / cplx(0.0, w);
    CHECK(std::abs(r.value - expect) < 1e-9);
}
