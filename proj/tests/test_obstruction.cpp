#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>
#include <vector>

#include "bilembed/obstruction.hpp"

using namespace bilembed;
using std::numbers::pi;

namespace {
double rel_diff(cplx a, cplx b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}
} // namespace

TEST_CASE("oracle: arctan integral and the vanishing same-sign case") {
    auto v = obstruction_quadrature_oracle(1, 0.0, {0.0, -1.0}, {0.0, 1.0}, 1e6, 1e-8);
    CHECK(std::abs(v - cplx(pi, 0.0)) < 1e-8);

    v = obstruction_quadrature_oracle(1, 0.0, {0.0, 1.0}, {0.0, 2.0}, 1e6, 1e-8);
    CHECK(std::abs(v) < 1e-8);

    // int_0^inf (s+2)^{-2} ds = 1/2, prefactor 2/k = 1
    v = obstruction_quadrature_oracle(2, 0.5, {-2.0, 0.0}, {-2.0, 0.0}, 1e6, 1e-8);
    CHECK(std::abs(v - cplx(0.5, 0.0)) < 1e-8);
}

TEST_CASE("closed forms: reference values") {
    auto r = obstruction_integral(1, 2, 0.0, {0.0, 1.0}, {0.0, 2.0});
    CHECK(r.case_tag == ObstructionCase::OddCritical);
    CHECK(std::abs(r.value) == 0.0);

    r = obstruction_integral(1, 2, 0.0, {0.0, -1.0}, {0.0, 1.0});
    CHECK(std::abs(r.value - cplx(pi, 0.0)) < 1e-12);

    r = obstruction_integral(2, 2, 0.5, {-1.0, 0.0}, {-2.0, 0.0});
    CHECK(r.case_tag == ObstructionCase::EvenCritical);
    CHECK(std::abs(std::abs(r.value) - std::numbers::ln2) < 1e-12);

    r = obstruction_integral(2, 4, 0.5, {-2.0, 0.0}, {-2.0, 0.0});
    CHECK(r.case_tag == ObstructionCase::EvenCriticalEqual);
    CHECK(std::abs(r.value - cplx(0.5, 0.0)) < 1e-12);
    CHECK(r.gamma == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("delta_branch normalization, scaling, cuts") {
    for (double g : {-0.7, -0.3, 0.4, 0.9}) {
        CHECK(std::abs(delta_branch({-1.0, 0.0}, g, BranchCut::CutOnPositiveAxis) - cplx(1.0, 0.0)) < 1e-15);
        CHECK(std::abs(delta_branch({1.0, 0.0}, g, BranchCut::CutOnNegativeAxis) - cplx(1.0, 0.0)) < 1e-15);
        for (cplx z : {cplx(0.3, 1.2), cplx(-2.0, 0.4), cplx(1.0, -3.0)}) {
            for (double lam : {0.25, 3.0}) {
                CHECK(rel_diff(delta_branch(lam * z, g, BranchCut::CutOnPositiveAxis),
                               std::pow(lam, g) * delta_branch(z, g, BranchCut::CutOnPositiveAxis)) < 1e-13);
                CHECK(rel_diff(delta_branch(lam * z, g, BranchCut::CutOnNegativeAxis),
                               std::pow(lam, g) * delta_branch(z, g, BranchCut::CutOnNegativeAxis)) < 1e-13);
            }
        }
    }
    CHECK_THROWS_AS(delta_branch({2.0, 0.0}, -0.5, BranchCut::CutOnPositiveAxis), OnBranchCut);
    CHECK_THROWS_AS(delta_branch({-2.0, 0.0}, -0.5, BranchCut::CutOnNegativeAxis), OnBranchCut);
    CHECK_THROWS_AS(delta_branch({0.0, 0.0}, -0.5, BranchCut::CutOnNegativeAxis), OnBranchCut);
}

TEST_CASE("phi_function: beta-identity normalization and odd symmetries") {
    // int_0^inf rho^{-1/2}/(rho+1) drho = pi
    auto v = phi_function({-1.0, 0.0}, -0.5, PhiParity::Even);
    CHECK(std::abs(v - cplx(pi, 0.0)) < 1e-10);
    // general even normalization against -pi/sin(pi gamma)
    for (double g : {-0.8, -0.25, -0.1}) {
        auto p = phi_function({-1.0, 0.0}, g, PhiParity::Even);
        CHECK(rel_diff(p, cplx(-pi / std::sin(pi * g), 0.0)) < 1e-10);
    }
    for (double g : {-0.5, 0.3, 0.8}) {
        for (cplx z : {cplx(0.7, 1.1), cplx(-1.2, 0.4), cplx(0.2, -2.0)}) {
            CHECK(rel_diff(phi_function(-z, g, PhiParity::Odd), -phi_function(z, g, PhiParity::Odd)) < 1e-12);
            CHECK(rel_diff(phi_function(2.0 * z, g, PhiParity::Odd),
                           std::pow(2.0, g) * phi_function(z, g, PhiParity::Odd)) < 1e-12);
        }
    }
    // odd Phi(i) against the analytic value i pi / cos(pi gamma / 2)
    for (double g : {-0.6, -1.0 / 3.0, 0.24}) {
        auto p = phi_function({0.0, 1.0}, g, PhiParity::Odd);
        CHECK(rel_diff(p, cplx(0.0, pi / std::cos(0.5 * pi * g))) < 1e-10);
    }
}

TEST_CASE("closed form vs oracle on a mixed grid") {
    struct Probe {
        int k, l;
        double alpha;
        cplx s1, t1;
    };
    std::vector<Probe> probes = {
        {1, 2, 0.0, {0.3, 0.9}, {-0.5, -1.4}},   // odd critical, opposite signs
        {3, 2, 1.0, {0.7, -1.3}, {-0.4, 0.8}},   // odd critical k=3
        {3, 2, 0.5, {1.0, 2.0}, {-0.5, 1.0}},    // odd noncritical, same side
        {3, 2, 0.5, {1.0, 2.0}, {0.5, -1.0}},    // odd noncritical, opposite sides
        {3, 2, 0.5, {1.0, 2.0}, {1.0, 2.0}},     // odd noncritical equal
        {5, 2, 2.6, {1.2, 0.7}, {-2.0, -0.3}},   // odd noncritical, gamma > 0
        {2, 2, 0.5, {-1.0, 0.3}, {-2.0, -0.5}},  // even critical complex
        {2, 4, 0.25, {-1.0, 0.3}, {-2.0, -0.5}}, // even subcritical
        {2, 4, 0.25, {-1.5, 0.2}, {-1.5, 0.2}},  // even subcritical equal
        {4, 2, 1.1, {-0.8, 0.0}, {-1.7, 0.9}},   // k=4 subcritical, one real negative
    };
    for (const auto& pb : probes) {
        auto cf = obstruction_integral(pb.k, pb.l, pb.alpha, pb.s1, pb.t1);
        auto oracle = obstruction_quadrature_oracle(pb.k, pb.alpha, pb.s1, pb.t1, 1e7, 1e-9);
        INFO("k=" << pb.k << " alpha=" << pb.alpha);
        CHECK(rel_diff(cf.value, oracle) < 1e-6);
    }
}

TEST_CASE("homogeneity: value scales as lambda^(gamma-1)") {
    struct Probe {
        int k, l;
        double alpha;
        cplx s1, t1;
    };
    for (const auto& pb : {Probe{3, 2, 0.5, {1.0, 2.0}, {-0.5, 1.0}},
                           Probe{2, 2, 0.25, {-1.0, 0.3}, {-2.0, -0.5}},
                           Probe{1, 2, 0.0, {0.3, 0.9}, {-0.5, -1.4}}}) {
        auto base = obstruction_integral(pb.k, pb.l, pb.alpha, pb.s1, pb.t1);
        for (double lam : {0.5, 2.0, 5.0}) {
            auto scaled = obstruction_integral(pb.k, pb.l, pb.alpha, lam * pb.s1, lam * pb.t1);
            CHECK(rel_diff(scaled.value, std::pow(lam, base.gamma - 1.0) * base.value) < 1e-8);
        }
    }
}

TEST_CASE("vanishing characterization on a sample") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> mag(0.5, 2.0), arg(0.15, pi - 0.15);
    for (int it = 0; it < 50; ++it) {
        const cplx a = std::polar(mag(rng), arg(rng));
        const cplx b = std::polar(mag(rng), arg(rng));
        // same upper side: zero; flip one to the lower side: nonzero
        auto z = obstruction_integral(1, 2, 0.0, a, b);
        CHECK(std::abs(z.value) <= 1e-8);
        auto nz = obstruction_integral(1, 2, 0.0, std::conj(a), b);
        CHECK(std::abs(nz.value) >= 1e-3);
    }
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(obstruction_integral(2, 2, 0.5, {1.0, 0.0}, {-2.0, 0.0}), PreconditionViolation);
    CHECK_THROWS_AS(obstruction_integral(2, 3, 0.5, {-1.0, 0.0}, {-2.0, 0.0}), PreconditionViolation);
    CHECK_THROWS_AS(obstruction_integral(1, 2, 0.0, {1.0, 0.0}, {0.0, 1.0}), PreconditionViolation);
    CHECK_THROWS_AS(obstruction_integral(2, 2, 1.5, {-1.0, 0.0}, {-2.0, 0.0}), PreconditionViolation);
    CHECK_THROWS_AS(obstruction_quadrature_oracle(1, 0.0, {0.0, -1.0}, {0.0, 1.0}, 2.0, 1e-12),
                    NonConvergent);
}

TEST_CASE("odd Phi values pairwise distinct on an upper half-plane sample") {
    const double g = -1.0 / 3.0;
    std::vector<cplx> vals;
    for (int i = 0; i < 10; ++i)
        for (int j = 1; j <= 10; ++j)
            vals.push_back(phi_function({-2.0 + 0.45 * i, 0.3 * j}, g, PhiParity::Odd));
    int close = 0;
    for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i + 1; j < vals.size(); ++j)
            if (std::abs(vals[i] - vals[j]) < 1e-10) ++close;
    CHECK(close == 0);
}
