#pragma once

// The obstruction integral
//
//     I(k, alpha, sigma1, tau1) = int_R |rho|^{2 alpha} drho
//                                 / ((rho^k - tau1)(rho^k - sigma1)),
//
// taken as a symmetric limit. Its non-vanishing defeats BE in the elliptic
// counterexample construction. Closed forms are evaluated per parity /
// criticality case and calibrated once per case against the independent
// quadrature oracle; the branch powers Delta and the functions Phi come with
// the cut conventions the closed forms require.

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <utility>

#include "bilembed/params.hpp"
#include "bilembed/quadrature.hpp"

namespace bilembed {

enum class ObstructionCase {
    EvenCritical,
    EvenCriticalEqual,
    EvenSubcritical,
    EvenSubcriticalEqual,
    OddCritical,
    OddNoncritical,
    OddNoncriticalEqual
};

enum class ObstructionMethod { ClosedForm, Quadrature };

struct ObstructionResult {
    cplx value{};
    ObstructionMethod method = ObstructionMethod::ClosedForm;
    ObstructionCase case_tag = ObstructionCase::OddCritical;
    double gamma = 0.0;
};

enum class BranchCut { CutOnPositiveAxis, CutOnNegativeAxis };
enum class PhiParity { Even, Odd };

inline constexpr double kBranchCutTol = 1e-14;

/// Single-valued power zeta^gamma on the cut plane. CutOnPositiveAxis is the
/// branch real positive on the negative half-line (even case);
/// CutOnNegativeAxis restricts the argument to (-pi, pi] and maps R+ to
/// itself (odd case).
inline cplx delta_branch(cplx zeta, double gamma, BranchCut cut) {
    const double az = std::abs(zeta);
    if (az == 0.0) throw OnBranchCut("delta_branch: zeta = 0");
    const bool near_axis = std::abs(zeta.imag()) <= kBranchCutTol * az;
    if (cut == BranchCut::CutOnPositiveAxis) {
        if (near_axis && zeta.real() > 0.0)
            throw OnBranchCut("delta_branch: zeta on the positive real cut");
        return std::exp(gamma * std::log(-zeta));
    }
    if (near_axis && zeta.real() < 0.0)
        throw OnBranchCut("delta_branch: zeta on the negative real cut");
    return std::exp(gamma * std::log(zeta));
}

namespace detail {

inline double obstruction_gamma(int k, double alpha) { return (2.0 * alpha - k + 1.0) / k; }

/// Truncated alternating series for int_0^T s^a/(1+s^m) ds, T < 1, a > -1.
inline double power_head(double a, int m, double T) {
    double sum = 0.0;
    double Tp = std::pow(T, a + 1.0);
    const double Tm = std::pow(T, m);
    double sign = 1.0;
    for (int j = 0; j < 200; ++j) {
        const double term = sign * Tp / (a + 1.0 + m * j);
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-30)) break;
        Tp *= Tm;
        sign = -sign;
    }
    return sum;
}

/// int_0^infty s^gamma/(1+s) ds for gamma in (-1,0): analytic head on [0,T]
/// plus Gauss-Kronrod on [T,1], using s -> 1/s to fold the tail.
inline double phi_even_normalization(double gamma) {
    const double T = 0.25;
    auto piece = [&](double a) {
        auto f = [a](double s) { return cplx(std::pow(s, a) / (1.0 + s), 0.0); };
        auto q = quad::integrate_edges(f, {T, 0.5, 1.0}, 1e-13);
        return power_head(a, 1, T) + q.value.real();
    };
    return piece(gamma) + piece(-gamma - 1.0);
}

/// Phi_odd(i) = 2i int_0^infty s^gamma/(1+s^2) ds for gamma in (-1,1).
inline cplx phi_odd_at_i(double gamma) {
    const double T = 0.25;
    auto piece = [&](double a) {
        auto f = [a](double s) { return cplx(std::pow(s, a) / (1.0 + s * s), 0.0); };
        auto q = quad::integrate_edges(f, {T, 0.5, 1.0}, 1e-13);
        return power_head(a, 2, T) + q.value.real();
    };
    return cplx(0.0, 2.0) * (piece(gamma) + piece(-gamma));
}

// Normalization cache, keyed by (gamma, parity). Fills are idempotent;
// duplicate concurrent computation is harmless.
inline cplx phi_normalization(double gamma, PhiParity parity) {
    static std::map<std::pair<double, int>, cplx> cache;
    static std::mutex mutex;
    const std::pair<double, int> key{gamma, parity == PhiParity::Even ? 0 : 1};
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    cplx val;
    if (parity == PhiParity::Even) {
        val = cplx(phi_even_normalization(gamma), 0.0);
    } else {
        // C = Phi(i) / Delta(i), the multiplier in Phi = C * Delta on C_+
        val = phi_odd_at_i(gamma) / delta_branch(cplx(0.0, 1.0), gamma, BranchCut::CutOnNegativeAxis);
    }
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, val);
    return val;
}

inline bool on_positive_ray(cplx c) {
    return std::abs(c.imag()) <= kBranchCutTol * std::abs(c) && c.real() >= 0.0;
}

inline bool on_real_axis(cplx c) { return std::abs(c.imag()) <= kBranchCutTol * std::abs(c); }

inline void validate_obstruction_symbols(int k, int l, double alpha, cplx s1, cplx t1) {
    if (k < 1 || s1 == cplx{} || t1 == cplx{})
        throw PreconditionViolation("obstruction: need k >= 1 and nonzero symbols");
    const double gamma = obstruction_gamma(k, alpha);
    if (!(gamma < 1.0))
        throw PreconditionViolation("obstruction: gamma >= 1, integral diverges at infinity");
    if (k % 2 == 0) {
        if (l % 2 != 0)
            throw PreconditionViolation("obstruction: k even requires l even (transpose otherwise)");
        if (gamma > 1e-12)
            throw PreconditionViolation(
                "obstruction: even case needs alpha <= (k-1)/2 (transpose the roles of k and l)");
        if (on_positive_ray(s1) || on_positive_ray(t1))
            throw PreconditionViolation("obstruction: even case needs symbols off the positive ray");
    } else {
        if (on_real_axis(s1) || on_real_axis(t1))
            throw PreconditionViolation("obstruction: odd case needs nonreal symbols");
    }
}

} // namespace detail

/// The function Phi of the counterexample section, via its proven closed
/// forms: in the even case Phi(zeta) = Phi(-1) Delta(zeta) on C \ R+, in the
/// odd case Phi(zeta) = C Delta(zeta) on C_+ extended by oddness. The
/// normalization constants come from one quadrature each, cached per gamma.
inline cplx phi_function(cplx zeta, double gamma, PhiParity parity) {
    if (parity == PhiParity::Even) {
        if (!(gamma > -1.0 && gamma < 0.0))
            throw PreconditionViolation("phi_function: even parity needs -1 < gamma < 0");
        return detail::phi_normalization(gamma, parity) *
               delta_branch(zeta, gamma, BranchCut::CutOnPositiveAxis);
    }
    if (!(gamma > -1.0 && gamma < 1.0))
        throw PreconditionViolation("phi_function: odd parity needs -1 < gamma < 1");
    if (detail::on_real_axis(zeta)) throw PreconditionViolation("phi_function: odd parity needs zeta off R");
    const cplx C = detail::phi_normalization(gamma, parity);
    if (zeta.imag() > 0.0) return C * delta_branch(zeta, gamma, BranchCut::CutOnNegativeAxis);
    return -C * delta_branch(-zeta, gamma, BranchCut::CutOnNegativeAxis);
}

/// Symmetric-limit quadrature of the obstruction integral: the line is
/// folded to [0, infinity) (which also realizes the paired absolutely
/// convergent rewrite of the odd case) and truncated where the analytic
/// power-law tail bound drops below tol.
inline cplx obstruction_quadrature_oracle(int k, double alpha, cplx s1, cplx t1,
                                          double R_max = 1e6, double tol = 1e-8) {
    detail::validate_obstruction_symbols(k, k % 2 == 0 ? 2 : 3, alpha, s1, t1);
    const double big = std::max(std::abs(s1), std::abs(t1));
    const double decay = 2.0 * k - 2.0 * alpha - 1.0; // > 0 since gamma < 1

    // On rho >= X with X^k >= 4 max(|s1|,|t1|) the folded integrand has the
    // absolutely convergent expansion 2 sum_m a_m rho^(2 alpha - 2k - km)
    // (m even only when k is odd), a_m = sum_{i+j=m} s1^i t1^j. The tail of
    // the integral is summed in closed form; the remainder past m = M is
    // bounded through |a_m| <= (m+1) big^m.
    constexpr int M = 12;
    auto remainder_bound = [&](double X) {
        const double q = big / std::pow(X, k);
        return 2.0 * std::pow(X, -decay) / decay * (M + 2) * std::pow(q, M + 1) /
               ((1.0 - q) * (1.0 - q));
    };
    double X = std::max(1.0, std::pow(4.0 * big, 1.0 / k)) * 2.0;
    while (remainder_bound(X) > 0.1 * tol) {
        X *= 2.0;
        if (X > R_max) throw NonConvergent("obstruction oracle: tail bound not met within R_max");
    }
    cplx tail{};
    {
        cplx am{1.0, 0.0}; // a_0
        cplx tpow{1.0, 0.0};
        for (int m = 0; m <= M; ++m) {
            const bool contributes = (k % 2 == 0) || (m % 2 == 0);
            if (contributes) {
                const double expo = 2.0 * alpha - 2.0 * k - double(k) * m + 1.0;
                tail += 2.0 * am * std::pow(X, expo) / (-expo);
            }
            tpow *= t1;
            am = s1 * am + tpow;
        }
    }
    auto h = [&](double r) {
        const double rk = std::pow(r, k); // exact sign for integer k
        return std::pow(std::abs(r), 2.0 * alpha) / ((rk - t1) * (rk - s1));
    };
    auto folded = [&](double r) { return h(r) + h(-r); };
    std::vector<double> edges{0.0};
    // extra knots near the pole magnitudes help the refinement find the peaks
    std::vector<double> knots{std::pow(std::abs(s1), 1.0 / k), std::pow(std::abs(t1), 1.0 / k), 1.0};
    std::sort(knots.begin(), knots.end());
    for (double e : knots)
        if (e > 0.0 && e < X && e > edges.back()) edges.push_back(e);
    for (double e = edges.back() * 2.0; e < X; e *= 2.0) edges.push_back(e);
    edges.push_back(X);
    auto q = quad::integrate_edges(folded, edges, 0.5 * tol, 200000);
    if (q.abs_error > tol) throw NonConvergent("obstruction oracle: quadrature tolerance not met");
    return q.value + tail;
}

namespace detail {

inline bool symbols_equal(cplx a, cplx b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

inline cplx obstruction_closed_base(int k, double alpha, cplx s1, cplx t1, ObstructionCase tag) {
    const double gamma = obstruction_gamma(k, alpha);
    switch (tag) {
        case ObstructionCase::EvenCritical:
            return (2.0 / k) * (std::log(-s1) - std::log(-t1)) / (t1 - s1);
        case ObstructionCase::EvenCriticalEqual:
            return -(2.0 / k) / t1;
        case ObstructionCase::EvenSubcritical: {
            const cplx n = phi_normalization(gamma, PhiParity::Even);
            const cplx ds = delta_branch(s1, gamma, BranchCut::CutOnPositiveAxis);
            const cplx dt = delta_branch(t1, gamma, BranchCut::CutOnPositiveAxis);
            return (2.0 / k) * n * (ds - dt) / (s1 - t1);
        }
        case ObstructionCase::EvenSubcriticalEqual: {
            const cplx n = phi_normalization(gamma, PhiParity::Even);
            return (2.0 / k) * n * gamma * delta_branch(s1, gamma, BranchCut::CutOnPositiveAxis) / s1;
        }
        case ObstructionCase::OddCritical: {
            if (s1.imag() * t1.imag() > 0.0) return cplx{};
            const cplx upper = t1.imag() > 0.0 ? t1 : s1;
            const cplx lower = t1.imag() > 0.0 ? s1 : t1;
            return cplx(0.0, kTwoPi / k) / (upper - lower);
        }
        case ObstructionCase::OddNoncritical:
            return (1.0 / k) * (phi_function(s1, gamma, PhiParity::Odd) - phi_function(t1, gamma, PhiParity::Odd)) /
                   (s1 - t1);
        case ObstructionCase::OddNoncriticalEqual:
        default: {
            // Phi' is even: C gamma Delta(z)/z on C_+, C gamma Delta(-z)/(-z) below
            const cplx C = phi_normalization(gamma, PhiParity::Odd);
            const cplx z = s1.imag() > 0.0 ? s1 : -s1;
            return (1.0 / k) * C * gamma * delta_branch(z, gamma, BranchCut::CutOnNegativeAxis) / z;
        }
    }
}

// One calibration point per case; the paper states the closed forms up to
// bookkeeping signs, so each case is pinned to the oracle once.
struct PinProbe {
    int k;
    double alpha;
    cplx s1, t1;
};

inline PinProbe pin_probe(ObstructionCase tag) {
    switch (tag) {
        case ObstructionCase::EvenCritical: return {2, 0.5, {-1.0, 0.0}, {-2.0, 0.0}};
        case ObstructionCase::EvenCriticalEqual: return {2, 0.5, {-2.0, 0.0}, {-2.0, 0.0}};
        case ObstructionCase::EvenSubcritical: return {2, 0.25, {-1.0, 0.3}, {-2.0, -0.5}};
        case ObstructionCase::EvenSubcriticalEqual: return {2, 0.25, {-1.5, 0.2}, {-1.5, 0.2}};
        case ObstructionCase::OddCritical: return {1, 0.0, {0.0, -1.0}, {0.0, 1.0}};
        case ObstructionCase::OddNoncritical: return {3, 0.5, {1.0, 2.0}, {-0.5, 1.0}};
        case ObstructionCase::OddNoncriticalEqual:
        default: return {3, 0.5, {1.0, 2.0}, {1.0, 2.0}};
    }
}

inline double pinned_sign(ObstructionCase tag) {
    static std::map<int, double> cache;
    static std::mutex mutex;
    const int key = static_cast<int>(tag);
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const PinProbe p = pin_probe(tag);
    const cplx base = obstruction_closed_base(p.k, p.alpha, p.s1, p.t1, tag);
    const cplx oracle = obstruction_quadrature_oracle(p.k, p.alpha, p.s1, p.t1, 1e7, 1e-10);
    const double sign = std::abs(base - oracle) <= std::abs(base + oracle) ? 1.0 : -1.0;
    if (std::abs(sign * base - oracle) > 1e-6 * std::max(1.0, std::abs(oracle)))
        throw NonConvergent("obstruction: sign calibration failed to match the oracle");
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, sign);
    return sign;
}

} // namespace detail

/// Closed-form value of the obstruction integral, dispatched on the parity
/// of k and on gamma = (2 alpha - k + 1)/k. `l` only enters the parity
/// compatibility precondition of the even case.
inline ObstructionResult obstruction_integral(int k, int l, double alpha, cplx s1, cplx t1) {
    detail::validate_obstruction_symbols(k, l, alpha, s1, t1);
    const double gamma = detail::obstruction_gamma(k, alpha);
    const bool critical = std::abs(gamma) <= 1e-12;
    const bool equal = detail::symbols_equal(s1, t1);
    ObstructionCase tag;
    if (k % 2 == 0)
        tag = critical ? (equal ? ObstructionCase::EvenCriticalEqual : ObstructionCase::EvenCritical)
                       : (equal ? ObstructionCase::EvenSubcriticalEqual : ObstructionCase::EvenSubcritical);
    else
        tag = critical ? ObstructionCase::OddCritical
                       : (equal ? ObstructionCase::OddNoncriticalEqual : ObstructionCase::OddNoncritical);

    ObstructionResult r;
    r.case_tag = tag;
    r.gamma = gamma;
    r.method = ObstructionMethod::ClosedForm;
    const cplx base = detail::obstruction_closed_base(k, alpha, s1, t1, tag);
    const bool vanishing = tag == ObstructionCase::OddCritical && s1.imag() * t1.imag() > 0.0;
    r.value = vanishing ? cplx{} : detail::pinned_sign(tag) * base;
    return r;
}

} // namespace bilembed
