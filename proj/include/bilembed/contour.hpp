#pragma once

// Residue calculus for the inner rho-integral of the reduced kernel, the
// quantitative semicircle (Sokhotski-Plemelj) bound, the Van der Corput
// bound, and the certified oscillatory integral with exponential phases.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "bilembed/params.hpp"
#include "bilembed/quadrature.hpp"

namespace bilembed {

struct RootSet {
    cplx symbol{};
    int order = 1;
    std::vector<cplx> upper_roots;     // Im > 0, sorted by increasing principal argument
    std::optional<double> real_root;   // z0(c), present for odd order and real symbol
};

namespace detail {

inline bool has_real_kth_root(cplx c, int k, double tol = 1e-12) {
    if (std::abs(c.imag()) > tol * std::max(1.0, std::abs(c))) return false;
    return (k % 2 != 0) || c.real() >= 0.0;
}

} // namespace detail

/// All k-th roots of c partitioned into the upper half-plane and, for odd k
/// with real c, the unique real root z0(c).
inline RootSet roots_upper_half(cplx c, int k) {
    if (c == cplx{} || k < 1) throw PreconditionViolation("roots_upper_half: need c != 0, k >= 1");
    RootSet rs;
    rs.symbol = c;
    rs.order = k;
    const double r = std::pow(std::abs(c), 1.0 / k);
    const double base_arg = std::arg(c);
    for (int j = 0; j < k; ++j) {
        const double ang = (base_arg + kTwoPi * j) / k;
        cplx root = std::polar(r, ang);
        if (root.imag() > 1e-12 * std::abs(root)) rs.upper_roots.push_back(root);
    }
    std::sort(rs.upper_roots.begin(), rs.upper_roots.end(),
              [](cplx a, cplx b) { return std::arg(a) < std::arg(b); });
    if (k % 2 != 0 && std::abs(c.imag()) <= 1e-12 * std::abs(c)) {
        rs.real_root = std::copysign(r, c.real());
    }
    return rs;
}

/// int_R rho^{k-1} e^{i (rho A + b_phase)} / ((rho^k - tau1)(rho^k - sigma1)) drho
/// evaluated as 2 pi i times the sum of upper half-plane residues. Requires
/// A > 0 (decay in the upper half-plane) and pole-free real axis; tau1 =
/// sigma1 switches to the second-order pole formula obtained as the limit
/// tau1 -> sigma1 of the simple-pole expression.
inline cplx inner_integral_residues(int k, cplx tau1, cplx sigma1, double A, double b_phase) {
    if (!(A > 0.0)) throw PreconditionViolation("inner_integral_residues: need A > 0");
    if (detail::has_real_kth_root(tau1, k) || detail::has_real_kth_root(sigma1, k))
        throw PreconditionViolation("inner_integral_residues: real pole; use the excision path");
    const cplx phase = std::exp(cplx(0.0, b_phase));
    const bool equal = std::abs(tau1 - sigma1) <=
                       1e-12 * std::max({1.0, std::abs(tau1), std::abs(sigma1)});
    if (equal) {
        // residues at the double poles u (u^k = sigma1):
        // sum_u  i A u e^{i u A} / (k^2 sigma1), times 2 pi i
        cplx sum{};
        for (cplx u : roots_upper_half(sigma1, k).upper_roots)
            sum += u * std::exp(cplx(0.0, 1.0) * u * A);
        return cplx(0.0, kTwoPi) * cplx(0.0, A) * phase * sum / (double(k) * k * sigma1);
    }
    cplx sum{};
    for (cplx u : roots_upper_half(tau1, k).upper_roots)
        sum += std::exp(cplx(0.0, 1.0) * u * A);
    for (cplx v : roots_upper_half(sigma1, k).upper_roots)
        sum -= std::exp(cplx(0.0, 1.0) * v * A);
    return cplx(0.0, kTwoPi) * phase * sum / (double(k) * (tau1 - sigma1));
}

/// Certified bound pi * r * max|h'| on |int_{semicircle} psi + pi i Res|,
/// h(z) = (z - x0) psi(z), clockwise upper semicircle of radius r.
inline double semicircle_correction_bound([[maybe_unused]] double pole, double radius,
                                          [[maybe_unused]] cplx residue, double hprime_max) {
    if (!(radius > 0.0)) throw PreconditionViolation("semicircle_correction_bound: need radius > 0");
    return std::numbers::pi * radius * hprime_max;
}

/// Second Van der Corput bound 8 sqrt(pi) / sqrt(min |F''|).
inline double vdc_bound(double second_derivative_min) {
    if (!(second_derivative_min > 0.0))
        throw PreconditionViolation("vdc_bound: need min |F''| > 0");
    return 8.0 * std::sqrt(std::numbers::pi) / std::sqrt(second_derivative_min);
}

struct OscillatoryResult {
    cplx value{};
    double apriori_bound = 0.0;    // from the proof's constant C(alpha)
    double truncation_error = 0.0; // certified bound on the dropped far tail
};

namespace detail {

// |h'| passes kOscTruncSpeed beyond the last critical point => the remaining
// tail obeys the first Van der Corput (nonstationary phase) bound 4/speed.
inline constexpr double kOscTruncSpeed = 4e4;

struct ExpPhase {
    double b, alpha;
    double sign;
    double h(double x) const { return b * std::exp(x) + sign * std::exp(alpha * x); }
    double h1(double x) const { return b * std::exp(x) + sign * alpha * std::exp(alpha * x); }
    double h2(double x) const { return b * std::exp(x) + sign * alpha * alpha * std::exp(alpha * x); }
};

// bisection for f(x) = target with f monotone-ish on [lo, hi]
template <class F>
double bisect(F&& f, double lo, double hi, double target) {
    double flo = f(lo) - target;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid) - target;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

/// int_0^R exp(i (b e^x + sign e^(alpha x))) dx by panel splitting: the
/// near-stationary set {|h''| < 1} is located by bisection, panels outside
/// are sized by the local phase speed, and once |h'| exceeds a fixed level
/// beyond the last critical point the remaining tail is dropped with the
/// nonstationary-phase bound recorded as truncation_error.
inline OscillatoryResult oscillatory_exp_integral(double b, double alpha_exp, double R, int sign) {
    if (!(alpha_exp > 0.0) || alpha_exp == 1.0)
        throw PreconditionViolation("oscillatory_exp_integral: need alpha > 0, alpha != 1");
    if (!(R >= 0.0)) throw PreconditionViolation("oscillatory_exp_integral: need R >= 0");
    if (sign != 1 && sign != -1) throw PreconditionViolation("oscillatory_exp_integral: sign must be +-1");

    OscillatoryResult out;
    const double e = std::numbers::e;
    const double c_alpha =
        10.0 + std::log((e + 1.0) / (alpha_exp * alpha_exp * std::abs(std::exp(alpha_exp) - e))) / alpha_exp;
    out.apriori_bound = std::min(R, std::max(c_alpha, 0.0) + 62.0);
    if (R == 0.0) return out;

    const detail::ExpPhase ph{b, alpha_exp, double(sign)};

    // critical abscissae: zeros of h' and h'' (at most one each)
    double x_last = 0.0;
    const double q1 = -b * sign / alpha_exp;
    const double q2 = -b * sign / (alpha_exp * alpha_exp);
    if (q1 > 0.0) x_last = std::max(x_last, std::log(q1) / (alpha_exp - 1.0));
    if (q2 > 0.0) x_last = std::max(x_last, std::log(q2) / (alpha_exp - 1.0));
    x_last = std::max(0.0, x_last) + 1.0;

    // |h'| is increasing beyond x_last but overflows for large x, so the
    // truncation point is located by a bounded forward walk, then bisection.
    double x_stop = R;
    if (R > x_last) {
        double x = x_last;
        while (x < R && std::abs(ph.h1(x)) < detail::kOscTruncSpeed) x = std::min(x + 0.5, R);
        if (std::abs(ph.h1(x)) >= detail::kOscTruncSpeed) {
            x_stop = detail::bisect([&](double t) { return std::abs(ph.h1(t)); },
                                    std::max(x_last, x - 0.5), x, detail::kOscTruncSpeed);
            out.truncation_error = 4.0 / detail::kOscTruncSpeed;
        }
    }

    // breakpoints: critical points plus the |h''| = 1 crossings
    std::vector<double> brk{0.0, x_stop};
    auto push = [&](double x) {
        if (x > 0.0 && x < x_stop) brk.push_back(x);
    };
    if (q1 > 0.0) push(std::log(q1) / (alpha_exp - 1.0));
    if (q2 > 0.0) push(std::log(q2) / (alpha_exp - 1.0));
    {
        const double step = 0.125;
        double prev = 0.0;
        bool prev_low = std::abs(ph.h2(prev)) < 1.0;
        for (double x = step; x <= x_stop + step; x += step) {
            const double xc = std::min(x, x_stop);
            const bool low = std::abs(ph.h2(xc)) < 1.0;
            if (low != prev_low)
                push(detail::bisect([&](double t) { return std::abs(ph.h2(t)); }, prev, xc, 1.0));
            prev = xc;
            prev_low = low;
            if (xc >= x_stop) break;
        }
    }
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end()), brk.end());

    std::vector<double> edges;
    for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
        auto seg = quad::oscillation_edges(brk[i], brk[i + 1],
                                           [&](double x) { return std::abs(ph.h1(x)) + 1.0; }, 30.0);
        if (!edges.empty()) seg.erase(seg.begin());
        edges.insert(edges.end(), seg.begin(), seg.end());
    }
    auto q = quad::integrate_edges([&](double x) { return std::exp(cplx(0.0, ph.h(x))); }, edges,
                                   1e-9, 100000);
    out.value = q.value;
    return out;
}

} // namespace bilembed
