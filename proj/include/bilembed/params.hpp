#pragma once

// Parameter domain for the bilinear inequality BE(k,l,alpha,beta,sigma,tau):
// reduction to the normalized symbols (sigma1, tau1), degeneracy and
// ellipticity predicates, the homogeneity-line constraint and the
// anisotropic scaling exponents.

#include <cmath>
#include <complex>
#include <numbers>

#include "bilembed/errors.hpp"

namespace bilembed {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// One inequality instance. k and l are the derivative orders in x and y,
/// alpha/beta the smoothness exponents, sigma/tau the operator coefficients
/// attached to g and f respectively.
struct BEParams {
    int k = 1;
    int l = 1;
    double alpha = 0.0;
    double beta = 0.0;
    cplx sigma{1.0, 0.0};
    cplx tau{1.0, 0.0};

    bool valid() const {
        return k >= 1 && l >= 1 && alpha >= 0.0 && beta >= 0.0 && sigma != cplx{} &&
               tau != cplx{};
    }
};

/// The reduced symbols tau1 = (2*pi*i)^(l-k) tau and
/// sigma1 = (-1)^(l-k) (2*pi*i)^(l-k) conj(sigma), with per-symbol
/// degeneracy flags (the polynomial xi^k - c eta^l has a nonzero real root).
struct ReducedPair {
    cplx sigma1{};
    cplx tau1{};
    bool sigma1_degenerate = false;
    bool tau1_degenerate = false;
    bool elliptic = false;
};

namespace detail {

/// c^n for integer n by repeated multiplication (no complex log, hence no
/// branch ambiguity for the purely imaginary base used in the reduction).
inline cplx ipow(cplx c, int n) {
    cplx r{1.0, 0.0};
    cplx base = n >= 0 ? c : 1.0 / c;
    int e = n >= 0 ? n : -n;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline bool nearly_real(cplx c, double tol) {
    return std::abs(c.imag()) <= tol * std::max(1.0, std::abs(c));
}

/// Nonzero real root test for rho^k = c eta^l by parity case analysis:
/// if k or l is odd every real c is attained, if both are even only real
/// positive c is.
inline bool symbol_degenerate(cplx c, int k, int l, double tol_real) {
    const bool any_odd = (k % 2 != 0) || (l % 2 != 0);
    if (!nearly_real(c, tol_real)) return false;
    if (any_odd) return true;
    return c.real() > 0.0;
}

} // namespace detail

inline constexpr double kDefaultTolReal = 1e-12;

inline ReducedPair reduce(const BEParams& p, double tol_real = kDefaultTolReal) {
    if (!p.valid()) throw PreconditionViolation("reduce: invalid BEParams");
    const int d = p.l - p.k;
    const cplx twopii{0.0, kTwoPi};
    ReducedPair r;
    r.tau1 = detail::ipow(twopii, d) * p.tau;
    r.sigma1 = detail::ipow(-twopii, d) * std::conj(p.sigma);
    r.sigma1_degenerate = detail::symbol_degenerate(r.sigma1, p.k, p.l, tol_real);
    r.tau1_degenerate = detail::symbol_degenerate(r.tau1, p.k, p.l, tol_real);
    r.elliptic = !r.sigma1_degenerate && !r.tau1_degenerate;
    return r;
}

/// (alpha + 1/2)/k + (beta + 1/2)/l = 1, the necessary condition forced by
/// the anisotropic dilation group.
inline bool on_homogeneity_line(const BEParams& p, double tol = 1e-9) {
    if (!p.valid()) throw PreconditionViolation("on_homogeneity_line: invalid BEParams");
    const double s = (p.alpha + 0.5) / p.k + (p.beta + 0.5) / p.l - 1.0;
    return std::abs(s) <= tol;
}

/// Exponents of the dilation (x,y) -> (lambda^l x, lambda^k y) preserving
/// the right-hand side of BE.
inline std::pair<int, int> scaling_exponents(const BEParams& p) {
    if (!p.valid()) throw PreconditionViolation("scaling_exponents: invalid BEParams");
    return {p.l, p.k};
}

} // namespace bilembed
