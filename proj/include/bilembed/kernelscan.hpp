#pragma once

// The reduced convolution kernel
//
//     int_eps^R eta^{-1} ( int rho^{k-1} e^{i(rho eta^{l/k} + b eta)}
//                          / ((rho^k - tau1)(rho^k - sigma1)) drho ) deta,
//
// evaluated through the residue representation in the elliptic case and
// through the excised contour (residues + semi-residues + certified error
// term) when the symbols are real, plus uniform-boundedness grid scans.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "bilembed/contour.hpp"
#include "bilembed/parallel.hpp"
#include "bilembed/params.hpp"
#include "bilembed/quadrature.hpp"

namespace bilembed {

/// c_l z^{2l+1} e^{-z} with c_l = ((l+1)/e)^{-(l+1)}, which makes
/// g(z) <= z^l for all z > 0.
inline double excision_g(double z, int l) {
    if (!(z > 0.0) || l < 1) throw PreconditionViolation("excision_g: need z > 0, l >= 1");
    const double c_l = std::pow((l + 1.0) / std::numbers::e, -(l + 1.0));
    return c_l * std::pow(z, 2 * l + 1) * std::exp(-z);
}

namespace detail {

// per-eta envelope cutoff: exp(-46) is far below every tolerance in use
inline double elliptic_eta_cutoff(double min_im, double t, double R) {
    if (!(min_im > 0.0)) return R;
    return std::min(R, std::pow(46.0 / min_im, 1.0 / t));
}

inline std::vector<double> eta_edges(double eps, double R, double speed_amp, double t, double b) {
    // geometric refinement toward eps plus oscillation-aware steps
    auto speed = [&](double eta) {
        return std::abs(b) + speed_amp * t * std::pow(eta, t - 1.0) + 2.0 / eta;
    };
    return quad::oscillation_edges(eps, R, speed, 30.0);
}

} // namespace detail

/// Elliptic reduced kernel via the residue form of the inner integral.
/// For sigma1 = tau1 the double-pole form
/// int e^{i b eta} eta^{l/k-1} sum_u u e^{i u eta^{l/k}} deta (times
/// constants) is used. Requires pole-free real axis and 0 < eps <= R.
inline cplx reduced_kernel_elliptic(int k, int l, cplx sigma1, cplx tau1, double b, double epsilon,
                                    double R) {
    if (!(epsilon > 0.0) || !(epsilon <= R))
        throw PreconditionViolation("reduced_kernel_elliptic: need 0 < eps <= R");
    if (detail::has_real_kth_root(tau1, k) || detail::has_real_kth_root(sigma1, k))
        throw PreconditionViolation("reduced_kernel_elliptic: real pole; use the non-elliptic path");
    if (epsilon == R) return cplx{};
    const double t = double(l) / k;
    const auto tau_roots = roots_upper_half(tau1, k).upper_roots;
    const auto sigma_roots = roots_upper_half(sigma1, k).upper_roots;
    double min_im = 1e300, max_mag = 0.0;
    for (const auto& roots : {tau_roots, sigma_roots})
        for (cplx u : roots) {
            min_im = std::min(min_im, u.imag());
            max_mag = std::max(max_mag, std::abs(u));
        }
    const double R_eff = std::max(epsilon, detail::elliptic_eta_cutoff(min_im, t, R));
    const auto edges = detail::eta_edges(epsilon, R_eff, max_mag, t, b);

    const bool equal = std::abs(tau1 - sigma1) <=
                       1e-12 * std::max({1.0, std::abs(tau1), std::abs(sigma1)});
    quad::QuadResult q;
    if (equal) {
        const cplx pref = cplx(0.0, kTwoPi) * cplx(0.0, 1.0) / (double(k) * k * sigma1);
        q = quad::integrate_edges(
            [&](double eta) {
                const double A = std::pow(eta, t);
                cplx sum{};
                for (cplx u : sigma_roots) sum += u * std::exp(cplx(0.0, 1.0) * u * A);
                return pref * std::pow(eta, t - 1.0) * std::exp(cplx(0.0, b * eta)) * sum;
            },
            edges, 1e-10, 100000);
    } else {
        const cplx pref = cplx(0.0, kTwoPi) / (double(k) * (tau1 - sigma1));
        q = quad::integrate_edges(
            [&](double eta) {
                const double A = std::pow(eta, t);
                cplx sum{};
                for (cplx u : tau_roots) sum += std::exp(cplx(0.0, 1.0) * u * A);
                for (cplx v : sigma_roots) sum -= std::exp(cplx(0.0, 1.0) * v * A);
                return pref * std::exp(cplx(0.0, b * eta)) * sum / eta;
            },
            edges, 1e-10, 100000);
    }
    return q.value;
}

struct NonEllipticKernel {
    cplx value{};             // residue + semi-residue + error parts
    cplx residue_part{};
    cplx semi_residue_part{};
    cplx error_part{};        // computed excision residual
    double error_certificate = 0.0; // integrated Lemma-5 bound, linear in epsilon
};

namespace detail {

struct SemicirclePair {
    cplx delta;   // int_SC psi + pi i Res (clockwise upper semicircle)
    double bound; // pi r max|h'| via the Cauchy estimate on radius 2r
};

// psi(z) = z^{k-1} e^{i(z A + phase)} / ((z^k - tau1)(z^k - sigma1)) around
// the real pole c (c^k = one of the symbols)
inline SemicirclePair semicircle_residual(int k, double tau1, double sigma1, double A, double phase,
                                          double c, double r) {
    auto psi = [&](cplx z) {
        const cplx zk = std::pow(z, k);
        return std::pow(z, k - 1) * std::exp(cplx(0.0, 1.0) * (z * A + phase)) /
               ((zk - tau1) * (zk - sigma1));
    };
    const double ck = std::pow(c, k);
    const bool is_tau = std::abs(ck - tau1) < std::abs(ck - sigma1);
    const double other = is_tau ? sigma1 : tau1;
    const cplx res = std::exp(cplx(0.0, 1.0) * (c * A + phase)) /
                     (double(k) * ((is_tau ? tau1 : sigma1) - other));
    // clockwise upper semicircle
    const cplx integral = -quad::integrate(
                               [&](double th) {
                                   const cplx z = c + std::polar(r, th);
                                   return psi(z) * cplx(0.0, 1.0) * std::polar(r, th);
                               },
                               0.0, std::numbers::pi, 1e-13)
                               .value;
    SemicirclePair out;
    out.delta = integral + cplx(0.0, std::numbers::pi) * res;
    // Cauchy: max_{|z-c|<=r} |h'| <= max_{|z-c|=2r} |h| / r, h = (z-c) psi,
    // with the max sampled over the full 2r circle
    double m2r = 0.0;
    for (int j = 0; j < 64; ++j) {
        const double th = kTwoPi * (j + 0.5) / 64.0;
        const cplx z = c + std::polar(2.0 * r, th);
        m2r = std::max(m2r, std::abs((z - c) * psi(z)));
    }
    out.bound = std::numbers::pi * 1.5 * m2r; // pi r * (m2r / r); 1.5: sampling margin
    return out;
}

} // namespace detail

/// Non-elliptic reduced kernel for odd k, real distinct symbols: the excised
/// contour splits into the upper-residue part, the semi-residue part
/// (evaluated through oscillatory_exp_integral after |c|^{k/l} eta = e^x),
/// and the excision error, which carries its integrated Lemma-5 certificate.
/// The eta range is [epsilon, R]; `a` enters through the excision width
/// eps |eta'|^{-l} g(|eta'|), eta' = (2 pi a)^{-k/l} eta.
inline NonEllipticKernel reduced_kernel_nonelliptic(int k, int l, double sigma1, double tau1,
                                                    double a, double b, double epsilon, double R) {
    if (k % 2 == 0)
        throw PreconditionViolation("reduced_kernel_nonelliptic: k must be odd (transpose first)");
    if (k == l) throw PreconditionViolation("reduced_kernel_nonelliptic: need k != l");
    if (sigma1 == 0.0 || tau1 == 0.0 || sigma1 == tau1)
        throw PreconditionViolation("reduced_kernel_nonelliptic: symbols must be real distinct nonzero");
    if (!(a > 0.0 && a < 2.0) || !(epsilon > 0.0 && epsilon < 1.0) || !(epsilon <= R))
        throw PreconditionViolation("reduced_kernel_nonelliptic: need a in (0,2), eps in (0,1), eps <= R");
    NonEllipticKernel out;
    if (epsilon == R) return out;

    const double t = double(l) / k;
    const double lam = std::pow(kTwoPi * a, -double(k) / l);
    const double c1 = *roots_upper_half(cplx(sigma1, 0.0), k).real_root;
    const double c2 = *roots_upper_half(cplx(tau1, 0.0), k).real_root;

    // ---- residue part (empty for k = 1)
    if (k >= 3) {
        const auto tau_roots = roots_upper_half(cplx(tau1, 0.0), k).upper_roots;
        const auto sigma_roots = roots_upper_half(cplx(sigma1, 0.0), k).upper_roots;
        double min_im = 1e300, max_mag = 0.0;
        for (const auto& roots : {tau_roots, sigma_roots})
            for (cplx u : roots) {
                min_im = std::min(min_im, u.imag());
                max_mag = std::max(max_mag, std::abs(u));
            }
        const double R_eff = std::max(epsilon, detail::elliptic_eta_cutoff(min_im, t, R));
        const cplx pref = cplx(0.0, kTwoPi) / (double(k) * (tau1 - sigma1));
        out.residue_part =
            quad::integrate_edges(
                [&](double eta) {
                    const double A = std::pow(eta, t);
                    cplx sum{};
                    for (cplx u : tau_roots) sum += std::exp(cplx(0.0, 1.0) * u * A);
                    for (cplx v : sigma_roots) sum -= std::exp(cplx(0.0, 1.0) * v * A);
                    return pref * std::exp(cplx(0.0, b * eta)) * sum / eta;
                },
                detail::eta_edges(epsilon, R_eff, max_mag, t, b), 1e-10, 100000)
                .value;
    }

    // ---- semi-residue part
    {
        const double eta_s = std::min(
            R, std::max({epsilon, std::pow(std::abs(c1), -double(k) / l),
                         std::pow(std::abs(c2), -double(k) / l)}));
        cplx lower{};
        if (eta_s > epsilon) {
            const double cmax = std::max(std::abs(c1), std::abs(c2));
            lower = quad::integrate_edges(
                        [&](double eta) {
                            const double A = std::pow(eta, t);
                            return std::exp(cplx(0.0, b * eta)) *
                                   (std::exp(cplx(0.0, c1 * A)) - std::exp(cplx(0.0, c2 * A))) / eta;
                        },
                        detail::eta_edges(epsilon, eta_s, cmax, t, b), 1e-10, 100000)
                        .value;
        }
        cplx upper{};
        for (const auto& [c, sgn] : {std::pair{c1, 1.0}, std::pair{c2, -1.0}}) {
            if (eta_s >= R) break;
            const double scale = std::pow(std::abs(c), double(k) / l);
            const double x0 = std::log(scale * eta_s);
            const double x1 = std::log(scale * R);
            const int csign = c > 0.0 ? 1 : -1;
            const double bp = b / scale;
            const auto hi = oscillatory_exp_integral(bp, t, x1, csign);
            const auto lo = oscillatory_exp_integral(bp, t, x0, csign);
            upper += sgn * (hi.value - lo.value);
        }
        out.semi_residue_part =
            cplx(0.0, std::numbers::pi) / (double(k) * (sigma1 - tau1)) * (lower + upper);
    }

    // ---- excision error part and its certificate
    {
        double guard = 0.25 * std::abs(c1 - c2);
        for (double sym : {sigma1, tau1})
            for (cplx u : roots_upper_half(cplx(sym, 0.0), k).upper_roots)
                for (double c : {c1, c2}) guard = std::min(guard, 0.45 * std::abs(u - c));
        // the excision width decays like g, so far eta contribute nothing:
        // z^{2l+1} e^{-z} < 1e-26 past z_top
        const double z_top = 60.0 + 5.0 * (2 * l + 1);
        const double eta_top = std::min(R, z_top / lam);
        auto radius = [&](double eta, double c) {
            const double etap = lam * eta;
            const double d = epsilon * std::pow(etap, -double(l)) * excision_g(etap, l);
            return std::min(d / (k * std::pow(std::abs(c), k - 1.0)), guard);
        };
        auto eval = [&](double eta, bool want_bound) {
            const double A = std::pow(eta, t);
            cplx dsum{};
            double bsum = 0.0;
            for (double c : {c1, c2}) {
                const double r = radius(eta, c);
                if (r < 1e-280) continue; // excision narrower than resolvable
                const auto sc = detail::semicircle_residual(k, tau1, sigma1, A, b * eta, c, r);
                dsum += sc.delta;
                bsum += sc.bound;
            }
            return want_bound ? cplx(bsum, 0.0) : dsum;
        };
        const auto edges = detail::eta_edges(epsilon, eta_top, std::max(std::abs(c1), std::abs(c2)),
                                             t, b);
        out.error_part = quad::integrate_edges(
                             [&](double eta) { return eval(eta, false) / eta; }, edges, 1e-10, 40000)
                             .value;
        out.error_certificate = quad::integrate_edges(
                                    [&](double eta) { return eval(eta, true) / eta; }, edges, 1e-10,
                                    40000)
                                    .value.real();
    }

    out.value = out.residue_part + out.semi_residue_part + out.error_part;
    return out;
}

// ---------------------------------------------------------------------------
// grid scans

struct KernelScanConfig {
    int k = 1;
    int l = 2;
    cplx sigma1{0.0, 1.0};
    cplx tau1{0.0, 1.0};
    double a = 1.0 / kTwoPi; // x-offset, non-elliptic path only
    std::vector<double> epsilon_grid{1e-2};
    std::vector<double> R_grid{1e2};
    std::vector<double> b_grid{0.0};
};

enum class KernelPath { Elliptic, NonElliptic };

struct KernelGridReport {
    std::vector<double> epsilon_grid, R_grid, b_grid;
    std::vector<cplx> values; // (eps, R, b) row-major
    std::vector<std::string> errors; // one slot per grid point, empty = ok
    double sup_abs = 0.0;
    std::array<std::size_t, 3> argmax{0, 0, 0};
    bool stabilized = false;
};

/// Evaluates the reduced kernel over the Cartesian (eps, R, b) grid and
/// re-evaluates the sup at twice the largest R; per-point failures are
/// recorded, not fatal.
inline KernelGridReport scan_uniform_bound(const KernelScanConfig& cfg, KernelPath path) {
    if (cfg.epsilon_grid.empty() || cfg.R_grid.empty() || cfg.b_grid.empty())
        throw PreconditionViolation("scan_uniform_bound: empty grid");
    for (double eps : cfg.epsilon_grid)
        for (double R : cfg.R_grid)
            if (!(eps <= R)) throw PreconditionViolation("scan_uniform_bound: need eps <= R pairs");
    if (path == KernelPath::NonElliptic) {
        for (double eps : cfg.epsilon_grid)
            if (!(eps < 1.0))
                throw PreconditionViolation("scan_uniform_bound: non-elliptic path needs eps < 1");
        if (!(cfg.a > 0.0 && cfg.a < 2.0))
            throw PreconditionViolation("scan_uniform_bound: non-elliptic path needs a in (0,2)");
    }

    KernelGridReport rep;
    rep.epsilon_grid = cfg.epsilon_grid;
    rep.R_grid = cfg.R_grid;
    rep.b_grid = cfg.b_grid;
    const std::size_t ne = cfg.epsilon_grid.size(), nr = cfg.R_grid.size(), nb = cfg.b_grid.size();
    rep.values.assign(ne * nr * nb, cplx{});
    rep.errors.assign(ne * nr * nb, std::string{});

    auto eval_point = [&](double eps, double R, double b, std::string& err) -> cplx {
        try {
            if (path == KernelPath::Elliptic)
                return reduced_kernel_elliptic(cfg.k, cfg.l, cfg.sigma1, cfg.tau1, b, eps, R);
            return reduced_kernel_nonelliptic(cfg.k, cfg.l, cfg.sigma1.real(), cfg.tau1.real(),
                                              cfg.a, b, eps, R)
                .value;
        } catch (const std::exception& e) {
            err = e.what();
            return cplx{};
        }
    };

    parallel_for(ne * nr * nb, [&](std::size_t idx) {
        const std::size_t ie = idx / (nr * nb);
        const std::size_t ir = (idx / nb) % nr;
        const std::size_t ib = idx % nb;
        rep.values[idx] = eval_point(cfg.epsilon_grid[ie], cfg.R_grid[ir], cfg.b_grid[ib],
                                     rep.errors[idx]);
    });

    for (std::size_t idx = 0; idx < rep.values.size(); ++idx) {
        const double mag = std::abs(rep.values[idx]);
        if (mag > rep.sup_abs) {
            rep.sup_abs = mag;
            rep.argmax = {idx / (nr * nb), (idx / nb) % nr, idx % nb};
        }
    }

    // stabilization probe at doubled largest R
    const double R2 = 2.0 * *std::max_element(cfg.R_grid.begin(), cfg.R_grid.end());
    std::vector<cplx> probe(ne * nb);
    std::vector<std::string> perr(ne * nb);
    parallel_for(ne * nb, [&](std::size_t idx) {
        probe[idx] = eval_point(cfg.epsilon_grid[idx / nb], R2, cfg.b_grid[idx % nb], perr[idx]);
    });
    double sup2 = rep.sup_abs;
    for (const cplx v : probe) sup2 = std::max(sup2, std::abs(v));
    rep.stabilized = (sup2 - rep.sup_abs) <= 1e-3 * std::max(rep.sup_abs, 1e-300);
    return rep;
}

} // namespace bilembed
