#pragma once

// Adaptive Gauss-Kronrod quadrature for complex-valued integrands on the
// real line, plus panel-edge builders for oscillatory integrands.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <queue>
#include <vector>

#include "bilembed/errors.hpp"

namespace bilembed::quad {

using cplx = std::complex<double>;

// 15-point Kronrod / 7-point Gauss pair (QUADPACK qk15 abscissae, positive half).
inline constexpr double kGK15Nodes[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
inline constexpr double kGK15KronrodW[8] = {
    0.02293532201052922, 0.06309209262997855, 0.10479001032225018, 0.14065325971552591,
    0.16900472663926790, 0.19035057806478540, 0.20443294007529889, 0.20948214108472782};
// Gauss weights pair with nodes 1,3,5 above; the last entry is the center node.
inline constexpr double kGK15GaussW[4] = {
    0.12948496616886969, 0.27970539148927666, 0.38183005050511894, 0.41795918367346938};

struct QuadResult {
    cplx value{};
    double abs_error = 0.0;
    std::size_t n_eval = 0;
};

template <class F>
QuadResult gk15_panel(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const cplx fc = f(c);
    cplx kron = kGK15KronrodW[7] * fc;
    cplx gauss = kGK15GaussW[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double x = h * kGK15Nodes[i];
        const cplx s = f(c + x) + f(c - x);
        kron += kGK15KronrodW[i] * s;
        if (i % 2 == 1) gauss += kGK15GaussW[i / 2] * s;
    }
    QuadResult r;
    r.value = h * kron;
    r.abs_error = std::abs(h) * std::abs(kron - gauss);
    r.n_eval = 15;
    return r;
}

namespace detail {
struct Panel {
    double a, b;
    cplx value;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};
} // namespace detail

/// Adaptive integration of f over the panels delimited by `edges`
/// (strictly increasing). Panels are bisected worst-first until the summed
/// error estimate drops below abs_tol or the panel budget is exhausted.
template <class F>
QuadResult integrate_edges(F&& f, const std::vector<double>& edges, double abs_tol,
                           std::size_t max_panels = 20000) {
    QuadResult total;
    if (edges.size() < 2) return total;
    std::priority_queue<detail::Panel> heap;
    double err_sum = 0.0;
    cplx val_sum{};
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i] < edges[i + 1])) continue;
        auto r = gk15_panel(f, edges[i], edges[i + 1]);
        total.n_eval += r.n_eval;
        heap.push({edges[i], edges[i + 1], r.value, r.abs_error});
        err_sum += r.abs_error;
        val_sum += r.value;
    }
    std::size_t panels = heap.size();
    while (err_sum > abs_tol && panels < max_panels && !heap.empty()) {
        detail::Panel p = heap.top();
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        if (m <= p.a || m >= p.b) {
            // interval at floating-point resolution; keep as is
            heap.push({p.a, p.b, p.value, 0.0});
            err_sum -= p.err;
            continue;
        }
        auto rl = gk15_panel(f, p.a, m);
        auto rr = gk15_panel(f, m, p.b);
        total.n_eval += rl.n_eval + rr.n_eval;
        val_sum += rl.value + rr.value - p.value;
        err_sum += rl.abs_error + rr.abs_error - p.err;
        heap.push({p.a, m, rl.value, rl.abs_error});
        heap.push({m, p.b, rr.value, rr.abs_error});
        ++panels;
    }
    total.value = val_sum;
    total.abs_error = std::max(err_sum, 0.0);
    return total;
}

template <class F>
QuadResult integrate(F&& f, double a, double b, double abs_tol, std::size_t max_panels = 20000) {
    return integrate_edges(std::forward<F>(f), std::vector<double>{a, b}, abs_tol, max_panels);
}

/// Panel edges on [a,b] sized so the local phase increment per panel stays
/// near theta_budget; `speed` must bound |phase'| on a neighbourhood of x.
inline std::vector<double> oscillation_edges(double a, double b,
                                             const std::function<double(double)>& speed,
                                             double theta_budget = 30.0,
                                             std::size_t max_edges = 2000000) {
    std::vector<double> edges{a};
    double x = a;
    while (x < b && edges.size() < max_edges) {
        double step = theta_budget / (speed(x) + 1e-300);
        step = std::min(step, b - x);
        // phase speed may grow within the panel; two corrector passes
        for (int pass = 0; pass < 2; ++pass) {
            const double s2 = speed(x + step);
            if (s2 * step > 2.0 * theta_budget) step = theta_budget / s2;
        }
        step = std::max(step, (b - a) * 1e-12);
        x = std::min(x + step, b);
        edges.push_back(x);
    }
    if (edges.back() != b) edges.push_back(b);
    return edges;
}

/// Geometric (dyadic by default) edges from a to b, refined toward a.
inline std::vector<double> geometric_edges(double a, double b, double ratio = 2.0) {
    std::vector<double> edges{a};
    double x = a;
    while (x * ratio < b) {
        x *= ratio;
        edges.push_back(x);
    }
    edges.push_back(b);
    return edges;
}

} // namespace bilembed::quad
