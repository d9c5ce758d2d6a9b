#pragma once

// Decision engine: maps a BEParams tuple to the verdict the paper's results
// support, together with the statement the verdict rests on.

#include <cmath>
#include <string>
#include <string_view>

#include "bilembed/params.hpp"

namespace bilembed {

enum class Status { Holds, Fails, Claimed, Unknown };

enum class Basis {
    HomogeneityLine,
    Theorem1,
    Corollary1,
    Theorem2,
    Corollary2,
    Lemma1,
    RemarkKEqualsL,
    NotCovered
};

inline std::string_view to_string(Status s) {
    switch (s) {
        case Status::Holds: return "Holds";
        case Status::Fails: return "Fails";
        case Status::Claimed: return "Claimed";
        default: return "Unknown";
    }
}

inline std::string_view to_string(Basis b) {
    switch (b) {
        case Basis::HomogeneityLine: return "HomogeneityLine";
        case Basis::Theorem1: return "Theorem1";
        case Basis::Corollary1: return "Corollary1";
        case Basis::Theorem2: return "Theorem2";
        case Basis::Corollary2: return "Corollary2";
        case Basis::Lemma1: return "Lemma1";
        case Basis::RemarkKEqualsL: return "RemarkKEqualsL";
        default: return "NotCovered";
    }
}

struct Verdict {
    Status status = Status::Unknown;
    Basis basis = Basis::NotCovered;
    std::string notes;
    ReducedPair reduced;
    bool on_line = false;
};

namespace detail {

inline bool approx(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool distinct(cplx a, cplx b, double tol_real) {
    return std::abs(a - b) > tol_real * std::max({1.0, std::abs(a), std::abs(b)});
}

inline void annotate_near_real(const ReducedPair& r, double tol_real, std::string& notes) {
    auto band = [&](cplx c, const char* name) {
        const double im = std::abs(c.imag());
        const double scale = std::max(1.0, std::abs(c));
        if (im > tol_real * scale && im <= 10.0 * tol_real * scale) {
            notes += std::string(name) + " within 10x of the realness tolerance band; ";
        }
    };
    band(r.sigma1, "sigma1");
    band(r.tau1, "tau1");
}

} // namespace detail

/// Decision ladder, first match wins. `tol` is the absolute tolerance for
/// equality tests on alpha and beta; `tol_real` the relative realness
/// tolerance used when reducing the symbols.
inline Verdict classify(const BEParams& p, double tol = 1e-9, double tol_real = kDefaultTolReal) {
    if (!p.valid()) throw PreconditionViolation("classify: invalid BEParams");
    Verdict v;
    v.reduced = reduce(p, tol_real);
    v.on_line = on_homogeneity_line(p, tol);
    detail::annotate_near_real(v.reduced, tol_real, v.notes);

    const cplx s1 = v.reduced.sigma1;
    const cplx t1 = v.reduced.tau1;
    const bool any_odd = (p.k % 2 != 0) || (p.l % 2 != 0);
    const bool both_even = (p.k % 2 == 0) && (p.l % 2 == 0);
    const bool sigma_eq_tau = p.sigma == p.tau;
    const bool critical_corner =
        detail::approx(p.alpha, (p.k - 1) / 2.0, tol) && detail::approx(p.beta, (p.l - 1) / 2.0, tol);
    const bool both_real = detail::nearly_real(s1, tol_real) && detail::nearly_real(t1, tol_real);
    const bool symbols_distinct = detail::distinct(s1, t1, tol_real);

    // 1. off the homogeneity line
    if (!v.on_line) {
        v.status = Status::Fails;
        v.basis = Basis::HomogeneityLine;
        v.notes += "(alpha+1/2)/k + (beta+1/2)/l != 1";
        return v;
    }

    // 2. elliptic: Theorem 1 decides completely
    if (v.reduced.elliptic) {
        const bool same_sign_imag = s1.imag() * t1.imag() > 0.0;
        if (any_odd && critical_corner && same_sign_imag) {
            v.status = Status::Holds;
            v.basis = Basis::Theorem1;
            return v;
        }
        v.status = Status::Fails;
        v.basis = sigma_eq_tau ? Basis::Corollary1 : Basis::Theorem1;
        if (sigma_eq_tau) v.notes += "sigma = tau elliptic never holds";
        return v;
    }

    // 3. non-elliptic, sigma = tau, k != l: Knapp example
    if (sigma_eq_tau && p.k != p.l) {
        v.status = Status::Fails;
        v.basis = Basis::Lemma1;
        return v;
    }

    // 4. Theorem 2: one order odd, both symbols real and distinct, critical corner
    if (p.k != p.l && any_odd && both_real && symbols_distinct && critical_corner) {
        v.status = Status::Holds;
        v.basis = Basis::Theorem2;
        v.notes += "sigma1 != tau1 required (the sigma1 = tau1 reading would contradict Lemma 1)";
        return v;
    }

    // 5. Corollary 2: both orders even, one of k/2, l/2 odd, real positive
    //    distinct symbols, (alpha,beta) at one of the shifted corners
    const bool half_parity_ok =
        both_even && (((p.k / 2) % 2 != 0) != (((p.l / 2) % 2) != 0));
    const bool real_positive_distinct =
        both_real && s1.real() > 0.0 && t1.real() > 0.0 && symbols_distinct;
    const bool corner_a =
        detail::approx(p.alpha, 0.75 * p.k - 0.5, tol) && detail::approx(p.beta, 0.25 * p.l - 0.5, tol);
    const bool corner_b =
        detail::approx(p.alpha, 0.25 * p.k - 0.5, tol) && detail::approx(p.beta, 0.75 * p.l - 0.5, tol);
    if (p.k != p.l && half_parity_ok && real_positive_distinct && (corner_a || corner_b)) {
        v.status = Status::Holds;
        v.basis = Basis::Corollary2;
        return v;
    }

    // 6. k = l: the paper asserts the analogues of Theorem 2, Corollary 2 and
    //    Lemma 1 without proof; report them as claims, never as verdicts.
    if (p.k == p.l) {
        const bool lemma1_like = sigma_eq_tau;
        const bool theorem2_like = any_odd && both_real && symbols_distinct && critical_corner;
        const bool corollary2_like = both_even && ((p.k / 2) % 2 != 0) && real_positive_distinct &&
                                     (corner_a || corner_b);
        if (lemma1_like || theorem2_like || corollary2_like) {
            v.status = Status::Claimed;
            v.basis = Basis::RemarkKEqualsL;
            v.notes += lemma1_like ? "k = l analogue of Lemma 1, stated without proof"
                       : theorem2_like ? "k = l analogue of Theorem 2, stated without proof"
                                       : "k = l analogue of Corollary 2, stated without proof";
            return v;
        }
    }

    // 7. outside every proved or claimed case
    v.status = Status::Unknown;
    v.basis = Basis::NotCovered;
    return v;
}

} // namespace bilembed
