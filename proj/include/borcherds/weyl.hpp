#pragma once

// Weyl chambers of the Lorentzian lattice K = Z e3 + Z e4 with Q(l, k) = l k,
// the wall-crossing function Phi_m^K and the Weyl vectors of F_m, j_n and
// general weight-0 inputs f.
//
// Points of the positive quadrant are Y = (y1, y2) = y1 e3 + y2 e4 and the
// pairing is B(Y, rho) = y1 rho2 + y2 rho1. Chambers of index m < 0 are
//   W(t_lo, t_hi) = { t_lo^2 y2 < |m| y1 < t_hi^2 y2 }
// for consecutive elements of {0} u Div(|m|) u {inf}.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <gmpxx.h>

#include "errors.hpp"
#include "qfield.hpp"
#include "qseries.hpp"

namespace borcherds {

inline std::vector<std::int64_t> divisors(std::int64_t n) {
    require(n >= 1, ErrorKind::invalid_input, "divisors needs n >= 1");
    std::vector<std::int64_t> lo, hi;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        lo.push_back(d);
        if (d != n / d)
            hi.push_back(n / d);
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

struct Chamber {
    std::int64_t m = -1;
    std::int64_t t_lo = 0;
    std::optional<std::int64_t> t_hi; // nullopt is infinity

    std::int64_t abs_m() const { return -m; }
    bool unbounded() const { return !t_hi.has_value(); }

    /// Lower and upper bounds of y1/y2, i.e. t^2/|m|; nullopt upper means unbounded.
    mpq_class ratio_lo() const { return rational(mpz_class(static_cast<long>(t_lo * t_lo)), mpz_class(static_cast<long>(abs_m()))); }
    std::optional<mpq_class> ratio_hi() const {
        if (!t_hi)
            return std::nullopt;
        return rational(mpz_class(static_cast<long>(*t_hi * *t_hi)), mpz_class(static_cast<long>(abs_m())));
    }

    friend bool operator==(const Chamber &a, const Chamber &b) {
        return a.m == b.m && a.t_lo == b.t_lo && a.t_hi == b.t_hi;
    }

    std::string label() const {
        return "W(" + std::to_string(t_lo) + "," + (t_hi ? std::to_string(*t_hi) : std::string("inf")) + ")";
    }
};

struct Wall {
    std::int64_t m = -1;
    std::int64_t t = 1;
    friend bool operator==(const Wall &a, const Wall &b) { return a.m == b.m && a.t == b.t; }
};

using ChamberLocation = std::variant<Chamber, Wall>;

struct WeylVector {
    mpq_class rho1{0}; // e3 component
    mpq_class rho2{0}; // e4 component

    friend bool operator==(const WeylVector &a, const WeylVector &b) {
        return a.rho1 == b.rho1 && a.rho2 == b.rho2;
    }
    friend WeylVector operator+(const WeylVector &a, const WeylVector &b) {
        return {a.rho1 + b.rho1, a.rho2 + b.rho2};
    }
    friend WeylVector operator-(const WeylVector &a, const WeylVector &b) {
        return {a.rho1 - b.rho1, a.rho2 - b.rho2};
    }
    friend WeylVector operator*(const mpq_class &s, const WeylVector &v) { return {s * v.rho1, s * v.rho2}; }
};

/// Chambers of index m in clockwise order: W(0,1), W(t1,t2), ..., W(|m|,inf).
inline std::vector<Chamber> chambers(std::int64_t m) {
    require(m < 0, ErrorKind::invalid_input, "chamber index m must be negative");
    const auto divs = divisors(-m);
    std::vector<Chamber> out;
    out.reserve(divs.size() + 1);
    std::int64_t lo = 0;
    for (std::int64_t t : divs) {
        out.push_back({m, lo, t});
        lo = t;
    }
    out.push_back({m, lo, std::nullopt});
    return out;
}

inline void check_chamber(const Chamber &w) {
    require(w.m < 0, ErrorKind::invalid_input, "chamber index must be negative");
    const auto all = chambers(w.m);
    for (const auto &c : all)
        if (c == w)
            return;
    fail(ErrorKind::invalid_input, w.label() + " is not a chamber of index " + std::to_string(w.m));
}

/// Reflection along the diagonal y1 = y2.
inline Chamber mirror_chamber(const Chamber &w) {
    check_chamber(w);
    const std::int64_t n = w.abs_m();
    Chamber r{w.m, 0, std::nullopt};
    r.t_lo = w.t_hi ? n / *w.t_hi : 0;
    if (w.t_lo != 0)
        r.t_hi = n / w.t_lo;
    return r;
}

/// Locates the rational ratio y1/y2 among the walls t^2/|m|; comparisons are exact.
inline ChamberLocation chamber_of_ratio(std::int64_t m, const mpq_class &ratio) {
    require(m < 0, ErrorKind::invalid_input, "chamber index m must be negative");
    require(ratio > 0, ErrorKind::invalid_input, "Y must lie in the positive quadrant");
    const mpq_class scaled = ratio * (-m); // compare |m| y1/y2 with t^2
    std::int64_t lo = 0;
    for (std::int64_t t : divisors(-m)) {
        const mpq_class t2(t * t);
        if (scaled == t2)
            return Wall{m, t};
        if (scaled < t2)
            return Chamber{m, lo, t};
        lo = t;
    }
    return Chamber{m, lo, std::nullopt};
}

inline ChamberLocation chamber_of_Y(std::int64_t m, const mpq_class &y1, const mpq_class &y2) {
    require(y1 > 0 && y2 > 0, ErrorKind::invalid_input, "Y must lie in the positive quadrant");
    return chamber_of_ratio(m, y1 / y2);
}

/// Floating-point variant; points within `rel_tol` of a wall are reported on it.
inline ChamberLocation chamber_of_Y(std::int64_t m, double y1, double y2, double rel_tol = 1e-12) {
    require(m < 0, ErrorKind::invalid_input, "chamber index m must be negative");
    require(y1 > 0 && y2 > 0, ErrorKind::invalid_input, "Y must lie in the positive quadrant");
    const double scaled = static_cast<double>(-m) * y1 / y2;
    std::int64_t lo = 0;
    for (std::int64_t t : divisors(-m)) {
        const double t2 = static_cast<double>(t) * static_cast<double>(t);
        if (std::abs(scaled - t2) <= rel_tol * t2)
            return Wall{m, t};
        if (scaled < t2)
            return Chamber{m, lo, t};
        lo = t;
    }
    return Chamber{m, lo, std::nullopt};
}

/// Chamber of tau in H via Y = (Im tau, |delta|/2). Exact for rational Im tau:
/// t^2 |delta| / 2 versus |m| v is decided by comparing (2 |m| v)^2 with t^4 |D_F|.
inline ChamberLocation chamber_of_tau(std::int64_t m, const mpq_class &im_tau, const FieldSpec &spec) {
    require(m < 0, ErrorKind::invalid_input, "chamber index m must be negative");
    require(im_tau > 0, ErrorKind::invalid_input, "tau must lie in the upper half-plane");
    const mpq_class lhs = (2 * (-m) * im_tau) * (2 * (-m) * im_tau);
    std::int64_t lo = 0;
    for (std::int64_t t : divisors(-m)) {
        const mpq_class rhs = mpq_class(mpz_class(t) * t * t * t * spec.abs_disc());
        if (lhs == rhs)
            return Wall{m, t};
        if (lhs < rhs)
            return Chamber{m, lo, t};
        lo = t;
    }
    return Chamber{m, lo, std::nullopt};
}

inline ChamberLocation chamber_of_tau(std::int64_t m, double im_tau, const FieldSpec &spec,
                                      double rel_tol = 1e-12) {
    require(im_tau > 0, ErrorKind::invalid_input, "tau must lie in the upper half-plane");
    return chamber_of_Y(m, im_tau, std::sqrt(static_cast<double>(spec.abs_disc())) / 2, rel_tol);
}

// ---------------------------------------------------------------------------
// Phi_m^K

/// |Y| = sqrt(B(Y, Y)) = sqrt(2 y1 y2).
template <class T>
T y_length(const T &y1, const T &y2) {
    using std::sqrt;
    return sqrt(2 * y1 * y2);
}

/// Raw sum over positive divisors of the wall-crossing function.
template <class T = double>
T phi_K(std::int64_t m, const T &y1, const T &y2) {
    using std::abs;
    using std::sqrt;
    require(m < 0, ErrorKind::invalid_input, "phi_K needs m < 0");
    require(y1 > 0 && y2 > 0, ErrorKind::invalid_input, "phi_K needs Y in the positive quadrant");
    T sum = 0;
    for (std::int64_t t : divisors(-m)) {
        const T mt = T(m / t);
        sum += abs(-T(t) * y2 + mt * y1) - abs(T(t) * y2 + mt * y1);
    }
    return 4 * sqrt(T(2)) * pi_value<T>() / y_length(y1, y2) * sum;
}

/// Chamber-adapted (linear) form of phi_K; Y must lie in the closure of W.
template <class T = double>
T phi_K_chamber(const Chamber &w, const T &y1, const T &y2, double rel_tol = 1e-12) {
    using std::sqrt;
    check_chamber(w);
    require(y1 > 0 && y2 > 0, ErrorKind::invalid_input, "phi_K needs Y in the positive quadrant");
    const T scaled = T(w.abs_m()) * y1;
    const T lo = T(w.t_lo * w.t_lo) * y2;
    const bool above_lo = scaled >= lo * (1 - rel_tol);
    bool below_hi = true;
    if (w.t_hi)
        below_hi = scaled <= T(*w.t_hi * *w.t_hi) * y2 * (1 + rel_tol);
    require(above_lo && below_hi, ErrorKind::invalid_input, "Y lies outside " + w.label());
    T a = 0, b = 0;
    for (std::int64_t t : divisors(w.abs_m())) {
        if (w.t_hi && t >= *w.t_hi)
            a += T(w.abs_m() / t);
        if (t <= w.t_lo)
            b += T(t);
    }
    return 8 * sqrt(T(2)) * pi_value<T>() / y_length(y1, y2) * (a * y1 + b * y2);
}

// ---------------------------------------------------------------------------
// Weyl vectors

/// rho_m(W) for the Poincare series F_m.
inline WeylVector weyl_vector_Fm(std::int64_t m, const Chamber &w) {
    require(m < 0, ErrorKind::invalid_input, "weyl_vector_Fm needs m < 0");
    require(w.m == m, ErrorKind::invalid_input, "chamber index does not match m");
    check_chamber(w);
    WeylVector r;
    for (std::int64_t t : divisors(-m)) {
        if (t <= w.t_lo)
            r.rho1 += t;
        if (w.t_hi && t >= *w.t_hi)
            r.rho2 += (-m) / t;
    }
    return r;
}

/// rho(j_n; W) = rho_{-n}(W) - sigma(n) (1, 1).
inline WeylVector weyl_vector_jn(std::int64_t n, const Chamber &w) {
    require(n >= 1, ErrorKind::invalid_input, "weyl_vector_jn needs n >= 1");
    require(w.m == -n, ErrorKind::invalid_input, "chamber index does not match -n");
    check_chamber(w);
    WeylVector r;
    for (std::int64_t t : divisors(n)) {
        if (w.t_hi && t >= *w.t_hi)
            r.rho1 -= t;
        if (t <= w.t_lo)
            r.rho2 -= n / t;
    }
    return r;
}

/// Weyl vector of the constant function 1 on the whole quadrant.
inline WeylVector weyl_vector_const() { return {mpq_class(1, 24), mpq_class(1, 24)}; }

/// rho(f; W) for f with principal part sum c(m) q^m and constant term c0, at
/// the chamber W = intersection of W_m containing Y.
inline WeylVector weyl_vector_f(const std::map<std::int64_t, mpz_class> &principal, const mpz_class &c0,
                                const mpq_class &y1, const mpq_class &y2) {
    WeylVector r = mpq_class(c0) * weyl_vector_const();
    for (const auto &[m, c] : principal) {
        require(m < 0, ErrorKind::invalid_input, "principal part exponents must be negative");
        if (c == 0)
            continue;
        const ChamberLocation loc = chamber_of_Y(m, y1, y2);
        if (const Wall *wall = std::get_if<Wall>(&loc))
            fail(ErrorKind::wall, "Y lies on the wall t=" + std::to_string(wall->t) + " of index m=" +
                                      std::to_string(wall->m));
        r = r + mpq_class(c) * weyl_vector_jn(-m, std::get<Chamber>(loc));
    }
    return r;
}

/// B(Y, rho) = y1 rho2 + y2 rho1.
template <class T = double>
T pairing(const T &y1, const T &y2, const WeylVector &rho) {
    return y1 * T(rho.rho2.get_d()) + y2 * T(rho.rho1.get_d());
}

/// 8 sqrt(2) pi B(Y/|Y|, rho).
template <class T = double>
T weyl_identity_value(const T &y1, const T &y2, const WeylVector &rho) {
    using std::sqrt;
    return 8 * sqrt(T(2)) * pi_value<T>() * pairing(y1, y2, rho) / y_length(y1, y2);
}

// ---------------------------------------------------------------------------
// Whittaker integral

/// M_{0,1/2}(z) = 2 sinh(z/2).
inline double whittaker_M_0_half(double z) { return 2 * std::sinh(z / 2); }

struct WhittakerCheck {
    double numeric = 0;
    double closed_form = 0;
    double error_estimate = 0;
};

/// Quadrature of int_0^inf M_{0,1/2}(4 pi |m| y) y^{-3/2} exp(-4 pi y Q - 2 pi y |m|) dy
/// against 4 pi (sqrt(Q + |m|) - sqrt(Q)).
inline WhittakerCheck whittaker_check(std::int64_t m, double Q, std::size_t max_refinements = 12) {
    require(m < 0, ErrorKind::invalid_input, "whittaker_check needs m < 0");
    require(Q > 0, ErrorKind::invalid_input, "whittaker_check needs Q(lambda_v) > 0");
    const double pi = pi_value<double>();
    const double am = static_cast<double>(-m);
    // y = u^2 removes the y^{-1/2} endpoint singularity. M_{0,1/2}(z) e^{-z/2}
    // is evaluated as 1 - e^{-z} so large z does not overflow.
    auto integrand = [=](double u) {
        const double y = u * u;
        if (y < 1e-200)
            return 8 * pi * am; // limit u -> 0
        const double z = 4 * pi * am * y;
        const double whittaker_damped = z < 1 ? whittaker_M_0_half(z) * std::exp(-z / 2) : -std::expm1(-z);
        return 2 * whittaker_damped * std::exp(-4 * pi * y * Q) / (y);
    };
    boost::math::quadrature::exp_sinh<double> integrator(max_refinements);
    WhittakerCheck out;
    double l1 = 0;
    out.numeric = integrator.integrate(integrand, 1e-14, &out.error_estimate, &l1);
    out.closed_form = 4 * pi * (std::sqrt(Q + am) - std::sqrt(Q));
    return out;
}

} // namespace borcherds
