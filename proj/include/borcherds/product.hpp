#pragma once

// Numerical evaluation of the Borcherds products on H:
//
//   Xi(tau; f, W) = e(rho2 tau - conj(zeta) rho1) prod (1 - e(l tau - k conj(zeta)))^{c(kl)}
//
// over (l, k) in Z^2 with l Im(tau) + k |delta|/2 > 0 for all tau in W. The
// constant C of absolute value one is fixed to 1. Values are accumulated as a
// sum of logarithms c(kl) log(1 - w) (principal branch), then exponentiated.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "numeric.hpp"
#include "qfield.hpp"
#include "qseries.hpp"
#include "weyl.hpp"

namespace borcherds {

enum class ConvergenceRegion {
    conservative, // Im tau > 2|m0| (and the theorem bound)
    theorem       // |delta| Im tau > 2|m0|
};

struct ProductParams {
    int max_kl = 60;          // keep factor families with |kl| <= max_kl
    unsigned prec_bits = 128; // working precision
    double tail_margin = 0;   // extra decay required beyond the convergence boundary
    ConvergenceRegion region = ConvergenceRegion::conservative;
};

struct EvalResult {
    Cx value;
    Cx log_value;         // accumulated logarithm; value = exp(log_value)
    Real log_abs;
    std::size_t factor_count = 0;
    double tail_bound = 0; // bound on |log Xi_true - log Xi_computed| (infinite if unknown)
    mpq_class weight{0};
};

/// Re-rounds x to the current default precision.
inline Real at_working_precision(const Real &x) {
    Real r;
    mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

inline Cx at_working_precision(const Cx &z) { return {at_working_precision(z.re), at_working_precision(z.im)}; }

/// Smallest T with |e((T+1) tau)| < 2^{-bits}.
inline std::int64_t eta_terms(const Real &im_tau, unsigned bits) {
    const double v = static_cast<double>(im_tau);
    require(v > 0, ErrorKind::invalid_input, "eta needs Im tau > 0");
    const double t = bits * std::log(2.0) / (2 * pi_value<double>() * v);
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(t)));
}

namespace detail {

/// Neumaier-compensated complex sum.
class CompensatedSum {
public:
    void add(const Cx &z) {
        add_part(sum_.re, comp_.re, z.re);
        add_part(sum_.im, comp_.im, z.im);
    }
    Cx value() const { return sum_ + comp_; }

private:
    static void add_part(Real &sum, Real &comp, const Real &x) {
        using std::abs;
        Real t = sum + x;
        if (abs(sum) >= abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    Cx sum_{Real(0), Real(0)};
    Cx comp_{Real(0), Real(0)};
};

/// log prod_{m=1}^{terms} (1 - q^m).
inline Cx log_euler_product(const Cx &q, std::int64_t terms) {
    CompensatedSum s;
    Cx qm = q;
    for (std::int64_t m = 1; m <= terms; ++m) {
        s.add(log(Cx(Real(1)) - qm));
        qm *= q;
    }
    return s.value();
}

/// Bound on |sum_{m > terms} log(1 - q^m)| given |q| < 1.
inline double euler_tail(double abs_q, std::int64_t terms) {
    if (abs_q >= 1)
        return std::numeric_limits<double>::infinity();
    const double lead = std::pow(abs_q, static_cast<double>(terms + 1));
    return lead / ((1 - abs_q) * (1 - lead));
}

} // namespace detail

/// eta(tau) = e(tau/24) prod_{m=1}^{terms} (1 - e(m tau)).
inline Cx eta(const Cx &tau, std::int64_t terms) {
    require(tau.im > 0, ErrorKind::invalid_input, "eta needs Im tau > 0");
    require(terms >= 0, ErrorKind::invalid_input, "eta needs terms >= 0");
    const Cx t = at_working_precision(tau);
    const Cx q = e2pi(t);
    const Cx l = detail::log_euler_product(q, terms) + Cx(Real(0), 2 * pi_value<Real>() / 24) * t;
    return exp(l);
}

/// eta at the current working precision.
inline Cx eta(const Cx &tau) {
    require(tau.im > 0, ErrorKind::invalid_input, "eta needs Im tau > 0");
    const unsigned bits = working_bits();
    return eta(tau, eta_terms(tau.im, bits));
}

inline EvalResult xi_const(const Cx &tau_in, const FieldSpec &spec, const ProductParams &params = {}) {
    require(tau_in.im > 0, ErrorKind::invalid_input, "tau must lie in the upper half-plane");
    PrecisionGuard guard(params.prec_bits);
    const Cx tau = at_working_precision(tau_in);
    const Cx z2 = -conj(zeta_value(spec));
    const std::int64_t n1 = eta_terms(tau.im, params.prec_bits);
    const std::int64_t n2 = eta_terms(z2.im, params.prec_bits);
    const Cx i_two_pi_24(Real(0), 2 * pi_value<Real>() / 24);
    EvalResult r;
    r.log_value = detail::log_euler_product(e2pi(tau), n1) + detail::log_euler_product(e2pi(z2), n2) +
                  i_two_pi_24 * (tau + z2);
    r.value = exp(r.log_value);
    r.log_abs = r.log_value.re;
    r.factor_count = static_cast<std::size_t>(n1 + n2);
    const double two_pi = 2 * pi_value<double>();
    r.tail_bound = detail::euler_tail(std::exp(-two_pi * static_cast<double>(tau.im)), n1) +
                   detail::euler_tail(std::exp(-two_pi * static_cast<double>(z2.im)), n2);
    r.weight = mpq_class(1, 2);
    return r;
}

/// Psi_L(z1, z2; 1) = eta(z1) eta(z2).
inline Cx psi_const(const Cx &z1, const Cx &z2, const ProductParams &params = {}) {
    require(z1.im > 0 && z2.im > 0, ErrorKind::invalid_input, "psi_const needs z1, z2 in H");
    PrecisionGuard guard(params.prec_bits);
    return eta(z1) * eta(z2);
}

/// One retained factor (1 - e(l tau - k conj zeta))^exponent.
struct ProductFactor {
    std::int64_t l = 0;
    std::int64_t k = 0;
    mpz_class exponent;
};

/// A product expansion for a fixed input f and Weyl chamber; evaluate() may be
/// called at many points.
class BorcherdsProduct {
public:
    /// Expansion of Xi(j_n) adapted to the chamber W of index -n.
    static BorcherdsProduct for_jn(const FieldSpec &spec, std::int64_t n, const Chamber &w,
                                   const ProductParams &params) {
        require(n >= 1, ErrorKind::invalid_input, "xi_jn needs n >= 1");
        require(w.m == -n, ErrorKind::invalid_input, "chamber index must be -n");
        check_chamber(w);
        require(params.max_kl >= n, ErrorKind::invalid_input,
                "max_kl must be at least n, otherwise divisor-carrying factors are missing");
        require(params.max_kl <= 2000, ErrorKind::invalid_input, "max_kl too large (max 2000)");
        const QSeries jn = faber_jn(static_cast<int>(n), params.max_kl + 1);
        BorcherdsProduct p(spec, params);
        p.rho_ = weyl_vector_jn(n, w);
        p.ratio_lo_ = w.ratio_lo();
        p.ratio_hi_ = w.ratio_hi();
        p.build(jn, n);
        p.chamber_label_ = w.label();
        return p;
    }

    /// Expansion of Xi(f) at the chamber containing the rational point Y = (y1, y2).
    /// f must be known at least to O(q^{max_kl + 1}).
    static BorcherdsProduct for_f(const FieldSpec &spec, const QSeries &f, const mpq_class &y1,
                                  const mpq_class &y2, const ProductParams &params) {
        require(y1 > 0 && y2 > 0, ErrorKind::invalid_input, "Y must lie in the positive quadrant");
        require(f.prec() > params.max_kl, ErrorKind::insufficient_precision,
                "f is not known up to q^max_kl");
        require(params.max_kl <= 2000, ErrorKind::invalid_input, "max_kl too large (max 2000)");
        BorcherdsProduct p(spec, params);
        std::map<std::int64_t, mpz_class> principal;
        p.ratio_lo_ = 0;
        const mpq_class ratio = y1 / y2;
        std::int64_t m0 = 0;
        for (int m = std::min(f.valuation(), 0); m < 0; ++m) {
            const mpz_class c = f.coeff(m);
            if (c == 0)
                continue;
            require(-m <= params.max_kl, ErrorKind::invalid_input, "max_kl must cover the principal part");
            m0 = std::max<std::int64_t>(m0, -m);
            principal[m] = c;
            const ChamberLocation loc = chamber_of_ratio(m, ratio);
            if (const Wall *wall = std::get_if<Wall>(&loc))
                fail(ErrorKind::wall, "Y lies on the wall t=" + std::to_string(wall->t) +
                                          " of index m=" + std::to_string(m));
            const Chamber &w = std::get<Chamber>(loc);
            p.ratio_lo_ = std::max(p.ratio_lo_, w.ratio_lo());
            if (auto hi = w.ratio_hi())
                p.ratio_hi_ = p.ratio_hi_ ? std::min(*p.ratio_hi_, *hi) : *hi;
        }
        const mpz_class c0 = f.coeff(0);
        p.rho_ = weyl_vector_f(principal, c0, y1, y2);
        p.c0_ = c0;
        p.build(f, m0);
        p.chamber_label_ = "Y=(" + y1.get_str() + "," + y2.get_str() + ")";
        return p;
    }

    const WeylVector &weyl_vector() const { return rho_; }
    const std::vector<ProductFactor> &factors() const { return factors_; }
    const mpz_class &constant_term() const { return c0_; }
    std::int64_t min_index() const { return m0_; }
    double growth_constant() const { return kappa_; }
    mpq_class weight() const {
        mpq_class w(c0_, 2);
        w.canonicalize();
        return w;
    }
    const std::string &chamber_label() const { return chamber_label_; }

    /// Whether Im tau satisfies the configured convergence region.
    bool converges_at(const Real &im_tau) const {
        if (m0_ == 0)
            return im_tau > 0;
        const double v = static_cast<double>(im_tau);
        const double bound = 2.0 * static_cast<double>(m0_);
        const double abs_d = std::sqrt(static_cast<double>(spec_.abs_disc()));
        const bool theorem_ok = abs_d * v > bound * (1 + params_.tail_margin);
        if (params_.region == ConvergenceRegion::theorem)
            return theorem_ok;
        return theorem_ok && v > bound * (1 + params_.tail_margin);
    }

    EvalResult evaluate(const Cx &tau_in) const {
        require(tau_in.im > 0, ErrorKind::invalid_input, "tau must lie in the upper half-plane");
        PrecisionGuard guard(params_.prec_bits);
        const Cx tau = at_working_precision(tau_in);
        if (!converges_at(tau.im))
            fail(ErrorKind::convergence,
                 "Im tau = " + to_decimal(tau.im, 12) + " is outside the " +
                     (params_.region == ConvergenceRegion::theorem ? std::string("theorem")
                                                                   : std::string("conservative")) +
                     " convergence region for |m0| = " + std::to_string(m0_));
        const Real two_pi = 2 * pi_value<Real>();
        const Cx zbar = conj(zeta_value(spec_));
        const Cx q_tau = e2pi(tau);
        const Cx q_zeta = e2pi(-zbar); // e(-conj zeta), |.| = exp(-pi |delta|) < 1

        // Powers q_tau^l and q_zeta^k for the index ranges in use.
        auto powers = [](const Cx &base, std::int64_t lo, std::int64_t hi) {
            std::vector<Cx> out(static_cast<std::size_t>(hi - lo + 1));
            const Cx inv = Cx(Real(1)) / base;
            out[static_cast<std::size_t>(-lo)] = Cx(Real(1));
            for (std::int64_t e = 1; e <= hi; ++e)
                out[static_cast<std::size_t>(e - lo)] = out[static_cast<std::size_t>(e - 1 - lo)] * base;
            for (std::int64_t e = -1; e >= lo; --e)
                out[static_cast<std::size_t>(e - lo)] = out[static_cast<std::size_t>(e + 1 - lo)] * inv;
            return out;
        };
        const auto pt = powers(q_tau, l_min_, l_max_);
        const auto pz = powers(q_zeta, k_min_, k_max_);

        detail::CompensatedSum acc;
        // Weyl term e(rho2 tau - conj(zeta) rho1).
        const Cx weyl_arg = tau * to_real(rho_.rho2) - zbar * to_real(rho_.rho1);
        acc.add(Cx(-two_pi * weyl_arg.im, two_pi * weyl_arg.re));

        const Real hit_threshold = pow(Real(2), -static_cast<int>(params_.prec_bits) / 2);
        for (const auto &f : factors_) {
            const Cx w = pt[static_cast<std::size_t>(f.l - l_min_)] * pz[static_cast<std::size_t>(f.k - k_min_)];
            const Cx one_minus = Cx(Real(1)) - w;
            if (abs(one_minus) < hit_threshold) {
                const Cx argument = tau * Real(f.l) - zbar * Real(f.k);
                using std::round;
                fail(ErrorKind::degenerate, "divisor hit: factor (l,k)=(" + std::to_string(f.l) + "," +
                                                std::to_string(f.k) + ") vanishes at a=" +
                                                std::to_string(round(argument.re).convert_to<long>()));
            }
            acc.add(log(one_minus) * to_real(f.exponent));
        }

        std::size_t count = factors_.size();
        double tail = positive_tail(static_cast<double>(tau.im));
        if (c0_ != 0) {
            // N' = 0 families: (l, 0) and (0, k), l, k >= 1.
            const Real c0 = to_real(c0_);
            const std::int64_t n1 = eta_terms(tau.im, params_.prec_bits);
            const Cx z2 = -zbar;
            const std::int64_t n2 = eta_terms(z2.im, params_.prec_bits);
            acc.add(detail::log_euler_product(q_tau, n1) * c0);
            acc.add(detail::log_euler_product(q_zeta, n2) * c0);
            count += static_cast<std::size_t>(n1 + n2);
            const double two_pi_d = 2 * pi_value<double>();
            const double c0d = std::abs(c0_.get_d());
            tail += c0d * (detail::euler_tail(std::exp(-two_pi_d * static_cast<double>(tau.im)), n1) +
                           detail::euler_tail(std::exp(-two_pi_d * static_cast<double>(z2.im)), n2));
        }

        EvalResult r;
        r.log_value = acc.value();
        r.value = exp(r.log_value);
        r.log_abs = r.log_value.re;
        r.factor_count = count;
        r.tail_bound = tail;
        r.weight = weight();
        return r;
    }

private:
    BorcherdsProduct(const FieldSpec &spec, const ProductParams &params) : spec_(spec), params_(params) {
        require(params.prec_bits >= 64, ErrorKind::invalid_input, "prec_bits must be at least 64");
        require(params.max_kl >= 1, ErrorKind::invalid_input, "max_kl must be at least 1");
    }

    /// Is (l, k) positive on the whole strip ratio_lo < Im tau / (|delta|/2) < ratio_hi?
    bool retained(std::int64_t l, std::int64_t k) const {
        if (l >= 0 && k >= 0)
            return l + k > 0;
        if (l <= 0 && k <= 0)
            return false;
        if (l > 0) // l r + k >= 0 at the lower end of the strip
            return ratio_lo_ * l + k >= 0;
        if (!ratio_hi_) // l < 0: fails for large Im tau
            return false;
        return *ratio_hi_ * l + k >= 0;
    }

    void build(const QSeries &f, std::int64_t m0) {
        m0_ = m0;
        const int M = params_.max_kl;
        l_min_ = 0;
        l_max_ = 0;
        k_min_ = 0;
        k_max_ = 0;
        for (int N = std::min(f.valuation(), 0); N <= M; ++N) {
            if (N == 0)
                continue;
            const mpz_class c = f.coeff(N);
            if (c == 0)
                continue;
            const std::int64_t an = N < 0 ? -N : N;
            for (std::int64_t t : divisors(an)) {
                const std::int64_t other = N / t; // t * other = N
                const std::int64_t cand[2][2] = {{t, other}, {-t, -other}};
                for (const auto &lk : cand) {
                    if (!retained(lk[0], lk[1]))
                        continue;
                    factors_.push_back({lk[0], lk[1], c});
                    l_min_ = std::min(l_min_, lk[0]);
                    l_max_ = std::max(l_max_, lk[0]);
                    k_min_ = std::min(k_min_, lk[1]);
                    k_max_ = std::max(k_max_, lk[1]);
                }
            }
        }
        // Growth constant for the tail: |c(N)| <= kappa exp(4 pi sqrt(|m0| N)), fitted and inflated by 2.
        kappa_ = 0;
        if (m0_ > 0) {
            const double four_pi = 4 * pi_value<double>();
            for (int N = 1; N <= M; ++N) {
                const mpz_class c = abs(f.coeff(N));
                if (c == 0)
                    continue;
                long exp2 = 0;
                const double mant = mpz_get_d_2exp(&exp2, c.get_mpz_t());
                const double log_ratio = std::log(mant) + static_cast<double>(exp2) * std::log(2.0) -
                                         four_pi * std::sqrt(static_cast<double>(m0_ * N));
                kappa_ = std::max(kappa_, 2 * std::exp(log_ratio));
            }
        } else {
            for (int N = 1; N <= M; ++N)
                if (f.coeff(N) != 0)
                    kappa_ = std::numeric_limits<double>::infinity();
        }
    }

    /// Bound on the omitted factors with kl > max_kl.
    double positive_tail(double v) const {
        if (kappa_ == 0)
            return 0;
        if (!std::isfinite(kappa_))
            return kappa_;
        const double pi = pi_value<double>();
        const double h = std::sqrt(static_cast<double>(spec_.abs_disc())) / 2;
        const double n = static_cast<double>(m0_);
        const double c = 4 * pi * (std::sqrt(v * h) - std::sqrt(n));
        if (c <= 0)
            return std::numeric_limits<double>::infinity();
        const double M = static_cast<double>(params_.max_kl);
        const double S = std::sqrt(M);
        // |log(1 - w)| <= |w| / (1 - |w|), |w| <= exp(-4 pi sqrt(N v h)), d(N) <= 2 sqrt(N).
        const double w_max = std::exp(-4 * pi * std::sqrt((M + 1) * v * h));
        const double shrink = 1 / (1 - w_max);
        const double integral = 2 * std::exp(-c * S) * (S * S / c + 2 * S / (c * c) + 2 / (c * c * c));
        const double peak = S >= 1 / c ? S * std::exp(-c * S) : 1 / (c * std::exp(1.0));
        return 2 * kappa_ * shrink * (integral + peak);
    }

    FieldSpec spec_;
    ProductParams params_;
    WeylVector rho_;
    mpq_class ratio_lo_{0};
    std::optional<mpq_class> ratio_hi_;
    mpz_class c0_{0};
    std::int64_t m0_ = 0;
    std::vector<ProductFactor> factors_;
    std::int64_t l_min_ = 0, l_max_ = 0, k_min_ = 0, k_max_ = 0;
    double kappa_ = 0;
    std::string chamber_label_;
};

inline EvalResult xi_jn(const Cx &tau, const FieldSpec &spec, std::int64_t n, const Chamber &w,
                        const ProductParams &params = {}) {
    return BorcherdsProduct::for_jn(spec, n, w, params).evaluate(tau);
}

inline EvalResult xi_f(const Cx &tau, const FieldSpec &spec, const QSeries &f, const mpq_class &y1,
                       const mpq_class &y2, const ProductParams &params = {}) {
    return BorcherdsProduct::for_f(spec, f, y1, y2, params).evaluate(tau);
}

struct WindingResult {
    std::int64_t order = 0;
    std::size_t samples = 0;
    double winding = 0; // unrounded total argument change / 2 pi
};

/// Winding number of the product along |tau - tau0| = radius. Argument
/// increments must stay below pi/2; otherwise the sampling is refined.
inline WindingResult winding_number(const BorcherdsProduct &product, const Cx &tau0, const Real &radius,
                                    std::size_t samples, unsigned prec_bits, int max_refinements = 6) {
    require(radius > 0, ErrorKind::invalid_input, "radius must be positive");
    require(samples >= 8, ErrorKind::invalid_input, "need at least 8 samples");
    PrecisionGuard guard(prec_bits);
    const Real pi = pi_value<Real>();
    for (int attempt = 0; attempt <= max_refinements; ++attempt) {
        std::vector<Cx> logs(samples);
        for (std::size_t j = 0; j < samples; ++j) {
            const Real theta = 2 * pi * Real(static_cast<double>(j)) / Real(static_cast<double>(samples));
            using std::cos;
            using std::sin;
            const Cx z = tau0 + Cx(radius * cos(theta), radius * sin(theta));
            logs[j] = product.evaluate(z).log_value;
        }
        Real total = 0;
        bool ok = true;
        for (std::size_t j = 0; j < samples; ++j) {
            Real inc = logs[(j + 1) % samples].im - logs[j].im;
            using std::floor;
            inc -= 2 * pi * floor((inc + pi) / (2 * pi)); // principal value in [-pi, pi)
            using std::abs;
            if (abs(inc) >= pi / 2) {
                ok = false;
                break;
            }
            total += inc;
        }
        if (ok) {
            WindingResult r;
            r.winding = static_cast<double>(total / (2 * pi));
            r.order = static_cast<std::int64_t>(std::llround(r.winding));
            r.samples = samples;
            require(std::abs(r.winding - static_cast<double>(r.order)) < 1e-6, ErrorKind::degenerate,
                    "winding number is not close to an integer");
            return r;
        }
        samples *= 2;
    }
    fail(ErrorKind::degenerate, "zero_order inconclusive: argument increments stay >= pi/2 after refinement");
}

/// Order of Xi(j_n) inside the circle |tau - tau0| = radius (zeros minus poles).
inline std::int64_t zero_order(const Cx &tau0, const FieldSpec &spec, std::int64_t n, const Chamber &w,
                               const Real &radius, std::size_t samples, const ProductParams &params = {}) {
    const auto product = BorcherdsProduct::for_jn(spec, n, w, params);
    return winding_number(product, tau0, radius, samples, params.prec_bits).order;
}

} // namespace borcherds
