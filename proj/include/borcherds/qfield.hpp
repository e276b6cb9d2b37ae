#pragma once

// Exact arithmetic in an imaginary quadratic field F = Q(sqrt d), written in
// the basis (1, zeta) where O_F = Z + zeta Z.

#include <cstdint>
#include <ostream>
#include <string>

#include <gmpxx.h>

#include "errors.hpp"
#include "numeric.hpp"

namespace borcherds {

inline bool is_squarefree(std::int64_t n) {
    if (n < 0)
        n = -n;
    if (n == 0)
        return false;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0)
            return false;
        if (n % p == 0)
            n /= p;
    }
    return true;
}

/// The field data: d, its discriminant D_F and the minimal polynomial of zeta.
///
/// zeta = delta/2 when D_F is even and (1 + delta)/2 when D_F is odd, with
/// delta = i sqrt|D_F|. Hence zeta^2 = tr(zeta) zeta - N(zeta).
struct FieldSpec {
    std::int64_t d = -1;
    std::int64_t disc = -4;
    std::int64_t zeta_trace = 0;
    std::int64_t zeta_norm = 1;

    bool operator==(const FieldSpec &o) const { return d == o.d; }

    bool disc_even() const { return disc % 2 == 0; }
    std::int64_t abs_disc() const { return -disc; }
};

inline FieldSpec make_field(std::int64_t d) {
    require(d < 0, ErrorKind::invalid_input, "d must be negative, got " + std::to_string(d));
    require(d > -(std::int64_t(1) << 40), ErrorKind::invalid_input, "d is out of supported range");
    require(is_squarefree(d), ErrorKind::invalid_input,
            "d must be square-free, got " + std::to_string(d));
    FieldSpec s;
    s.d = d;
    // d < 0, so d mod 4 == 1 means (d - 1) divisible by 4.
    if ((d - 1) % 4 == 0) {
        s.disc = d;
        s.zeta_trace = 1;
        s.zeta_norm = (1 - d) / 4;
    } else {
        s.disc = 4 * d;
        s.zeta_trace = 0;
        s.zeta_norm = -d;
    }
    return s;
}

/// a + b zeta with rational a, b.
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(const FieldSpec &spec, mpq_class a = 0, mpq_class b = 0)
        : spec_(spec), a_(std::move(a)), b_(std::move(b)) {
        a_.canonicalize();
        b_.canonicalize();
    }

    static FieldElem zeta(const FieldSpec &spec) { return {spec, 0, 1}; }

    /// delta = sqrt(D_F) = 2 zeta - tr(zeta).
    static FieldElem delta(const FieldSpec &spec) { return {spec, -spec.zeta_trace, 2}; }

    static FieldElem delta_inverse(const FieldSpec &spec) {
        // delta^2 = D_F
        return delta(spec) * rational(1, mpz_class(static_cast<long>(spec.disc)));
    }

    const FieldSpec &spec() const { return spec_; }
    const mpq_class &a() const { return a_; }
    const mpq_class &b() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }

    FieldElem conj() const { return {spec_, a_ + b_ * spec_.zeta_trace, -b_}; }

    mpq_class trace() const { return 2 * a_ + b_ * spec_.zeta_trace; }

    /// e * conj(e) = a^2 + ab tr(zeta) + b^2 N(zeta).
    mpq_class norm() const {
        return a_ * a_ + a_ * b_ * spec_.zeta_trace + b_ * b_ * spec_.zeta_norm;
    }

    FieldElem inverse() const {
        require(!is_zero(), ErrorKind::arithmetic, "division by zero in field");
        mpq_class n = norm();
        FieldElem c = conj();
        return {spec_, c.a_ / n, c.b_ / n};
    }

    FieldElem &operator+=(const FieldElem &o) {
        same_field(o);
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    FieldElem &operator-=(const FieldElem &o) {
        same_field(o);
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    FieldElem &operator*=(const FieldElem &o) {
        same_field(o);
        mpq_class bb = b_ * o.b_;
        mpq_class na = a_ * o.a_ - bb * spec_.zeta_norm;
        mpq_class nb = a_ * o.b_ + b_ * o.a_ + bb * spec_.zeta_trace;
        a_ = std::move(na);
        b_ = std::move(nb);
        return *this;
    }
    FieldElem &operator/=(const FieldElem &o) { return *this *= o.inverse(); }
    FieldElem &operator*=(const mpq_class &s) {
        a_ *= s;
        b_ *= s;
        return *this;
    }

    friend FieldElem operator+(FieldElem x, const FieldElem &y) { return x += y; }
    friend FieldElem operator-(FieldElem x, const FieldElem &y) { return x -= y; }
    friend FieldElem operator*(FieldElem x, const FieldElem &y) { return x *= y; }
    friend FieldElem operator/(FieldElem x, const FieldElem &y) { return x /= y; }
    friend FieldElem operator*(FieldElem x, const mpq_class &s) { return x *= s; }
    friend FieldElem operator*(const mpq_class &s, FieldElem x) { return x *= s; }
    friend FieldElem operator-(const FieldElem &x) { return {x.spec_, -x.a_, -x.b_}; }

    friend bool operator==(const FieldElem &x, const FieldElem &y) {
        return x.spec_ == y.spec_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const FieldElem &x, const FieldElem &y) { return !(x == y); }

    friend std::ostream &operator<<(std::ostream &os, const FieldElem &x) {
        return os << x.a_ << " + (" << x.b_ << ")*zeta";
    }

private:
    void same_field(const FieldElem &o) const {
        require(spec_ == o.spec_, ErrorKind::invalid_input, "mixing elements of different fields");
    }

    FieldSpec spec_{};
    mpq_class a_{0};
    mpq_class b_{0};
};

inline FieldElem conj(const FieldElem &e) { return e.conj(); }
inline mpq_class norm(const FieldElem &e) { return e.norm(); }
inline mpq_class trace(const FieldElem &e) { return e.trace(); }

inline bool is_integer(const mpq_class &q) { return q.get_den() == 1; }

inline bool in_OF(const FieldElem &e) { return is_integer(e.a()) && is_integer(e.b()); }

/// Membership in the inverse different delta^{-1} O_F.
inline bool in_inv_different(const FieldElem &e) {
    return in_OF(FieldElem::delta(e.spec()) * e);
}

/// |delta| = sqrt|D_F| at the current working precision.
inline Real abs_delta(const FieldSpec &spec) {
    using std::sqrt;
    return sqrt(Real(spec.abs_disc()));
}

/// zeta as a complex number (principal branch, Im > 0).
inline Cx zeta_value(const FieldSpec &spec) {
    return {Real(spec.zeta_trace) / 2, abs_delta(spec) / 2};
}

/// Complex value of a + b zeta at the current working precision.
inline Cx embed(const FieldElem &e) {
    Cx z = zeta_value(e.spec());
    Real b = to_real(e.b());
    return {to_real(e.a()) + b * z.re, b * z.im};
}

inline Cx embed(const FieldElem &e, unsigned precision_bits) {
    require(precision_bits >= 53, ErrorKind::invalid_input, "embed precision must be at least 53 bits");
    PrecisionGuard guard(precision_bits);
    return embed(e);
}

} // namespace borcherds
