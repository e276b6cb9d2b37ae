#pragma once

// Working-precision reals and a minimal complex type on top of them.
//
// All high-precision numerics run on `Real` (MPFR, variable precision). The
// precision of freshly created values is the process default, which is
// adjusted with `PrecisionGuard`.

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include "errors.hpp"

namespace borcherds {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

/// Sets the default MPFR precision for the lifetime of the guard.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned bits) : saved_(Real::default_precision()) {
        Real::default_precision(bits_to_digits10(bits));
    }
    ~PrecisionGuard() { Real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard &) = delete;
    PrecisionGuard &operator=(const PrecisionGuard &) = delete;

private:
    unsigned saved_;
};

/// Precision in bits of newly constructed Real values.
inline unsigned working_bits() { return static_cast<unsigned>(mpfr_get_prec(Real().backend().data())); }

/// Canonical num/den.
inline mpq_class rational(const mpz_class &num, const mpz_class &den) {
    require(den != 0, ErrorKind::arithmetic, "zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

inline Real to_real(const mpz_class &z) {
    Real r;
    mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

inline Real to_real(const mpq_class &q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

template <class T>
T pi_value() {
    using std::acos;
    return acos(T(-1));
}

template <class T>
struct Complex {
    T re{0};
    T im{0};

    Complex() = default;
    Complex(T r) : re(std::move(r)), im(0) {}
    Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

    Complex &operator+=(const Complex &o) { re += o.re; im += o.im; return *this; }
    Complex &operator-=(const Complex &o) { re -= o.re; im -= o.im; return *this; }
    Complex &operator*=(const Complex &o) {
        T r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex &operator/=(const Complex &o) {
        T den = o.re * o.re + o.im * o.im;
        require(den != 0, ErrorKind::arithmetic, "complex division by zero");
        T r = (re * o.re + im * o.im) / den;
        im = (im * o.re - re * o.im) / den;
        re = std::move(r);
        return *this;
    }
    Complex &operator*=(const T &s) { re *= s; im *= s; return *this; }

    friend Complex operator+(Complex a, const Complex &b) { return a += b; }
    friend Complex operator-(Complex a, const Complex &b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex &b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex &b) { return a /= b; }
    friend Complex operator*(Complex a, const T &s) { return a *= s; }
    friend Complex operator*(const T &s, Complex a) { return a *= s; }
    friend Complex operator-(const Complex &a) { return {-a.re, -a.im}; }
};

template <class T>
Complex<T> conj(const Complex<T> &z) { return {z.re, -z.im}; }

template <class T>
T norm(const Complex<T> &z) { return z.re * z.re + z.im * z.im; }

template <class T>
T abs(const Complex<T> &z) {
    using std::sqrt;
    return sqrt(norm(z));
}

template <class T>
T arg(const Complex<T> &z) {
    using std::atan2;
    return atan2(z.im, z.re);
}

template <class T>
Complex<T> exp(const Complex<T> &z) {
    using std::cos;
    using std::exp;
    using std::sin;
    T r = exp(z.re);
    return {r * cos(z.im), r * sin(z.im)};
}

/// Principal branch.
template <class T>
Complex<T> log(const Complex<T> &z) {
    using std::log;
    require(z.re != 0 || z.im != 0, ErrorKind::arithmetic, "log of zero");
    return {log(norm(z)) / 2, arg(z)};
}

/// e(z) = exp(2 pi i z).
template <class T>
Complex<T> e2pi(const Complex<T> &z) {
    const T two_pi = 2 * pi_value<T>();
    return exp(Complex<T>{-two_pi * z.im, two_pi * z.re});
}

using Cx = Complex<Real>;

/// Parses a plain decimal literal ("-0.25", "3", "1e-3") into an exact rational.
inline mpq_class parse_decimal(std::string_view text) {
    std::string s(text);
    require(!s.empty(), ErrorKind::invalid_input, "empty decimal literal");
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = s[pos] == '-';
        ++pos;
    }
    std::string digits;
    long exponent = 0;
    bool seen_dot = false;
    bool seen_digit = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot)
                --exponent;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if (c == 'e' || c == 'E') {
            require(seen_digit && pos + 1 < s.size(), ErrorKind::invalid_input,
                    "malformed decimal literal '" + s + "'");
            try {
                std::size_t used = 0;
                exponent += std::stol(s.substr(pos + 1), &used);
                require(pos + 1 + used == s.size(), ErrorKind::invalid_input,
                        "malformed decimal literal '" + s + "'");
            } catch (const std::logic_error &) {
                fail(ErrorKind::invalid_input, "malformed decimal literal '" + s + "'");
            }
            pos = s.size();
            break;
        } else {
            fail(ErrorKind::invalid_input, "malformed decimal literal '" + s + "'");
        }
    }
    require(seen_digit, ErrorKind::invalid_input, "malformed decimal literal '" + s + "'");
    require(exponent > -100000 && exponent < 100000, ErrorKind::invalid_input,
            "decimal exponent out of range in '" + s + "'");
    mpz_class num(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    mpq_class q = exponent < 0 ? mpq_class(num, scale) : mpq_class(num * scale);
    q.canonicalize();
    return negative ? mpq_class(-q) : q;
}

/// Fixed-format scientific rendering with `digits` significant digits.
inline std::string to_decimal(const Real &x, int digits) {
    return x.str(digits, std::ios_base::scientific);
}

} // namespace borcherds
