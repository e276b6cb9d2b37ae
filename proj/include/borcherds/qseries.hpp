#pragma once

// Laurent series in q with exact integer coefficients, known to O(q^prec).
// Also: the standard forms Delta, E4, j and the Faber basis j_n of weight-0
// weakly holomorphic modular forms.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace borcherds {

class QSeries {
public:
    /// The zero series to precision `prec`.
    explicit QSeries(int prec = 0) : val_(prec), prec_(prec) {}

    /// Coefficients of q^valuation, q^(valuation+1), ...; anything beyond
    /// `prec` is dropped and missing entries below `prec` are zero.
    QSeries(int valuation, std::vector<mpz_class> coeffs, int prec)
        : val_(valuation), prec_(prec), c_(std::move(coeffs)) {
        require(valuation <= prec || c_.empty(), ErrorKind::invalid_input,
                "series valuation exceeds its precision");
        if (val_ > prec_)
            val_ = prec_;
        c_.resize(static_cast<std::size_t>(prec_ - val_));
        normalize();
    }

    static QSeries monomial(int exponent, mpz_class coeff, int prec) {
        if (exponent >= prec)
            return QSeries(prec);
        return QSeries(exponent, {std::move(coeff)}, prec);
    }

    static QSeries constant(mpz_class c, int prec) { return monomial(0, std::move(c), prec); }

    int valuation() const { return val_; }
    int prec() const { return prec_; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<mpz_class> &coefficients() const { return c_; }

    /// c(m); zero below the valuation, an error at or beyond the precision.
    mpz_class coeff(int m) const {
        require(m < prec_, ErrorKind::insufficient_precision,
                "coefficient q^" + std::to_string(m) + " requested but series is only known to O(q^" +
                    std::to_string(prec_) + ")");
        if (m < val_)
            return 0;
        return c_[static_cast<std::size_t>(m - val_)];
    }

    mpz_class leading_coeff() const {
        require(!is_zero(), ErrorKind::arithmetic, "zero series has no leading coefficient");
        return c_.front();
    }

    QSeries truncate(int prec) const {
        if (prec >= prec_)
            return *this;
        if (prec <= val_)
            return QSeries(prec);
        return QSeries(val_, std::vector<mpz_class>(c_.begin(), c_.begin() + (prec - val_)), prec);
    }

    /// Multiplication by q^k.
    QSeries shift(int k) const { return QSeries(val_ + k, c_, prec_ + k); }

    QSeries &operator+=(const QSeries &o) { return *this = combine(*this, o, 1); }
    QSeries &operator-=(const QSeries &o) { return *this = combine(*this, o, -1); }

    QSeries &operator*=(const mpz_class &s) {
        for (auto &x : c_)
            x *= s;
        normalize();
        return *this;
    }

    friend QSeries operator+(const QSeries &a, const QSeries &b) { return combine(a, b, 1); }
    friend QSeries operator-(const QSeries &a, const QSeries &b) { return combine(a, b, -1); }
    friend QSeries operator*(QSeries a, const mpz_class &s) { return a *= s; }
    friend QSeries operator*(const mpz_class &s, QSeries a) { return a *= s; }

    friend QSeries operator*(const QSeries &f, const QSeries &g) {
        if (f.is_zero() || g.is_zero()) {
            // O(q^a) * (leading q^v ...) is O(q^(a+v)); with both unknown the product is unknown.
            int p = std::min(f.prec_ + g.val_, g.prec_ + f.val_);
            return QSeries(p);
        }
        const int val = f.val_ + g.val_;
        const int prec = std::min(f.prec_ + g.val_, g.prec_ + f.val_);
        std::vector<mpz_class> out(static_cast<std::size_t>(std::max(0, prec - val)));
        const std::size_t n = out.size();
        for (std::size_t i = 0; i < f.c_.size() && i < n; ++i) {
            if (f.c_[i] == 0)
                continue;
            const std::size_t lim = std::min(g.c_.size(), n - i);
            for (std::size_t j = 0; j < lim; ++j)
                mpz_addmul(out[i + j].get_mpz_t(), f.c_[i].get_mpz_t(), g.c_[j].get_mpz_t());
        }
        return QSeries(val, std::move(out), prec);
    }
    QSeries &operator*=(const QSeries &o) { return *this = *this * o; }

    QSeries pow(unsigned e) const {
        if (e == 0)
            return QSeries::constant(1, std::max(prec_ - val_, 1));
        QSeries base = *this;
        QSeries result;
        bool first = true;
        while (e != 0) {
            if (e & 1u) {
                result = first ? base : result * base;
                first = false;
            }
            e >>= 1;
            if (e != 0)
                base = base * base;
        }
        return result;
    }

    /// 1/f for a series whose leading coefficient is a unit (+-1).
    QSeries invert() const {
        require(!is_zero(), ErrorKind::arithmetic, "cannot invert a zero series");
        const mpz_class &lead = c_.front();
        require(lead == 1 || lead == -1, ErrorKind::arithmetic,
                "cannot invert series with non-unit leading coefficient");
        const int rel = prec_ - val_;
        std::vector<mpz_class> out(static_cast<std::size_t>(rel));
        out[0] = lead;
        for (int k = 1; k < rel; ++k) {
            mpz_class s = 0;
            for (int i = 1; i <= k; ++i)
                s += c_[static_cast<std::size_t>(i)] * out[static_cast<std::size_t>(k - i)];
            out[static_cast<std::size_t>(k)] = -s * lead;
        }
        return QSeries(-val_, std::move(out), rel - val_);
    }

    friend bool operator==(const QSeries &a, const QSeries &b) {
        return a.val_ == b.val_ && a.prec_ == b.prec_ && a.c_ == b.c_;
    }

private:
    static QSeries combine(const QSeries &a, const QSeries &b, int sign) {
        const int prec = std::min(a.prec_, b.prec_);
        const int val = std::min({a.val_, b.val_, prec});
        std::vector<mpz_class> out(static_cast<std::size_t>(prec - val));
        for (int e = val; e < prec; ++e) {
            mpz_class x = e >= a.val_ ? a.c_[static_cast<std::size_t>(e - a.val_)] : mpz_class(0);
            if (e >= b.val_) {
                if (sign > 0)
                    x += b.c_[static_cast<std::size_t>(e - b.val_)];
                else
                    x -= b.c_[static_cast<std::size_t>(e - b.val_)];
            }
            out[static_cast<std::size_t>(e - val)] = std::move(x);
        }
        return QSeries(val, std::move(out), prec);
    }

    void normalize() {
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead] == 0)
            ++lead;
        if (lead == c_.size()) {
            c_.clear();
            val_ = prec_;
            return;
        }
        if (lead > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
            val_ += static_cast<int>(lead);
        }
    }

    int val_;
    int prec_;
    std::vector<mpz_class> c_;
};

// ---------------------------------------------------------------------------
// Divisor sums

inline mpz_class sigma_k(std::int64_t n, unsigned k) {
    require(n >= 1, ErrorKind::invalid_input, "divisor sum needs n >= 1");
    mpz_class s = 0, t;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), k);
        s += t;
        const std::int64_t e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(e), k);
            s += t;
        }
    }
    return s;
}

inline mpz_class sigma(std::int64_t n) { return sigma_k(n, 1); }
inline mpz_class sigma3(std::int64_t n) { return sigma_k(n, 3); }

// ---------------------------------------------------------------------------
// Standard forms

/// Delta = q prod_{m>=1} (1 - q^m)^24, known to O(q^N).
inline QSeries delta_series(int N) {
    require(N >= 2, ErrorKind::invalid_input, "delta_series needs N >= 2");
    const int rel = N - 1;
    std::vector<mpz_class> p(static_cast<std::size_t>(rel));
    p[0] = 1;
    for (int m = 1; m < rel; ++m)
        for (int e = rel - 1; e >= m; --e)
            p[static_cast<std::size_t>(e)] -= p[static_cast<std::size_t>(e - m)];
    QSeries eta_prod(0, std::move(p), rel);
    return eta_prod.pow(24).shift(1);
}

/// E4 = 1 + 240 sum sigma_3(n) q^n.
inline QSeries e4_series(int N) {
    require(N >= 1, ErrorKind::invalid_input, "e4_series needs N >= 1");
    std::vector<mpz_class> c(static_cast<std::size_t>(N));
    c[0] = 1;
    for (int n = 1; n < N; ++n)
        c[static_cast<std::size_t>(n)] = 240 * sigma3(n);
    return QSeries(0, std::move(c), N);
}

/// j = E4^3 / Delta = q^{-1} + 744 + 196884 q + ..., known to O(q^N).
inline QSeries j_series(int N) {
    require(N >= 2, ErrorKind::invalid_input, "j_series needs N >= 2");
    return (e4_series(N + 1).pow(3) * delta_series(N + 2).invert()).truncate(N);
}

/// j_1, ..., j_{n_max}, each known to O(q^N). j_n is the unique form
/// q^{-n} + O(q) obtained from j_1^n by clearing q^{-n+1}, ..., q^0.
inline std::vector<QSeries> faber_basis(int n_max, int N) {
    require(n_max >= 1, ErrorKind::invalid_input, "faber basis needs n >= 1");
    require(N >= 1, ErrorKind::invalid_input, "faber basis needs N >= 1");
    const int work = N + n_max - 1;
    const QSeries j1 = j_series(std::max(work, 2)) - QSeries::constant(744, std::max(work, 2));
    std::vector<QSeries> basis;
    basis.reserve(static_cast<std::size_t>(n_max));
    QSeries power = j1;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1)
            power = power * j1;
        QSeries f = power;
        for (int k = n - 1; k >= 1; --k) {
            const mpz_class c = f.coeff(-k);
            if (c != 0)
                f -= basis[static_cast<std::size_t>(k - 1)] * c;
        }
        const mpz_class c0 = f.coeff(0);
        if (c0 != 0)
            f -= QSeries::constant(c0, f.prec());
        basis.push_back(f.truncate(N));
    }
    return basis;
}

inline QSeries faber_jn(int n, int N) {
    require(n >= 1, ErrorKind::invalid_input, "faber_jn needs n >= 1");
    return faber_basis(n, N).back();
}

inline mpz_class coeff(const QSeries &f, int m) { return f.coeff(m); }

} // namespace borcherds
