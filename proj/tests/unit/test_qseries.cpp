#include <borcherds/qseries.hpp>

#include <numeric>

#include <gtest/gtest.h>

using namespace borcherds;

namespace {

// Plain power-series helpers on coefficient vectors, kept separate from QSeries.
using Vec = std::vector<mpz_class>;

Vec naive_mul(const Vec &a, const Vec &b, std::size_t n) {
    Vec c(n, 0);
    for (std::size_t i = 0; i < a.size() && i < n; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

// 1 / a for a[0] = +-1.
Vec naive_inv(const Vec &a, std::size_t n) {
    Vec b(n, 0);
    b[0] = a[0];
    for (std::size_t k = 1; k < n; ++k) {
        mpz_class s = 0;
        for (std::size_t i = 1; i <= k && i < a.size(); ++i)
            s += a[i] * b[k - i];
        b[k] = -a[0] * s;
    }
    return b;
}

mpz_class divisor_power_sum(long n, unsigned k) {
    mpz_class s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), k);
            s += p;
        }
    return s;
}

// j - 744 from E4^3 / ((E4^3 - E6^2) / 1728): coefficients of q^-1 .. q^{n-2}.
Vec j1_via_e6(std::size_t n) {
    Vec e4(n + 1), e6(n + 1);
    e4[0] = e6[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        e4[k] = 240 * divisor_power_sum(static_cast<long>(k), 3);
        e6[k] = -504 * divisor_power_sum(static_cast<long>(k), 5);
    }
    const Vec e4c = naive_mul(naive_mul(e4, e4, n + 1), e4, n + 1);
    const Vec e6s = naive_mul(e6, e6, n + 1);
    Vec delta_over_q(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        const mpz_class diff = e4c[k + 1] - e6s[k + 1];
        EXPECT_TRUE(mpz_divisible_ui_p(diff.get_mpz_t(), 1728));
        delta_over_q[k] = diff / 1728;
    }
    Vec j = naive_mul(e4c, naive_inv(delta_over_q, n), n);
    j[1] -= 744;
    return j;
}

// Hecke formula for the coefficient of q^m (m >= 1) in j_n from those of j_1.
mpz_class hecke_coeff(const QSeries &j1, long n, long m) {
    mpz_class s = 0;
    for (long a = 1; a <= std::gcd(n, m); ++a)
        if (n % a == 0 && m % a == 0)
            s += mpz_class(n / a) * j1.coeff(static_cast<int>(m * n / (a * a)));
    return s;
}

} // namespace

TEST(QSeries, GeometricInverse) {
    const QSeries one_minus_q(0, {1, -1}, 30);
    const QSeries g = one_minus_q.invert();
    for (int k = 0; k < 30; ++k)
        EXPECT_EQ(g.coeff(k), 1);
    const QSeries p = one_minus_q * g;
    EXPECT_EQ(p.coeff(0), 1);
    for (int k = 1; k < p.prec(); ++k)
        EXPECT_EQ(p.coeff(k), 0);
}

TEST(QSeries, InvertShiftedUnit) {
    const QSeries f = QSeries(0, {1, 3, -2}, 10).shift(1);
    EXPECT_EQ(f.valuation(), 1);
    const QSeries g = f.invert();
    EXPECT_EQ(g.valuation(), -1);
    const QSeries p = f * g;
    EXPECT_EQ(p.coeff(0), 1);
    for (int k = 1; k < p.prec(); ++k)
        EXPECT_EQ(p.coeff(k), 0);
}

TEST(QSeries, BinomialPower) {
    const QSeries f = QSeries(0, {1, -1}, 40).pow(24);
    mpz_class binom;
    for (unsigned k = 0; k <= 24; ++k) {
        mpz_bin_uiui(binom.get_mpz_t(), 24, k);
        EXPECT_EQ(f.coeff(static_cast<int>(k)), (k % 2 ? -binom : binom));
    }
    EXPECT_EQ(f.coeff(2), 276);
    EXPECT_EQ(f.coeff(30), 0);
}

TEST(QSeries, PrecisionTracking) {
    const QSeries f(0, {1, 1}, 10), g(-2, {1, 5}, 8);
    const QSeries h = f * g;
    EXPECT_EQ(h.prec(), 8); // min(10 - 2, 8 + 0)
    EXPECT_THROW(h.coeff(8), Error);
    EXPECT_EQ((f + g).prec(), 8);
    EXPECT_EQ(h.coeff(-5), 0);
    EXPECT_THROW(QSeries(0, {2, 1}, 5).invert(), Error);
}

TEST(QSeries, DivisorSums) {
    EXPECT_EQ(sigma(1), 1);
    EXPECT_EQ(sigma(6), 12);
    EXPECT_EQ(24 * sigma(6), 288);
    EXPECT_EQ(sigma3(2), 9);
    for (long n = 1; n <= 60; ++n) {
        EXPECT_EQ(sigma(n), divisor_power_sum(n, 1));
        EXPECT_EQ(sigma_k(n, 5), divisor_power_sum(n, 5));
    }
}

TEST(QSeries, StandardForms) {
    const QSeries d = delta_series(40);
    EXPECT_EQ(d.coeff(1), 1);
    EXPECT_EQ(d.coeff(2), -24);
    EXPECT_EQ(d.coeff(3), 252);
    EXPECT_EQ(d.coeff(11), 534612);
    EXPECT_EQ(e4_series(5).coeff(1), 240);
    const QSeries j = j_series(10);
    EXPECT_EQ(j.coeff(-1), 1);
    EXPECT_EQ(j.coeff(0), 744);
    EXPECT_EQ(j.coeff(1), 196884);
    EXPECT_EQ(j.coeff(2), 21493760);
    EXPECT_EQ(j.coeff(3), 864299970);
    EXPECT_EQ(j.coeff(4), mpz_class("20245856256"));
    EXPECT_EQ(j.coeff(5), mpz_class("333202640600"));
}

TEST(QSeries, JTwoRoutes) {
    const int N = 120;
    const QSeries j1 = faber_jn(1, N);
    const Vec other = j1_via_e6(static_cast<std::size_t>(N + 1));
    for (int m = -1; m < N; ++m)
        EXPECT_EQ(j1.coeff(m), other[static_cast<std::size_t>(m + 1)]) << "m=" << m;
}

TEST(QSeries, FaberStructure) {
    const auto basis = faber_basis(20, 60);
    for (int n = 1; n <= 20; ++n) {
        const QSeries &f = basis[static_cast<std::size_t>(n - 1)];
        EXPECT_EQ(coeff(f, -n), 1);
        for (int m = -n + 1; m <= 0; ++m)
            EXPECT_EQ(coeff(f, m), 0) << "n=" << n << " m=" << m;
        EXPECT_EQ(f.valuation(), -n);
        EXPECT_EQ(f.prec(), 60);
    }
    EXPECT_EQ(basis[1].coeff(1), 42987520);
}

TEST(QSeries, FaberMatchesHecke) {
    const auto basis = faber_basis(12, 40);
    const QSeries j1 = faber_jn(1, 12 * 40 + 1);
    for (long n = 1; n <= 12; ++n)
        for (long m = 1; m < 40; ++m)
            EXPECT_EQ(basis[static_cast<std::size_t>(n - 1)].coeff(static_cast<int>(m)), hecke_coeff(j1, n, m))
                << "n=" << n << " m=" << m;
}

TEST(QSeries, FaberDuality) {
    const auto basis = faber_basis(20, 21);
    for (long n = 1; n <= 20; ++n)
        for (long m = 1; m <= 20; ++m)
            EXPECT_EQ(m * basis[static_cast<std::size_t>(n - 1)].coeff(static_cast<int>(m)),
                      n * basis[static_cast<std::size_t>(m - 1)].coeff(static_cast<int>(n)));
}

TEST(QSeries, FaberStableUnderPrecision) {
    const auto a = faber_basis(6, 30), b = faber_basis(6, 55);
    for (std::size_t n = 0; n < 6; ++n)
        for (int m = -6; m < 30; ++m)
            EXPECT_EQ(a[n].coeff(m), b[n].coeff(m));
}
