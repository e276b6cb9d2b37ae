#pragma once

// Named invariant suites, used by the command-line `check` command.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "heegner.hpp"
#include "hermlattice.hpp"
#include "product.hpp"
#include "qseries.hpp"
#include "weyl.hpp"

namespace borcherds {

struct CheckResult {
    std::string suite;
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

using Check = std::function<std::string()>; // returns an empty string on success

inline CheckResult run_check(const std::string &suite, const std::string &name, const Check &check) {
    try {
        const std::string failure = check();
        return {suite, name, failure.empty(), failure.empty() ? "ok" : failure};
    } catch (const std::exception &e) {
        return {suite, name, false, std::string("exception: ") + e.what()};
    }
}

inline std::vector<std::pair<std::string, Check>> field_checks() {
    return {
        {"norm_multiplicative",
         [] {
             std::mt19937_64 rng(1);
             std::uniform_int_distribution<int> c(-50, 50);
             for (long d : {-1L, -2L, -3L, -7L, -15L}) {
                 const auto s = make_field(d);
                 for (int i = 0; i < 200; ++i) {
                     const FieldElem x(s, c(rng), c(rng)), y(s, c(rng), c(rng));
                     if (norm(x * y) != norm(x) * norm(y))
                         return "d=" + std::to_string(d);
                 }
             }
             return std::string();
         }},
        {"conj_involution",
         [] {
             for (long d : {-1L, -2L, -3L, -7L}) {
                 const auto s = make_field(d);
                 const FieldElem x(s, mpq_class(3, 7), mpq_class(-5, 2));
                 if (conj(conj(x)) != x)
                     return "d=" + std::to_string(d);
             }
             return std::string();
         }},
        {"inverse_different_trace_dual",
         [] {
             for (long d : {-1L, -2L, -3L, -7L}) {
                 const auto s = make_field(d);
                 for (int a = -8; a <= 8; ++a)
                     for (int b = -8; b <= 8; ++b) {
                         const FieldElem x(s, mpq_class(a, 4), mpq_class(b, 4));
                         const bool dual =
                             is_integer(trace(x)) && is_integer(trace(x * FieldElem::zeta(s)));
                         if (dual != in_inv_different(x))
                             return "d=" + std::to_string(d);
                     }
             }
             return std::string();
         }},
    };
}

inline std::vector<std::pair<std::string, Check>> lattice_checks() {
    return {
        {"ebasis_gram",
         [] {
             for (long d : {-1L, -2L, -3L, -7L, -11L}) {
                 const auto g = gram_matrix(ebasis(make_field(d)));
                 for (int i = 0; i < 4; ++i)
                     for (int j = 0; j < 4; ++j)
                         if (g[i][j] != (((i ^ j) == 1 && i / 2 == j / 2) ? 1 : 0))
                             return "d=" + std::to_string(d);
             }
             return std::string();
         }},
        {"unimodular_even",
         [] {
             for (long d : {-1L, -2L, -3L, -7L, -11L}) {
                 const auto s = make_field(d);
                 const auto g = lattice_generators(s);
                 if (determinant(gram_matrix(g)) != 1)
                     return "det d=" + std::to_string(d);
                 for (const auto &v : g)
                     if (!is_integer(qform(v)))
                         return "odd d=" + std::to_string(d);
             }
             return std::string();
         }},
        {"hyperbolic_qform",
         [] {
             const auto s = make_field(-7);
             const auto e = ebasis(s);
             for (long l = -5; l <= 5; ++l)
                 for (long k = -5; k <= 5; ++k)
                     if (qform(mpq_class(l) * e[2] + mpq_class(k) * e[3]) != l * k)
                         return std::string("Q(l e3 + k e4) != lk");
             return std::string();
         }},
    };
}

inline std::vector<std::pair<std::string, Check>> qexp_checks() {
    return {
        {"j_coefficients",
         [] {
             const QSeries j = j_series(4);
             if (j.coeff(0) != 744 || j.coeff(1) != 196884 || j.coeff(2) != 21493760)
                 return std::string("j coefficients");
             return std::string();
         }},
        {"faber_structure",
         [] {
             const auto basis = faber_basis(20, 40);
             for (int n = 1; n <= 20; ++n) {
                 const auto &f = basis[static_cast<std::size_t>(n - 1)];
                 if (f.coeff(-n) != 1)
                     return "lead n=" + std::to_string(n);
                 for (int m = -n + 1; m <= 0; ++m)
                     if (f.coeff(m) != 0)
                         return "principal part n=" + std::to_string(n);
             }
             return std::string();
         }},
        {"faber_duality",
         [] {
             const auto basis = faber_basis(12, 13);
             for (int n = 1; n <= 12; ++n)
                 for (int m = 1; m <= 12; ++m)
                     if (m * basis[static_cast<std::size_t>(n - 1)].coeff(m) !=
                         n * basis[static_cast<std::size_t>(m - 1)].coeff(n))
                         return "n=" + std::to_string(n) + " m=" + std::to_string(m);
             return std::string();
         }},
    };
}

inline std::vector<std::pair<std::string, Check>> weyl_checks() {
    return {
        {"chamber_count",
         [] {
             for (std::int64_t m = -1; m >= -30; --m)
                 if (chambers(m).size() != divisors(-m).size() + 1)
                     return "m=" + std::to_string(m);
             return std::string();
         }},
        {"weyl_identity",
         [] {
             std::mt19937_64 rng(5);
             std::uniform_int_distribution<int> num(1, 999);
             for (std::int64_t m = -1; m >= -12; --m)
                 for (const auto &w : chambers(m))
                     for (int i = 0; i < 20; ++i) {
                         const mpq_class hi = w.ratio_hi() ? *w.ratio_hi() : w.ratio_lo() + 20;
                         const mpq_class r = w.ratio_lo() + (hi - w.ratio_lo()) * mpq_class(num(rng)) / 1000;
                         const double y1 = r.get_d(), y2 = 1.0;
                         const double err =
                             std::abs(phi_K(m, y1, y2) - weyl_identity_value(y1, y2, weyl_vector_Fm(m, w)));
                         if (err > 1e-10)
                             return "m=" + std::to_string(m) + " " + w.label();
                     }
             return std::string();
         }},
        {"weyl_vector_shift",
         [] {
             for (std::int64_t n = 1; n <= 30; ++n)
                 for (const auto &w : chambers(-n)) {
                     const auto d = weyl_vector_Fm(-n, w) - weyl_vector_jn(n, w);
                     if (d.rho1 != d.rho2 || d.rho1 != mpq_class(sigma(n)))
                         return "n=" + std::to_string(n);
                 }
             return std::string();
         }},
        {"whittaker",
         [] {
             for (std::int64_t m : {-1, -2, -6})
                 for (double Q : {0.5, 1.0, 10.0}) {
                     const auto r = whittaker_check(m, Q);
                     if (std::abs(r.numeric - r.closed_form) > 1e-8)
                         return "m=" + std::to_string(m);
                 }
             return std::string();
         }},
    };
}

inline std::vector<std::pair<std::string, Check>> heegner_checks() {
    return {
        {"worked_examples",
         [] {
             const auto s = make_field(-1);
             const FieldElem z = FieldElem::zeta(s);
             const auto a = heegner_point(-z, FieldElem(s, 1));
             const auto b = heegner_point(-z * mpq_class(2), FieldElem(s, 1));
             const auto c = heegner_point(-z * mpq_class(2), FieldElem(s, 2));
             if (a.conductor != 1 || b.conductor != 2 || c.conductor != 1)
                 return std::string("conductors");
             return std::string();
         }},
        {"reduction_invariants",
         [] {
             std::mt19937_64 rng(7);
             std::uniform_int_distribution<int> c(-25, 25);
             const auto s = make_field(-7);
             for (int i = 0; i < 300;) {
                 const FieldElem l1(s, c(rng), c(rng)), l2(s, c(rng), c(rng));
                 if (l2.is_zero() || heegner_norm(l1, l2) >= 0)
                     continue;
                 ++i;
                 const auto h = heegner_point(l1, l2);
                 const auto r = reduce_point(h);
                 if (r.conductor != h.conductor || r.discriminant() != h.discriminant())
                     return std::string("reduction changed invariants");
                 if (h.discriminant() != mpz_class(h.m) * h.m * s.disc)
                     return std::string("discriminant");
             }
             return std::string();
         }},
    };
}

inline std::vector<std::pair<std::string, Check>> borcherds_checks(unsigned prec_bits) {
    return {
        {"constant_lift",
         [prec_bits] {
             ProductParams p;
             p.prec_bits = prec_bits;
             PrecisionGuard g(prec_bits);
             for (long d : {-1L, -2L, -3L, -7L}) {
                 const auto s = make_field(d);
                 const Cx tau(Real(1) / 3, Real(2));
                 const Cx a = xi_f(tau, s, QSeries::constant(1, p.max_kl + 1), 1, 1, p).value;
                 const Cx b = xi_const(tau, s, p).value;
                 if (abs(a - b) / abs(b) > Real("1e-10"))
                     return "d=" + std::to_string(d);
             }
             return std::string();
         }},
        {"chamber_consistency",
         [prec_bits] {
             ProductParams p;
             p.prec_bits = prec_bits;
             p.region = ConvergenceRegion::theorem;
             PrecisionGuard g(prec_bits);
             const auto s = make_field(-1);
             for (std::int64_t n : {1, 2}) {
                 const Cx tau(Real("0.3"), Real(4));
                 std::vector<Real> mods;
                 for (const auto &w : chambers(-n))
                     mods.push_back(xi_jn(tau, s, n, w, p).log_abs);
                 for (const auto &x : mods)
                     if (abs(x - mods.front()) > Real("1e-8"))
                         return "n=" + std::to_string(n);
             }
             return std::string();
         }},
        {"zero_order",
         [prec_bits] {
             ProductParams p;
             p.prec_bits = prec_bits;
             p.region = ConvergenceRegion::theorem;
             PrecisionGuard g(prec_bits);
             const auto s = make_field(-2);
             const Cx t0(Real(0), sqrt(Real(2)));
             const auto w = chambers(-1).front();
             if (zero_order(t0, s, 1, w, Real("0.05"), 64, p) != 1)
                 return std::string("order at i sqrt2");
             if (zero_order(t0 + Cx(Real("0.5")), s, 1, w, Real("0.05"), 64, p) != 0)
                 return std::string("order at 1/2 + i sqrt2");
             return std::string();
         }},
    };
}

} // namespace detail

inline std::vector<std::string> check_suite_names() {
    return {"field", "lattice", "qexp", "weyl", "heegner", "borcherds", "all"};
}

inline std::vector<CheckResult> run_suite(const std::string &suite, unsigned prec_bits = 128) {
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, detail::Check>>>> groups;
    auto want = [&](const char *name) { return suite == name || suite == "all"; };
    if (want("field"))
        groups.emplace_back("field", detail::field_checks());
    if (want("lattice"))
        groups.emplace_back("lattice", detail::lattice_checks());
    if (want("qexp"))
        groups.emplace_back("qexp", detail::qexp_checks());
    if (want("weyl"))
        groups.emplace_back("weyl", detail::weyl_checks());
    if (want("heegner"))
        groups.emplace_back("heegner", detail::heegner_checks());
    if (want("borcherds"))
        groups.emplace_back("borcherds", detail::borcherds_checks(prec_bits));
    require(!groups.empty(), ErrorKind::invalid_input, "unknown suite '" + suite + "'");
    std::vector<CheckResult> out;
    for (const auto &[name, checks] : groups)
        for (const auto &[check_name, check] : checks)
            out.push_back(detail::run_check(name, check_name, check));
    return out;
}

} // namespace borcherds
