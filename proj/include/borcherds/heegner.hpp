#pragma once

// Heegner points tau_lambda for negative-norm lattice vectors
// lambda = l1 ell + l2 ell' (l1, l2 in O_F), their minimal polynomials and
// CM conductors.
//
// <z(tau), lambda> = delta^{-1} (tau conj(l2) - conj(l1)), so
// tau_lambda = conj(l1 / l2) and it is a root of
//   N(l2) tau^2 - tr(l1 conj(l2)) tau + N(l1) = 0.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "hermlattice.hpp"
#include "qfield.hpp"

namespace borcherds {

struct HeegnerPoint {
    FieldElem l1;
    FieldElem l2;
    std::int64_t m = 0;   // <lambda, lambda>
    mpz_class A, B, C;    // A tau^2 + B tau + C = 0 before dividing out the content
    mpz_class q;          // gcd(A, B, C)
    mpz_class conductor;  // |m| / q
    FieldElem tau;        // exact point, conj(l1 / l2)

    mpz_class discriminant() const { return B * B - 4 * A * C; }
    std::array<mpz_class, 3> primitive_form() const { return {A / q, B / q, C / q}; }
    std::array<mpz_class, 4> lambda_coords() const {
        return {l1.a().get_num(), l1.b().get_num(), l2.a().get_num(), l2.b().get_num()};
    }
    Cx tau_value() const { return embed(tau); }
};

/// m = <lambda, lambda> = 2 Im(l1 conj(l2)) / |delta|, which is the zeta
/// coordinate of l1 conj(l2).
inline mpq_class heegner_norm(const FieldElem &l1, const FieldElem &l2) { return (l1 * conj(l2)).b(); }

inline HeegnerPoint heegner_point(const FieldElem &l1, const FieldElem &l2) {
    require(l1.spec() == l2.spec(), ErrorKind::invalid_input, "coordinates from different fields");
    require(in_OF(l1) && in_OF(l2), ErrorKind::invalid_input, "lambda coordinates must lie in O_F");
    require(!l2.is_zero(), ErrorKind::degenerate,
            "lambda is proportional to the cusp vector ell and has no Heegner point");
    const mpq_class mq = heegner_norm(l1, l2);
    require(is_integer(mq) && mq < 0, ErrorKind::invalid_input,
            "lambda has norm " + mq.get_str() + ", not a Heegner vector (need negative norm)");
    HeegnerPoint h;
    h.l1 = l1;
    h.l2 = l2;
    h.m = mq.get_num().get_si();
    h.A = norm(l2).get_num();
    h.B = -trace(l1 * conj(l2)).get_num();
    h.C = norm(l1).get_num();
    mpz_gcd(h.q.get_mpz_t(), h.A.get_mpz_t(), h.B.get_mpz_t());
    mpz_gcd(h.q.get_mpz_t(), h.q.get_mpz_t(), h.C.get_mpz_t());
    const mpz_class abs_m = -h.m;
    require(abs_m % h.q == 0, ErrorKind::internal, "content does not divide |m|");
    h.conductor = abs_m / h.q;
    h.tau = conj(l1 / l2);
    return h;
}

struct CMOrder {
    mpz_class conductor;
    std::string description;
};

inline CMOrder cm_order(const HeegnerPoint &h) {
    return {h.conductor, h.conductor == 1 ? std::string("O_F") : "Z + " + h.conductor.get_str() + "*O_F"};
}

/// SL2(Z)-reduction: moves tau into the standard fundamental domain by acting
/// on lambda, so the primitive form ends with |B'| <= A' <= C' (B' >= 0 on the boundary).
inline HeegnerPoint reduce_point(const HeegnerPoint &h) {
    FieldElem l1 = h.l1, l2 = h.l2;
    mpz_class A = h.A, B = h.B, C = h.C;
    for (;;) {
        // tau -> tau + k: l1 -> l1 + k l2, B -> B - 2kA, C -> C - kB + k^2 A.
        mpz_class k, num = B - A, den = 2 * A;
        mpz_cdiv_q(k.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (k != 0) {
            l1 += l2 * mpq_class(k);
            C = C - k * B + k * k * A;
            B -= 2 * k * A;
        }
        if (A > C) {
            // tau -> -1/tau: (l1, l2) -> (-l2, l1).
            FieldElem t = -l2;
            l2 = l1;
            l1 = t;
            std::swap(A, C);
            B = -B;
            continue;
        }
        break;
    }
    if (A == C && B < 0) {
        FieldElem t = -l2;
        l2 = l1;
        l1 = t;
        B = -B;
    }
    return heegner_point(l1, l2);
}

struct HeegnerEnumeration {
    std::vector<HeegnerPoint> points; // one of each pair lambda, -lambda
    std::size_t raw_count = 0;        // both signs counted
};

inline bool positive_representative(const std::array<std::int64_t, 4> &c) {
    for (std::int64_t x : c)
        if (x != 0)
            return x > 0;
    return false;
}

inline auto heegner_sort_key(const HeegnerPoint &h) {
    const auto f = h.primitive_form();
    const auto l = h.lambda_coords();
    return std::make_tuple(f[0], f[1], f[2], l[0], l[1], l[2], l[3]);
}

/// All lambda = (a + b zeta) ell + (c + e zeta) ell' with max(|a|,|b|,|c|,|e|) <= bound
/// and <lambda, lambda> = m, modulo lambda ~ -lambda, sorted by (A', B', C', a, b, c, e).
inline HeegnerEnumeration enumerate_heegner(const FieldSpec &spec, std::int64_t m, std::int64_t coord_bound) {
    require(m < 0, ErrorKind::invalid_input, "enumerate_heegner needs m < 0");
    require(coord_bound >= 1, ErrorKind::invalid_input, "coordinate bound must be >= 1");
    require(coord_bound <= 200, ErrorKind::invalid_input, "coordinate bound too large (max 200)");
    HeegnerEnumeration out;
    const std::int64_t B = coord_bound;
    for (std::int64_t a = -B; a <= B; ++a)
        for (std::int64_t b = -B; b <= B; ++b)
            for (std::int64_t c = -B; c <= B; ++c)
                for (std::int64_t e = -B; e <= B; ++e) {
                    // norm of lambda is the zeta coordinate of l1 conj(l2) = bc - ae
                    if (b * c - a * e != m || (c == 0 && e == 0))
                        continue;
                    ++out.raw_count;
                    if (!positive_representative({a, b, c, e}))
                        continue;
                    out.points.push_back(heegner_point(FieldElem(spec, a, b), FieldElem(spec, c, e)));
                }
    std::sort(out.points.begin(), out.points.end(),
              [](const HeegnerPoint &x, const HeegnerPoint &y) { return heegner_sort_key(x) < heegner_sort_key(y); });
    return out;
}

/// Distinct reduced primitive forms among the enumerated points.
inline std::set<std::array<mpz_class, 3>> heegner_classes(const FieldSpec &spec, std::int64_t m,
                                                          std::int64_t coord_bound) {
    std::set<std::array<mpz_class, 3>> classes;
    for (const auto &h : enumerate_heegner(spec, m, coord_bound).points)
        classes.insert(reduce_point(h).primitive_form());
    return classes;
}

} // namespace borcherds
