#pragma once

// The hermitian lattice L = O_F + D_F^{-1} with <x, y> = x1 conj(y2) + x2 conj(y1).
//
// Fixed isotropic basis: ell = (1, 0), ell' = (0, -delta^{-1}), so that
// <ell, ell'> = delta^{-1} and eps = -delta <ell', ell> = 1. Every numeric
// output downstream depends on this choice.

#include <array>

#include <gmpxx.h>

#include "errors.hpp"
#include "numeric.hpp"
#include "qfield.hpp"

namespace borcherds {

/// A vector of F^2 in ambient coordinates. Lattice membership is a property,
/// not an invariant, so the type can also hold rational multiples.
class LatticeVector {
public:
    LatticeVector() = default;
    LatticeVector(FieldElem x1, FieldElem x2) : x1_(std::move(x1)), x2_(std::move(x2)) {
        require(x1_.spec() == x2_.spec(), ErrorKind::invalid_input, "coordinates from different fields");
    }

    /// lambda = l1 ell + l2 ell'.
    static LatticeVector from_ell_coords(const FieldElem &l1, const FieldElem &l2) {
        return {l1, -(FieldElem::delta_inverse(l2.spec()) * l2)};
    }

    const FieldSpec &spec() const { return x1_.spec(); }
    const FieldElem &x1() const { return x1_; }
    const FieldElem &x2() const { return x2_; }

    FieldElem l1() const { return x1_; }
    FieldElem l2() const { return -(FieldElem::delta(spec()) * x2_); }

    bool in_lattice() const { return in_OF(x1_) && in_inv_different(x2_); }

    friend LatticeVector operator+(const LatticeVector &a, const LatticeVector &b) {
        return {a.x1_ + b.x1_, a.x2_ + b.x2_};
    }
    friend LatticeVector operator-(const LatticeVector &a, const LatticeVector &b) {
        return {a.x1_ - b.x1_, a.x2_ - b.x2_};
    }
    /// Scalar multiplication (the mu-hat action for mu in F).
    friend LatticeVector operator*(const FieldElem &mu, const LatticeVector &v) {
        return {mu * v.x1_, mu * v.x2_};
    }
    friend LatticeVector operator*(const mpq_class &s, const LatticeVector &v) {
        return {s * v.x1_, s * v.x2_};
    }
    friend bool operator==(const LatticeVector &a, const LatticeVector &b) {
        return a.x1_ == b.x1_ && a.x2_ == b.x2_;
    }

private:
    FieldElem x1_;
    FieldElem x2_;
};

inline LatticeVector ell(const FieldSpec &spec) { return {FieldElem(spec, 1), FieldElem(spec)}; }

inline LatticeVector ell_prime(const FieldSpec &spec) {
    return {FieldElem(spec), -FieldElem::delta_inverse(spec)};
}

inline FieldElem herm(const LatticeVector &x, const LatticeVector &y) {
    return x.x1() * conj(y.x2()) + x.x2() * conj(y.x1());
}

inline mpq_class bilinear(const LatticeVector &x, const LatticeVector &y) { return trace(herm(x, y)); }

/// Q(x) = <x, x>; the hermitian norm is real so only the rational part survives.
inline mpq_class qform(const LatticeVector &x) {
    FieldElem h = herm(x, x);
    require(h.b() == 0, ErrorKind::internal, "hermitian norm is not rational");
    return h.a();
}

/// Z-basis of L: 1, zeta in the first slot and delta^{-1}, zeta delta^{-1} in the second.
inline std::array<LatticeVector, 4> lattice_generators(const FieldSpec &spec) {
    FieldElem zero(spec), one(spec, 1), zeta = FieldElem::zeta(spec);
    FieldElem dinv = FieldElem::delta_inverse(spec);
    return {LatticeVector{one, zero}, LatticeVector{zeta, zero}, LatticeVector{zero, dinv},
            LatticeVector{zero, zeta * dinv}};
}

using Gram4 = std::array<std::array<mpq_class, 4>, 4>;

template <class Vectors>
Gram4 gram_matrix(const Vectors &v) {
    Gram4 g;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            g[i][j] = bilinear(v[i], v[j]);
    return g;
}

inline mpq_class determinant(Gram4 m) {
    mpq_class det = 1;
    for (std::size_t c = 0; c < 4; ++c) {
        std::size_t p = c;
        while (p < 4 && m[p][c] == 0)
            ++p;
        if (p == 4)
            return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < 4; ++r) {
            mpq_class f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < 4; ++k)
                m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

/// e1 = ell, e3 = -zeta ell, e2 = (zeta / (delta <ell', ell>)) ell', e4 = (1 / (delta <ell', ell>)) ell'.
inline std::array<LatticeVector, 4> ebasis(const FieldSpec &spec) {
    const LatticeVector l = ell(spec), lp = ell_prime(spec);
    const FieldElem zeta = FieldElem::zeta(spec);
    const FieldElem scale = (FieldElem::delta(spec) * herm(lp, l)).inverse();
    return {l, (zeta * scale) * lp, -zeta * l, scale * lp};
}

// ---------------------------------------------------------------------------
// Complex model

struct CxPair {
    Cx x1;
    Cx x2;
};

inline CxPair embed(const LatticeVector &v) { return {embed(v.x1()), embed(v.x2())}; }

inline CxPair operator*(const Cx &mu, const CxPair &v) { return {mu * v.x1, mu * v.x2}; }
inline CxPair operator+(const CxPair &a, const CxPair &b) { return {a.x1 + b.x1, a.x2 + b.x2}; }

inline Cx herm(const CxPair &v, const CxPair &w) { return v.x1 * conj(w.x2) + v.x2 * conj(w.x1); }

/// (v, w) = 2 Re <v, w>.
inline Real real_bilinear(const CxPair &v, const CxPair &w) { return 2 * herm(v, w).re; }

/// z(tau) = ell' - tau delta <ell', ell> ell = ell' + tau ell.
inline CxPair z_of_tau(const Cx &tau, const FieldSpec &spec) {
    require(tau.im > 0, ErrorKind::invalid_input, "tau must lie in the upper half-plane");
    return {tau, -embed(FieldElem::delta_inverse(spec))};
}

/// Point of the tube domain H x H in (e3, e4) coordinates.
struct TubePoint {
    Cx z1;
    Cx z2;
};

/// tau -> (tau, -conj(zeta)).
inline TubePoint embed_tau(const Cx &tau, const FieldSpec &spec) {
    require(tau.im > 0, ErrorKind::invalid_input, "tau must lie in the upper half-plane");
    return {tau, -conj(zeta_value(spec))};
}

inline std::array<Real, 2> Y_of_tau(const Cx &tau, const FieldSpec &spec) {
    require(tau.im > 0, ErrorKind::invalid_input, "tau must lie in the upper half-plane");
    return {tau.im, abs_delta(spec) / 2};
}

using Cx4 = std::array<Cx, 4>;

/// Z_L = -Q(Z) e1 + e2 + Z in e-basis coordinates; Q(z1 e3 + z2 e4) = z1 z2.
inline Cx4 ZL_of_Z(const TubePoint &Z) {
    require(Z.z1.im > 0 && Z.z2.im > 0, ErrorKind::invalid_input, "Z must lie in H x H");
    return {-(Z.z1 * Z.z2), Cx(Real(1)), Z.z1, Z.z2};
}

/// C-bilinear extension of the form in e-basis coordinates (two hyperbolic planes).
inline Cx ebasis_bilinear(const Cx4 &x, const Cx4 &y) {
    return x[0] * y[1] + x[1] * y[0] + x[2] * y[3] + x[3] * y[2];
}

inline Cx4 conj(const Cx4 &x) { return {conj(x[0]), conj(x[1]), conj(x[2]), conj(x[3])}; }

/// Maps real e-basis coordinates to ambient complex coordinates.
inline CxPair ambient_from_ecoords(const std::array<Real, 4> &c, const FieldSpec &spec) {
    const auto e = ebasis(spec);
    CxPair out{Cx(), Cx()};
    for (std::size_t i = 0; i < 4; ++i)
        out = out + Cx(c[i]) * embed(e[i]);
    return out;
}

/// Real and imaginary parts of Z_L as vectors of the real space, in ambient coordinates.
inline std::array<CxPair, 2> split_ZL(const Cx4 &zl, const FieldSpec &spec) {
    std::array<Real, 4> re, im;
    for (std::size_t i = 0; i < 4; ++i) {
        re[i] = zl[i].re;
        im[i] = zl[i].im;
    }
    return {ambient_from_ecoords(re, spec), ambient_from_ecoords(im, spec)};
}

} // namespace borcherds
