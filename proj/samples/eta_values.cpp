// eta(tau) at a few CM points, and the constant lift eta(tau) eta(-conj zeta).
#include <borcherds/borcherds.hpp>

#include <iostream>

using namespace borcherds;

int main() {
    PrecisionGuard guard(160);
    const Cx points[] = {Cx(Real(0), Real(1)), Cx(Real(0), Real(2)), Cx(Real("-0.5"), sqrt(Real(3)) / 2)};
    for (const Cx &tau : points) {
        const Cx e = eta(tau);
        std::cout << "eta(" << to_decimal(tau.re, 6) << " + " << to_decimal(tau.im, 6) << "i) = " << to_decimal(e.re, 40)
                  << " + " << to_decimal(e.im, 40) << "i\n";
    }
    ProductParams p;
    p.prec_bits = 160;
    for (long d : {-1L, -2L, -3L, -7L}) {
        const auto r = xi_const(Cx(Real(0), Real(1)), make_field(d), p);
        std::cout << "d=" << d << "  Xi(i; 1) = " << to_decimal(r.value.re, 30) << " + " << to_decimal(r.value.im, 30)
                  << "i  weight " << r.weight << "\n";
    }
}
