// Zeros of Xi(j_1) for Q(sqrt -2) near i sqrt 2, compared with the Heegner points of norm -1.
#include <borcherds/borcherds.hpp>

#include <iostream>

using namespace borcherds;

int main() {
    ProductParams p;
    p.region = ConvergenceRegion::theorem;
    PrecisionGuard guard(p.prec_bits);
    const auto s = make_field(-2);
    const auto w = chambers(-1).front();
    const auto prod = BorcherdsProduct::for_jn(s, 1, w, p);
    const Cx base(Real(0), sqrt(Real(2)));
    for (const char *shift : {"0", "0.25", "0.5", "1"}) {
        const Cx t0 = base + Cx(Real(shift));
        const auto r = winding_number(prod, t0, Real("0.05"), 64, p.prec_bits);
        std::cout << "order at " << shift << " + i sqrt2: " << r.order << " (" << r.samples << " samples)\n";
    }
    std::cout << "reduced Heegner classes of norm -1:\n";
    for (const auto &f : heegner_classes(s, -1, 3))
        std::cout << "  [" << f[0] << ", " << f[1] << ", " << f[2] << "]\n";
    const auto h = heegner_point(-FieldElem::zeta(s), FieldElem(s, 1));
    std::cout << "tau for lambda = (-zeta, 1): " << to_decimal(h.tau_value().re, 10) << " + "
              << to_decimal(h.tau_value().im, 20) << "i, conductor " << h.conductor << "\n";
}
