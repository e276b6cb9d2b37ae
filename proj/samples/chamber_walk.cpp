// log|Xi(j_n)| at one point from every chamber-adapted expansion. The values
// agree; the Weyl vectors and factor sets do not.
#include <borcherds/borcherds.hpp>

#include <iostream>

using namespace borcherds;

int main() {
    ProductParams p;
    p.max_kl = 60;
    PrecisionGuard guard(p.prec_bits);
    const auto s = make_field(-1);
    const Cx tau(Real("0.3"), Real(9));
    for (std::int64_t n : {1, 2, 4}) {
        std::cout << "n=" << n << "\n";
        for (const auto &w : chambers(-n)) {
            const auto prod = BorcherdsProduct::for_jn(s, n, w, p);
            const auto r = prod.evaluate(tau);
            std::cout << "  " << w.label() << "  rho=(" << prod.weyl_vector().rho1 << ", " << prod.weyl_vector().rho2
                      << ")  factors=" << prod.factors().size() << "  log|Xi|=" << to_decimal(r.log_abs, 25) << "\n";
        }
    }
}
