// Coefficients of the basis forms j_1, ..., j_5.
#include <borcherds/borcherds.hpp>

#include <iostream>

using namespace borcherds;

int main() {
    const int upto = 6;
    const auto basis = faber_basis(5, upto + 1);
    for (int n = 1; n <= 5; ++n) {
        std::cout << "j_" << n << " = q^-" << n;
        for (int m = 1; m <= upto; ++m)
            std::cout << " + " << basis[static_cast<std::size_t>(n - 1)].coeff(m) << " q^" << m;
        std::cout << " + ...\n";
    }
}
