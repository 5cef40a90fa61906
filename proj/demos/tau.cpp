// Ramanujan's tau(n) for n <= 30 and a couple of Hecke polynomials.
#include "heckemod/heckemod.hpp"

#include <iostream>

int main() {
    using namespace heckemod;
    const auto d = delta(31);
    for (int n = 1; n <= 30; ++n) std::cout << "tau(" << n << ") = " << to_decimal(d[n]) << "\n";

    SeriesTable table;
    for (int k : {24, 36})
        std::cout << "T_{2," << k << "}(x) = " << charpoly({2, k}, table).to_string() << "\n";
    std::cout << "T_{2,24}(x) mod 5 = " << factor(reduce_mod(charpoly({2, 24}, table), 5)).to_string() << "\n";
}
