// Certify T_{2,k} for a few weights and push the result to T_{3,k} by the
// mod-5 table.
#include "heckemod/heckemod.hpp"
#include "heckemod/report.hpp"

#include <iostream>

int main() {
    using namespace heckemod;
    CharpolyCache cache;
    for (int k : {24, 28, 36}) {
        auto r = certify_full_symmetric(cache, 2, k);
        if (auto* c = std::get_if<Certificate>(&r)) {
            std::cout << report::certificate_text(*c);
            auto v = theorem1_conclusion(cache, 3, k, *c);
            if (v.certificate) std::cout << report::certificate_text(*v.certificate);
        } else {
            std::cout << std::get<NotFound>(r).reason << "\n";
        }
    }
}
