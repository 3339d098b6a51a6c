// Injective chromatic index of a few named graphs, with a verified witness.
#include "injec/injec.hpp"

#include <iostream>

int main() {
    using namespace injec;
    for (const char* name : {"K3", "C_5", "K4", "prism", "K33", "petersen"}) {
        Graph g = named_fixture(name);
        int k = injective_chromatic(g, SearchLimits::seconds(60));
        auto r = injective_decide(g, k);
        bool ok = r.yes() && verify_injective(g, *r.witness).empty();
        std::cout << name << ": " << k << (ok ? "" : " (witness failed)") << "\n";
    }
}
