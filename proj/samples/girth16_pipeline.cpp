// Subdivide cubic graphs until girth >= 16, then 3-color them via the auxiliary graph.
#include "injec/injec.hpp"

#include <iostream>

int main() {
    using namespace injec;
    for (const char* name : {"K4", "prism", "cube"}) {
        Graph g = subdivide(named_fixture(name), 7);
        auto r = girth16_color(g);
        std::cout << name << " subdivided: " << g.vertex_count() << " vertices, girth " << girth(g).str() << ", "
                  << to_string(r.answer);
        if (r.yes()) std::cout << ", verified=" << verify_injective(g, *r.witness).empty();
        std::cout << "\n";
    }
}
