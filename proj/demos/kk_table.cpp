// Prints a small table of KK groups for a pair of graded K-theory groups,
// split into Hom and Ext parts, plus the four-way torsion/free reduction.

#include <iostream>

#include "kkcalc/kkcalc.hpp"

using namespace kkcalc;

int main(int argc, char** argv) {
    const char* a_text = argc > 1 ? argv[1] : "[Z + Z/4 ; Z/9]";
    const char* b_text = argc > 2 ? argv[2] : "[Z/6 ; Z]";
    GradedGroup ka = parse_graded(a_text);
    GradedGroup kb = parse_graded(b_text);

    std::cout << "K(A) = " << print_graded(ka) << "\n";
    std::cout << "K(B) = " << print_graded(kb) << "\n\n";
    for (int j = 0; j < 2; ++j) {
        UctResult u = kk(ka, kb, j);
        std::cout << "KK_" << j << " = " << to_string(u.total) << "   (Hom "
                  << to_string(u.hom_part) << ", Ext " << to_string(u.ext_part) << ")\n";
        FourWaySplit fw = four_way(ka, kb, j);
        std::cout << "  corners: tt " << to_string(fw.tt.total) << ", tf "
                  << to_string(fw.tf.total) << ", ft " << to_string(fw.ft.total) << ", ff "
                  << to_string(fw.ff.total) << (fw.matches ? "  [assembly verified]" : "") << "\n";
    }
    return 0;
}
