// Builds the classic multiplication-by-two ladder over Z and chases the snake:
// the connecting map is an isomorphism Z/2 -> Z/2.

#include <iostream>

#include "kkcalc/kkcalc.hpp"

using namespace kkcalc;

int main() {
    FgaGroup Z = FgaGroup::free_of_rank(1), Z2 = FgaGroup::cyclic(2);
    GroupMap times2 = GroupMap::multiplication(Z, 2);
    GroupMap mod2(Z, Z2, IntMatrix::from_rows({{1}}));

    LadderDiagram ladder(times2, mod2, times2, mod2, times2, times2, GroupMap::zero(Z2, Z2));
    SnakeResult r = snake(ladder);

    const char* names[6] = {"ker a", "ker b", "ker c", "coker a", "coker b", "coker c"};
    for (int i = 0; i < 6; ++i)
        std::cout << names[i] << " = " << to_string(r.sequence.groups[i]) << "\n";
    std::cout << "connecting map matrix: " << r.connecting.matrix().to_string() << "\n";
    std::cout << "sequence exact: " << (all_exact(check_exact(r.sequence)) ? "yes" : "no")
              << "\n";
    return 0;
}
