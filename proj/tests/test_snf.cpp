#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "kkcalc/snf.hpp"

using namespace kkcalc;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t max_dim, int entry_range) {
    std::uniform_int_distribution<std::size_t> dim(0, max_dim);
    std::uniform_int_distribution<int> val(-entry_range, entry_range);
    IntMatrix m(dim(rng), dim(rng));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = val(rng);
    return m;
}

void check_snf(const IntMatrix& a) {
    SnfDecomposition s = snf(a);
    REQUIRE(s.u * a * s.v == s.d);
    REQUIRE(abs_int(determinant(s.u)) == 1);
    REQUIRE(abs_int(determinant(s.v)) == 1);
    REQUIRE(s.u * s.u_inv == IntMatrix::identity(a.rows()));
    auto diag = s.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) {
        REQUIRE(diag[i] >= 0);
        if (i > 0 && diag[i - 1] != 0) {
            if (diag[i] != 0) REQUIRE(diag[i] % diag[i - 1] == 0);
        }
        if (i > 0 && diag[i - 1] == 0) REQUIRE(diag[i] == 0);
    }
    // off-diagonal zero
    for (std::size_t i = 0; i < s.d.rows(); ++i)
        for (std::size_t j = 0; j < s.d.cols(); ++j)
            if (i != j) REQUIRE(s.d(i, j) == 0);
}

}  // namespace

TEST_CASE("snf of the 2x2 worked example") {
    IntMatrix a = IntMatrix::from_rows({{2, 4}, {6, 8}});
    SnfDecomposition s = snf(a);
    REQUIRE(s.d(0, 0) == 2);
    REQUIRE(s.d(1, 1) == 4);
    check_snf(a);
}

TEST_CASE("snf total on empty and degenerate shapes") {
    check_snf(IntMatrix(0, 0));
    check_snf(IntMatrix(0, 3));
    check_snf(IntMatrix(3, 0));
    check_snf(IntMatrix(2, 5));  // zero matrix
}

TEST_CASE("snf of the identity is the identity") {
    IntMatrix i3 = IntMatrix::identity(3);
    SnfDecomposition s = snf(i3);
    REQUIRE(s.d == i3);
}

TEST_CASE("snf on random matrices") {
    std::mt19937_64 rng(20240801);
    for (int iter = 0; iter < 300; ++iter) check_snf(random_matrix(rng, 6, 30));
}

TEST_CASE("snf survives adversarial coefficient growth") {
    // dense matrix with mixed magnitudes; exactness is what matters
    IntMatrix a = IntMatrix::from_rows({{840, -631, 999, 123},
                                        {-777, 604, -55, 412},
                                        {500, 201, -998, -3},
                                        {64, -128, 256, -512}});
    check_snf(a);
}

TEST_CASE("kernel_basis spans the kernel") {
    IntMatrix a = IntMatrix::from_rows({{1, 2, 3}, {2, 4, 6}});
    IntMatrix k = kernel_basis(a);
    REQUIRE(k.cols() == 2);
    REQUIRE((a * k).is_zero());
}

TEST_CASE("solve_linear finds solutions and detects inconsistency") {
    IntMatrix a = IntMatrix::from_rows({{2, 0}, {0, 3}});
    auto sol = solve_linear(a, {Int(4), Int(9)});
    REQUIRE(sol);
    REQUIRE(a * sol->particular == Elem{Int(4), Int(9)});
    REQUIRE_FALSE(solve_linear(a, {Int(1), Int(0)}));

    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 100; ++iter) {
        IntMatrix m = random_matrix(rng, 5, 9);
        if (m.cols() == 0) continue;
        std::uniform_int_distribution<int> val(-5, 5);
        Elem x(m.cols());
        for (auto& v : x) v = val(rng);
        auto s = solve_linear(m, m * x);
        REQUIRE(s);
        REQUIRE(m * s->particular == m * x);
        REQUIRE((m * s->kernel).is_zero());
    }
}
