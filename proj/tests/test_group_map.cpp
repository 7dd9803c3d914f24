#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "kkcalc/group_map.hpp"
#include "random_gen.hpp"

using namespace kkcalc;

TEST_CASE("GroupMap validates well-definedness") {
    // Z/2 -> Z/4 must send the generator to an element of order dividing 2
    REQUIRE_THROWS_AS(GroupMap(FgaGroup::cyclic(2), FgaGroup::cyclic(4),
                               IntMatrix::from_rows({{1}})),
                      ValidationError);
    REQUIRE_NOTHROW(GroupMap(FgaGroup::cyclic(2), FgaGroup::cyclic(4),
                             IntMatrix::from_rows({{2}})));
    // torsion cannot hit a free generator
    REQUIRE_THROWS_AS(GroupMap(FgaGroup::cyclic(2), FgaGroup::free_of_rank(1),
                               IntMatrix::from_rows({{1}})),
                      ValidationError);
    // wrong shape
    REQUIRE_THROWS_AS(GroupMap(FgaGroup::cyclic(2), FgaGroup::cyclic(2), IntMatrix(2, 1)),
                      ValidationError);
}

TEST_CASE("kernel image cokernel on the worked examples") {
    FgaGroup z = FgaGroup::free_of_rank(1), z4 = FgaGroup::cyclic(4), z6 = FgaGroup::cyclic(6);

    SECTION("multiplication by 2 on Z/4") {
        GroupMap f = GroupMap::multiplication(z4, 2);
        EmbeddedSubgroup k = kernel(f);
        REQUIRE(k.group == FgaGroup::cyclic(2));
        REQUIRE(k.embedding.matrix() == IntMatrix::from_rows({{2}}));  // embedded as {0,2}
        REQUIRE(image(f).group == FgaGroup::cyclic(2));
        REQUIRE(cokernel(f).group == FgaGroup::cyclic(2));
    }
    SECTION("identity and zero maps") {
        REQUIRE(kernel(GroupMap::identity(FgaGroup(2, {}))).group == FgaGroup::trivial());
        REQUIRE(kernel(GroupMap::zero(z6, z6)).group == z6);
        REQUIRE(image(GroupMap::zero(z6, z6)).group == FgaGroup::trivial());
        REQUIRE(cokernel(GroupMap::identity(z6)).group == FgaGroup::trivial());
    }
    SECTION("multiplication by 2 on Z") {
        GroupMap f = GroupMap::multiplication(z, 2);
        REQUIRE(image(f).group == z);  // 2Z is free of rank 1
        REQUIRE(cokernel(f).group == FgaGroup::cyclic(2));
        REQUIRE(solve(f, {Int(4)}).value() == Elem{Int(2)});
        REQUIRE_FALSE(solve(f, {Int(3)}));
    }
    SECTION("solve on torsion accepts either preimage") {
        GroupMap f = GroupMap::multiplication(z4, 2);
        auto x = solve(f, {Int(2)});
        REQUIRE(x);
        REQUIRE(f.apply(*x) == Elem{Int(2)});
    }
    SECTION("cokernel of a summand inclusion") {
        // Z/2 + Z/3 = Z/6; quotient by the Z/2 part (generated by 3) is Z/3
        FgaGroup g = FgaGroup::cyclic(6);
        EmbeddedSubgroup s = subgroup_from_generators(g, {{Int(3)}});
        REQUIRE(s.group == FgaGroup::cyclic(2));
        REQUIRE(cokernel(s.embedding).group == FgaGroup::cyclic(3));
    }
}

TEST_CASE("composition and identity laws") {
    std::mt19937_64 rng(101);
    for (int iter = 0; iter < 60; ++iter) {
        FgaGroup a = testgen::random_group(rng), b = testgen::random_group(rng),
                 c = testgen::random_group(rng);
        GroupMap f = testgen::random_map(rng, a, b);
        GroupMap g = testgen::random_map(rng, b, c);
        GroupMap gf = compose(g, f);
        Elem x = testgen::random_elem(rng, a);
        REQUIRE(gf.apply(x) == g.apply(f.apply(x)));
        REQUIRE(compose(f, GroupMap::identity(a)) == f);
        REQUIRE(compose(GroupMap::identity(b), f) == f);
    }
}

TEST_CASE("kernel and image bookkeeping") {
    std::mt19937_64 rng(102);
    for (int iter = 0; iter < 80; ++iter) {
        FgaGroup a = testgen::random_group(rng), b = testgen::random_group(rng);
        GroupMap f = testgen::random_map(rng, a, b);
        EmbeddedSubgroup k = kernel(f);
        EmbeddedSubgroup im = image(f);
        QuotientGroup q = cokernel(f);

        REQUIRE(is_injective(k.embedding));
        REQUIRE(compose(f, k.embedding).is_zero_map());
        REQUIRE(is_injective(im.embedding));
        REQUIRE(is_surjective(q.projection));
        REQUIRE(compose(q.projection, f).is_zero_map());

        // |domain| = |ker| * |im| for finite domains
        if (auto n = a.order()) {
            REQUIRE(*k.group.order() * *im.group.order() == *n);
        }
        // rank additivity in general
        REQUIRE(k.group.free_rank + im.group.free_rank == a.free_rank);
        // |codomain| = |im| * |coker| for finite codomains
        if (auto n = b.order()) {
            REQUIRE(*im.group.order() * *q.group.order() == *n);
        }

        // solve(f, f(x)) succeeds and lands on the same image
        Elem x = testgen::random_elem(rng, a);
        Elem y = f.apply(x);
        auto back = solve(f, y);
        REQUIRE(back);
        REQUIRE(f.apply(*back) == y);
    }
}

TEST_CASE("subgroup_from_generators worked examples") {
    FgaGroup z = FgaGroup::free_of_rank(1);
    SECTION("2Z inside Z") {
        EmbeddedSubgroup s = subgroup_from_generators(z, {{Int(2)}});
        REQUIRE(s.group == z);
        REQUIRE(s.embedding.matrix() == IntMatrix::from_rows({{2}}));
    }
    SECTION("subgroup generated by 2 in Z/4") {
        EmbeddedSubgroup s = subgroup_from_generators(FgaGroup::cyclic(4), {{Int(2)}});
        REQUIRE(s.group == FgaGroup::cyclic(2));
    }
    SECTION("no generators span the trivial group") {
        EmbeddedSubgroup s = subgroup_from_generators(FgaGroup(1, {4}), {});
        REQUIRE(s.group == FgaGroup::trivial());
    }
}

TEST_CASE("find_retraction and find_section") {
    FgaGroup z = FgaGroup::free_of_rank(1);
    REQUIRE_FALSE(find_retraction(subgroup_from_generators(z, {{Int(2)}}).embedding));
    // the Z/2 part of Z/2 + Z/4
    DirectSum ds = direct_sum({FgaGroup::cyclic(2), FgaGroup::cyclic(4)});
    auto r = find_retraction(ds.inclusion(0));
    REQUIRE(r);
    REQUIRE(compose(*r, ds.inclusion(0)) == GroupMap::identity(FgaGroup::cyclic(2)));
    // whole group inside itself
    REQUIRE(find_retraction(GroupMap::identity(FgaGroup(1, {2}))));

    std::mt19937_64 rng(103);
    for (int iter = 0; iter < 50; ++iter) {
        FgaGroup g = testgen::random_group(rng);
        EmbeddedSubgroup s = testgen::random_subgroup(rng, g);
        auto retr = find_retraction(s.embedding);
        if (retr) REQUIRE(compose(*retr, s.embedding) == GroupMap::identity(s.group));
        QuotientGroup q = cokernel(s.embedding);
        auto sec = find_section(q.projection);
        if (sec) REQUIRE(compose(q.projection, *sec) == GroupMap::identity(q.group));
    }
}

TEST_CASE("direct sums recanonicalize and keep coordinates straight") {
    DirectSum ds = direct_sum({FgaGroup::cyclic(2), FgaGroup::cyclic(3)});
    REQUIRE(ds.group() == FgaGroup::cyclic(6));

    std::mt19937_64 rng(104);
    for (int iter = 0; iter < 50; ++iter) {
        FgaGroup a = testgen::random_group(rng), b = testgen::random_group(rng);
        DirectSum s = direct_sum({a, b});
        REQUIRE(s.group().free_rank == a.free_rank + b.free_rank);
        // inclusion then projection is the identity on each part
        REQUIRE(compose(s.projection(0), s.inclusion(0)) == GroupMap::identity(a));
        REQUIRE(compose(s.projection(1), s.inclusion(1)) == GroupMap::identity(b));
        REQUIRE(compose(s.projection(1), s.inclusion(0)).is_zero_map());
        // the two inclusions jointly surject: sum of incl∘proj is the identity
        GroupMap recon = sum(compose(s.inclusion(0), s.projection(0)),
                             compose(s.inclusion(1), s.projection(1)));
        REQUIRE(recon == GroupMap::identity(s.group()));

        // block-diagonal maps act blockwise
        FgaGroup a2 = testgen::random_group(rng), b2 = testgen::random_group(rng);
        DirectSum t = direct_sum({a2, b2});
        GroupMap f = testgen::random_map(rng, a, a2), g = testgen::random_map(rng, b, b2);
        GroupMap block = direct_sum_map(s, t, {f, g});
        Elem x = testgen::random_elem(rng, a);
        REQUIRE(block.apply(s.inject(0, x)) == t.inject(0, f.apply(x)));
        Elem y = testgen::random_elem(rng, b);
        REQUIRE(block.apply(s.inject(1, y)) == t.inject(1, g.apply(y)));
    }
}

TEST_CASE("associativity and commutativity of direct sums up to canonical form") {
    std::mt19937_64 rng(105);
    for (int iter = 0; iter < 40; ++iter) {
        FgaGroup a = testgen::random_group(rng), b = testgen::random_group(rng),
                 c = testgen::random_group(rng);
        REQUIRE(direct_sum_group(a, b) == direct_sum_group(b, a));
        REQUIRE(direct_sum_group(direct_sum_group(a, b), c) ==
                direct_sum_group(a, direct_sum_group(b, c)));
        REQUIRE(direct_sum_group(a, FgaGroup::trivial()) == a);
    }
}
