#pragma once

// Seeded generators for randomized property tests. Everything is driven by a
// caller-owned mt19937_64 so runs are reproducible.

#include <random>
#include <vector>

#include "kkcalc/graded.hpp"
#include "kkcalc/group_map.hpp"
#include "kkcalc/sequences.hpp"

namespace testgen {

using kkcalc::Elem;
using kkcalc::FgaGroup;
using kkcalc::GradedGroup;
using kkcalc::GroupMap;
using kkcalc::Int;
using kkcalc::IntMatrix;

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Random canonical group: a short divisibility chain plus a small free part.
/// Each factor is a random multiple of the previous one, so the chain is valid
/// by construction.
inline FgaGroup random_group(Rng& rng, int max_free = 2, int max_torsion = 3,
                             int max_first_factor = 9, int max_step = 3) {
    std::size_t free_rank = static_cast<std::size_t>(uniform(rng, 0, max_free));
    std::vector<Int> torsion;
    int k = uniform(rng, 0, max_torsion);
    for (int i = 0; i < k; ++i) {
        Int d = torsion.empty() ? Int(uniform(rng, 2, max_first_factor))
                                : torsion.back() * uniform(rng, 1, max_step);
        torsion.push_back(d);
    }
    return {free_rank, torsion};
}

inline FgaGroup random_finite_group(Rng& rng, int max_torsion = 3, int max_first = 9,
                                    int max_step = 3) {
    FgaGroup g = random_group(rng, 0, max_torsion, max_first, max_step);
    return {0, g.torsion};
}

inline GradedGroup random_graded(Rng& rng, int max_free = 2, int max_torsion = 2) {
    return {random_group(rng, max_free, max_torsion), random_group(rng, max_free, max_torsion)};
}

inline GradedGroup random_finite_graded(Rng& rng, int max_torsion = 2, int max_first = 9) {
    return {random_finite_group(rng, max_torsion, max_first),
            random_finite_group(rng, max_torsion, max_first)};
}

inline Elem random_elem(Rng& rng, const FgaGroup& g, int free_range = 6) {
    Elem e(g.gen_count());
    for (std::size_t i = 0; i < g.gen_count(); ++i) {
        Int d = g.gen_order(i);
        if (d == 0) e[i] = uniform(rng, -free_range, free_range);
        else e[i] = uniform(rng, 0, static_cast<int>(d) - 1);
    }
    return e;
}

/// Random homomorphism dom -> cod: each entry drawn from the residues the
/// well-definedness constraint allows.
inline GroupMap random_map(Rng& rng, const FgaGroup& dom, const FgaGroup& cod,
                           int free_range = 4) {
    IntMatrix m(cod.gen_count(), dom.gen_count());
    for (std::size_t j = 0; j < dom.gen_count(); ++j) {
        const Int o = dom.gen_order(j);
        for (std::size_t i = 0; i < cod.gen_count(); ++i) {
            const Int e = cod.gen_order(i);
            if (o == 0) {
                m(i, j) = (e == 0) ? Int(uniform(rng, -free_range, free_range))
                                   : Int(uniform(rng, 0, static_cast<int>(e) - 1));
            } else if (e == 0) {
                m(i, j) = 0;
            } else {
                Int step = e / kkcalc::gcd_int(o, e);
                int slots = static_cast<int>(e / step);
                m(i, j) = step * uniform(rng, 0, slots - 1);
            }
        }
    }
    return {dom, cod, std::move(m)};
}

inline kkcalc::EmbeddedSubgroup random_subgroup(Rng& rng, const FgaGroup& g, int max_gens = 3) {
    std::vector<Elem> gens;
    int k = uniform(rng, 0, max_gens);
    for (int i = 0; i < k; ++i) gens.push_back(random_elem(rng, g));
    return kkcalc::subgroup_from_generators(g, gens);
}

/// Random short exact sequence 0 -> S -> G -> G/S -> 0.
inline kkcalc::ShortExactSeq random_ses(Rng& rng, const FgaGroup& g, int max_gens = 3) {
    kkcalc::EmbeddedSubgroup s = random_subgroup(rng, g, max_gens);
    kkcalc::QuotientGroup q = kkcalc::cokernel(s.embedding);
    return {s.embedding, q.projection};
}

/// Random ladder with commuting squares: two random short exact sequences and
/// a random middle vertical chosen inside the subspace of maps carrying the
/// top subgroup into the bottom one; the outer verticals are then determined.
inline kkcalc::LadderDiagram random_ladder(Rng& rng, const FgaGroup& b, const FgaGroup& b2,
                                           int max_sub_gens = 2) {
    kkcalc::EmbeddedSubgroup sa = random_subgroup(rng, b, max_sub_gens);
    kkcalc::QuotientGroup qa = kkcalc::cokernel(sa.embedding);
    kkcalc::EmbeddedSubgroup sb = random_subgroup(rng, b2, max_sub_gens);
    kkcalc::QuotientGroup qb = kkcalc::cokernel(sb.embedding);

    // vb with vb(sa) ⊆ sb: post-compose with the projection and require zero
    auto sols = kkcalc::find_hom(b, b2, qb.projection, sa.embedding.matrix(),
                                 IntMatrix(qb.group.gen_count(), sa.group.gen_count()));
    if (!sols) throw std::logic_error("random_ladder: zero map always qualifies");
    std::vector<Int> coeffs;
    for (std::size_t i = 0; i < sols->homogeneous.size(); ++i)
        coeffs.push_back(uniform(rng, -2, 2));
    GroupMap vb = sols->combination(coeffs);

    // restriction to the subgroups
    IntMatrix am(sb.group.gen_count(), sa.group.gen_count());
    for (std::size_t j = 0; j < sa.group.gen_count(); ++j) {
        Elem y = vb.apply(sa.embedding.matrix().column(j));
        auto coords = kkcalc::solve(sb.embedding, y);
        if (!coords) throw std::logic_error("random_ladder: vb does not preserve the subgroup");
        am.set_column(j, *coords);
    }
    GroupMap va{sa.group, sb.group, std::move(am)};

    // descend to the quotients
    IntMatrix cm(qb.group.gen_count(), qa.group.gen_count());
    for (std::size_t j = 0; j < qa.group.gen_count(); ++j) {
        auto rep = kkcalc::solve(qa.projection, kkcalc::unit_elem(qa.group.gen_count(), j));
        cm.set_column(j, qb.projection.apply(vb.apply(*rep)));
    }
    GroupMap vc{qa.group, qb.group, std::move(cm)};

    return {sa.embedding, qa.projection, sb.embedding, qb.projection, va, vb, vc};
}

}  // namespace testgen
