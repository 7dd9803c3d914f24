#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "kkcalc/graded.hpp"
#include "kkcalc/sequences.hpp"

namespace kkcalc {

/// Torsion subgroup with its degree-0 inclusion. In canonical coordinates the
/// torsion generators sit behind the free ones, so the inclusion picks them out.
inline std::pair<GradedGroup, GradedMap> torsion_subgroup(const GradedGroup& k) {
    auto component = [](const FgaGroup& g) {
        FgaGroup t(0, g.torsion);
        IntMatrix m(g.gen_count(), t.gen_count());
        for (std::size_t i = 0; i < t.gen_count(); ++i) m(g.free_rank + i, i) = 1;
        return GroupMap{t, g, std::move(m)};
    };
    GroupMap ev = component(k.even), od = component(k.odd);
    GradedGroup t{ev.domain(), od.domain()};
    return {t, GradedMap::degree0(t, k, std::move(ev), std::move(od))};
}

/// Torsion-free quotient with its degree-0 surjection.
inline std::pair<GradedGroup, GradedMap> torsionfree_quotient(const GradedGroup& k) {
    auto component = [](const FgaGroup& g) {
        FgaGroup f = FgaGroup::free_of_rank(g.free_rank);
        IntMatrix m(f.gen_count(), g.gen_count());
        for (std::size_t i = 0; i < f.gen_count(); ++i) m(i, i) = 1;
        return GroupMap{g, f, std::move(m)};
    };
    GroupMap ev = component(k.even), od = component(k.odd);
    GradedGroup f{ev.codomain(), od.codomain()};
    return {f, GradedMap::degree0(k, f, std::move(ev), std::move(od))};
}

/// p-primary decomposition of a torsion graded group, with the verified
/// isomorphism from the direct sum of the parts back to the input.
struct PrimaryDecomposition {
    std::map<Int, GradedGroup> parts;  // prime -> p-primary component
    GradedGroup sum;                   // canonical form of the direct sum of the parts
    GradedMap iso;                     // sum -> input, verified isomorphism
};

namespace detail {

/// Per-degree CRT data: the p-power piece of each invariant factor, plus the
/// multiplier embedding it back into the cyclic factor it came from.
struct PrimaryPieces {
    std::vector<Int> orders;                  // p-power orders, grouped by prime ascending
    std::vector<std::size_t> factor_of;       // which invariant factor each piece lives in
    std::vector<Int> multiplier;              // d_i / p^a
    std::map<Int, std::vector<Int>> by_prime; // prime -> that prime's chain
};

inline PrimaryPieces primary_pieces(const FgaGroup& g) {
    PrimaryPieces out;
    std::map<Int, std::vector<std::pair<std::size_t, unsigned>>> hits;  // prime -> (factor, exp)
    for (std::size_t i = 0; i < g.torsion.size(); ++i)
        for (const auto& [p, e] : factorize(g.torsion[i])) hits[p].push_back({i, e});
    for (const auto& [p, list] : hits) {
        for (const auto& [i, e] : list) {
            Int pk = 1;
            for (unsigned t = 0; t < e; ++t) pk *= p;
            out.orders.push_back(pk);
            out.factor_of.push_back(i);
            out.multiplier.push_back(g.torsion[i] / pk);
            out.by_prime[p].push_back(pk);
        }
    }
    return out;
}

}  // namespace detail

inline PrimaryDecomposition primary_decomposition(const GradedGroup& k) {
    if (!k.is_torsion())
        throw HypothesisError("primary_decomposition: input must be a torsion group "
                              "(nonzero free rank in some degree)");
    detail::PrimaryPieces ev = detail::primary_pieces(k.even);
    detail::PrimaryPieces od = detail::primary_pieces(k.odd);

    std::map<Int, GradedGroup> parts;
    for (const auto& [p, chain] : ev.by_prime) parts[p].even = FgaGroup(0, chain);
    for (const auto& [p, chain] : od.by_prime) parts[p].odd = FgaGroup(0, chain);

    auto component = [](const detail::PrimaryPieces& pieces, const FgaGroup& target) {
        Canonicalization c = canonicalize_orders(pieces.orders);
        IntMatrix to_target(target.gen_count(), pieces.orders.size());
        for (std::size_t k2 = 0; k2 < pieces.orders.size(); ++k2)
            to_target(target.free_rank + pieces.factor_of[k2], k2) = pieces.multiplier[k2];
        GroupMap m{c.group, target, to_target * c.gens_in_pres};
        return std::pair<FgaGroup, GroupMap>{c.group, std::move(m)};
    };
    auto [sum_even, iso_even] = component(ev, k.even);
    auto [sum_odd, iso_odd] = component(od, k.odd);
    GradedGroup sum{sum_even, sum_odd};
    PrimaryDecomposition out{std::move(parts), sum,
                             GradedMap::degree0(sum, k, iso_even, iso_odd)};
    if (!is_isomorphism(out.iso))
        throw Error("primary_decomposition: assembled map failed the isomorphism check");
    return out;
}

// ---------------------------------------------------------------------------
// Purity and summand predicates (on embeddings)
// ---------------------------------------------------------------------------

/// nH = H ∩ nG for every n >= 1, decided at the finitely many n that matter
/// for finitely generated G: the divisors of the torsion exponent of G, plus a
/// saturation check of the image of H in the torsion-free quotient
/// (see docs/design-notes.md for why this finite set suffices).
inline bool is_pure(const GroupMap& embedding) {
    if (!is_injective(embedding)) throw ValidationError("is_pure: map is not injective");
    const FgaGroup& g = embedding.codomain();
    const IntMatrix& h = embedding.matrix();

    // saturation on the free part: the quotient of G/torsion by the image of H
    // must be torsion-free
    {
        FgaGroup gf = FgaGroup::free_of_rank(g.free_rank);
        IntMatrix proj(gf.gen_count(), g.gen_count());
        for (std::size_t i = 0; i < gf.gen_count(); ++i) proj(i, i) = 1;
        GroupMap to_free = compose(GroupMap{g, gf, std::move(proj)}, embedding);
        if (!cokernel(to_free).group.torsion.empty()) return false;
    }

    IntMatrix h_lat = subgroup_lattice(g, h);
    for (const Int& n : divisors(g.torsion_exponent())) {
        if (n == 1) continue;
        IntMatrix nh_lat = subgroup_lattice(g, scaled(h, n));
        IntMatrix ng_lat = subgroup_lattice(g, scaled(IntMatrix::identity(g.gen_count()), n));
        IntMatrix meet = lattice_intersection(h_lat, ng_lat);
        if (!lattice_subset(meet, nh_lat)) return false;  // nH ⊆ H ∩ nG always holds
    }
    return true;
}

/// Direct-summand test with an explicit retraction witness. Independent of
/// is_pure (retraction solving vs lattice comparisons); for finitely generated
/// groups the two predicates agree.
struct SummandReport {
    bool summand = false;
    std::optional<GroupMap> retraction;
};

inline SummandReport is_summand(const GroupMap& embedding) {
    if (!is_injective(embedding)) throw ValidationError("is_summand: map is not injective");
    SummandReport rep;
    rep.retraction = find_retraction(embedding);
    rep.summand = rep.retraction.has_value();
    return rep;
}

// ---------------------------------------------------------------------------
// Realization records
// ---------------------------------------------------------------------------

/// Group-level record of realizing a graded subgroup: the subgroup and
/// quotient K-theory shadows, the short exact sequences connecting them, and a
/// two-route ladder whose vertical isomorphisms certify that the subgroup
/// closure agrees with the kernel/image description. When the subgroup is a
/// direct summand the record carries a retraction and the direct-sum
/// isomorphism.
struct RealizationRecord {
    GradedGroup input;
    GradedSubgroup subgroup;
    GradedGroup k_of_As;   // canonical form of the closed subgroup
    GradedGroup k_of_Aq;   // canonical form of the quotient
    GradedGroup k_of_SAs;  // suspension shadow of k_of_As (parity swap)
    GradedMap inclusion;   // k_of_As -> input
    GradedMap projection;  // input -> k_of_Aq
    std::array<ShortExactSeq, 2> ses;       // per degree: 0 -> As -> K -> Aq -> 0
    std::array<LadderDiagram, 2> diagram;   // per degree: closure route over kernel/image route
    bool summand = false;
    std::optional<GradedMap> retraction;    // input -> k_of_As
    std::optional<GradedMap> sum_iso;       // k_of_As ⊕ k_of_Aq -> input
};

namespace detail {

/// Ladder with top row the closure route (S -> K -> coker) and bottom row the
/// recomputed route (image(S -> K) -> K -> coker of that embedding); vertical
/// maps are the connecting isomorphisms, solved for rather than assumed.
inline LadderDiagram two_route_ladder(const GroupMap& incl, const GroupMap& proj) {
    const FgaGroup& k = incl.codomain();
    EmbeddedSubgroup im = image(incl);
    QuotientGroup coker2 = cokernel(im.embedding);

    auto nu_sols = find_hom(incl.domain(), im.group, im.embedding,
                            IntMatrix::identity(incl.domain().gen_count()),
                            incl.matrix());
    if (!nu_sols) throw Error("realize: no map from the closure onto its image");
    GroupMap nu = nu_sols->map();

    auto mu_sols = find_hom(proj.codomain(), coker2.group, GroupMap::identity(coker2.group),
                            proj.matrix(), coker2.projection.matrix());
    if (!mu_sols) throw Error("realize: quotient comparison map does not exist");
    GroupMap mu = mu_sols->map();

    if (!is_isomorphism(nu) || !is_isomorphism(mu))
        throw Error("realize: comparison maps are not isomorphisms");
    return LadderDiagram(incl, proj, im.embedding, coker2.projection, nu,
                         GroupMap::identity(k), mu);
}

}  // namespace detail

inline RealizationRecord realize(const GradedGroup& k, const GradedSubgroup& g) {
    if (g.ambient != k)
        throw ValidationError("realize: subgroup is given inside a different ambient group");
    GradedSubgroupClosure cl = close(g);

    QuotientGroup q_even = cokernel(cl.inclusion.from_even);
    QuotientGroup q_odd = cokernel(cl.inclusion.from_odd);
    GradedGroup aq{q_even.group, q_odd.group};

    RealizationRecord rec{
        k,
        g,
        cl.group,
        aq,
        suspend(cl.group),
        cl.inclusion,
        GradedMap::degree0(k, aq, q_even.projection, q_odd.projection),
        {ShortExactSeq(cl.inclusion.from_even, q_even.projection),
         ShortExactSeq(cl.inclusion.from_odd, q_odd.projection)},
        {detail::two_route_ladder(cl.inclusion.from_even, q_even.projection),
         detail::two_route_ladder(cl.inclusion.from_odd, q_odd.projection)},
        false,
        std::nullopt,
        std::nullopt};

    auto r_even = find_retraction(cl.inclusion.from_even);
    auto r_odd = find_retraction(cl.inclusion.from_odd);
    if (r_even && r_odd) {
        rec.summand = true;
        rec.retraction = GradedMap::degree0(k, cl.group, *r_even, *r_odd);

        // section of the quotient adjusted to land in the complement of the
        // subgroup, giving the explicit direct-sum isomorphism
        auto component_iso = [](const GroupMap& incl, const GroupMap& proj, const GroupMap& retr,
                                const FgaGroup& sum, const DirectSum& ds) {
            auto s0 = find_section(proj);
            if (!s0) throw Error("realize: summand flagged but the quotient has no section");
            GroupMap correction = compose(incl, compose(retr, *s0));
            GroupMap section{s0->domain(), s0->codomain(),
                             [&] {
                                 IntMatrix m = s0->matrix();
                                 for (std::size_t i = 0; i < m.rows(); ++i)
                                     for (std::size_t j = 0; j < m.cols(); ++j)
                                         m(i, j) -= correction.matrix()(i, j);
                                 return m;
                             }()};
            IntMatrix m(incl.codomain().gen_count(), sum.gen_count());
            for (std::size_t j = 0; j < sum.gen_count(); ++j) {
                Elem e = unit_elem(sum.gen_count(), j);
                Elem x = add(incl.apply(ds.project(0, e)), section.apply(ds.project(1, e)));
                m.set_column(j, incl.codomain().normalized(x));
            }
            GroupMap iso{sum, incl.codomain(), std::move(m)};
            if (!is_isomorphism(iso)) throw Error("realize: direct-sum map is not an isomorphism");
            return iso;
        };
        DirectSum ds_even = direct_sum({cl.group.even, aq.even});
        DirectSum ds_odd = direct_sum({cl.group.odd, aq.odd});
        GradedGroup sum{ds_even.group(), ds_odd.group()};
        rec.sum_iso = GradedMap::degree0(
            sum, k,
            component_iso(cl.inclusion.from_even, q_even.projection, *r_even, sum.even, ds_even),
            component_iso(cl.inclusion.from_odd, q_odd.projection, *r_odd, sum.odd, ds_odd));
    }
    return rec;
}

/// Realization of the torsion subgroup. For finitely generated input the
/// torsion part is automatically a direct summand, and the record says so.
inline RealizationRecord realize_torsion(const GradedGroup& k) {
    auto [t, theta] = torsion_subgroup(k);
    GradedSubgroup sub{k, {}, {}};
    for (std::size_t j = 0; j < t.even.gen_count(); ++j)
        sub.gens_even.push_back(theta.from_even.matrix().column(j));
    for (std::size_t j = 0; j < t.odd.gen_count(); ++j)
        sub.gens_odd.push_back(theta.from_odd.matrix().column(j));
    RealizationRecord rec = realize(k, sub);
    if (!rec.summand)
        throw Error("realize_torsion: torsion subgroup unexpectedly failed the summand test");
    return rec;
}

}  // namespace kkcalc
