#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "kkcalc/group_map.hpp"

namespace kkcalc {

/// Z/2-graded group: the ambient language for K-theory (even = degree 0,
/// odd = degree 1). All degree arithmetic is mod 2.
struct GradedGroup {
    FgaGroup even, odd;

    const FgaGroup& at(int degree) const { return (degree & 1) ? odd : even; }

    bool is_trivial() const { return even.is_trivial() && odd.is_trivial(); }
    bool is_torsion() const { return even.is_torsion() && odd.is_torsion(); }
    bool is_free() const { return even.is_free() && odd.is_free(); }

    bool operator==(const GradedGroup&) const = default;
};

/// Parity swap: the degree bookkeeping of suspension.
inline GradedGroup suspend(const GradedGroup& g) { return {g.odd, g.even}; }

inline GradedGroup direct_sum(const GradedGroup& a, const GradedGroup& b) {
    return {direct_sum_group(a.even, b.even), direct_sum_group(a.odd, b.odd)};
}

/// Graded homomorphism of degree 0 or 1. `from_even` maps the even component
/// of the domain into the component of the codomain shifted by the degree,
/// likewise `from_odd`. Both component maps are stored even when one side is
/// trivial, so every map is handled uniformly.
struct GradedMap {
    int degree = 0;
    GradedGroup dom, cod;
    GroupMap from_even, from_odd;

    GradedMap(int deg, GradedGroup d, GradedGroup c, GroupMap fe, GroupMap fo)
        : degree(deg & 1), dom(std::move(d)), cod(std::move(c)), from_even(std::move(fe)),
          from_odd(std::move(fo)) {
        if (from_even.domain() != dom.even || from_odd.domain() != dom.odd)
            throw ValidationError("GradedMap: component domains do not match");
        if (from_even.codomain() != cod.at(degree) || from_odd.codomain() != cod.at(1 + degree))
            throw ValidationError("GradedMap: component codomains do not match the degree");
    }

    static GradedMap degree0(const GradedGroup& d, const GradedGroup& c, GroupMap fe, GroupMap fo) {
        return {0, d, c, std::move(fe), std::move(fo)};
    }
    static GradedMap degree1(const GradedGroup& d, const GradedGroup& c, GroupMap fe, GroupMap fo) {
        return {1, d, c, std::move(fe), std::move(fo)};
    }
    static GradedMap identity(const GradedGroup& g) {
        return {0, g, g, GroupMap::identity(g.even), GroupMap::identity(g.odd)};
    }
    static GradedMap zero(const GradedGroup& d, const GradedGroup& c, int degree = 0) {
        return {degree, d, c, GroupMap::zero(d.even, c.at(degree)),
                GroupMap::zero(d.odd, c.at(1 + degree))};
    }

    /// Component map out of the given source degree.
    const GroupMap& from(int source_degree) const {
        return (source_degree & 1) ? from_odd : from_even;
    }

    bool operator==(const GradedMap&) const = default;
};

/// outer ∘ inner; degrees add mod 2.
inline GradedMap compose(const GradedMap& outer, const GradedMap& inner) {
    if (inner.cod != outer.dom) throw ValidationError("compose: graded domain mismatch");
    return {outer.degree + inner.degree, inner.dom, outer.cod,
            compose(outer.from(inner.degree), inner.from_even),
            compose(outer.from(1 + inner.degree), inner.from_odd)};
}

inline bool is_injective(const GradedMap& f) {
    return is_injective(f.from_even) && is_injective(f.from_odd);
}
inline bool is_surjective(const GradedMap& f) {
    return is_surjective(f.from_even) && is_surjective(f.from_odd);
}
inline bool is_isomorphism(const GradedMap& f) {
    return is_isomorphism(f.from_even) && is_isomorphism(f.from_odd);
}

/// Subgroup of a graded group given by generators in each degree.
struct GradedSubgroup {
    GradedGroup ambient;
    std::vector<Elem> gens_even, gens_odd;
};

struct GradedSubgroupClosure {
    GradedGroup group;
    GradedMap inclusion;  // degree 0, injective
};

/// The subgroup generated degreewise, in canonical form, with its inclusion.
inline GradedSubgroupClosure close(const GradedSubgroup& s) {
    EmbeddedSubgroup ev = subgroup_from_generators(s.ambient.even, s.gens_even);
    EmbeddedSubgroup od = subgroup_from_generators(s.ambient.odd, s.gens_odd);
    GradedGroup g{ev.group, od.group};
    return {g, GradedMap::degree0(g, s.ambient, ev.embedding, od.embedding)};
}

}  // namespace kkcalc
