#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "kkcalc/fga.hpp"

namespace kkcalc {

/// Homomorphism between groups in canonical form. Column j of `matrix` is the
/// image of the j-th canonical generator of the domain; entries in torsion
/// rows of the codomain are kept reduced. Construction rejects assignments
/// that do not define a homomorphism: for a domain generator of order d the
/// d-th multiple of its image column must lie in the codomain's relation
/// lattice.
class GroupMap {
public:
    GroupMap(FgaGroup domain, FgaGroup codomain, IntMatrix m)
        : dom_(std::move(domain)), cod_(std::move(codomain)), m_(std::move(m)) {
        if (m_.rows() != cod_.gen_count() || m_.cols() != dom_.gen_count())
            throw ValidationError("GroupMap: matrix shape does not match generator counts");
        normalize();
        for (std::size_t j = 0; j < m_.cols(); ++j) {
            const Int d = dom_.gen_order(j);
            if (d == 0) continue;
            for (std::size_t i = 0; i < m_.rows(); ++i) {
                const Int e = cod_.gen_order(i);
                const Int v = d * m_(i, j);
                if (e == 0 ? v != 0 : v % e != 0)
                    throw ValidationError("GroupMap: assignment is not a homomorphism");
            }
        }
    }

    static GroupMap identity(const FgaGroup& g) {
        return {g, g, IntMatrix::identity(g.gen_count())};
    }
    static GroupMap zero(const FgaGroup& dom, const FgaGroup& cod) {
        return {dom, cod, IntMatrix(cod.gen_count(), dom.gen_count())};
    }
    /// Multiplication by n as an endomorphism.
    static GroupMap multiplication(const FgaGroup& g, const Int& n) {
        IntMatrix m = IntMatrix::identity(g.gen_count());
        return {g, g, scaled(std::move(m), n)};
    }

    const FgaGroup& domain() const { return dom_; }
    const FgaGroup& codomain() const { return cod_; }
    const IntMatrix& matrix() const { return m_; }

    Elem apply(const Elem& x) const { return cod_.normalized(m_ * dom_.normalized(x)); }

    bool is_zero_map() const { return m_.is_zero(); }

    bool operator==(const GroupMap&) const = default;

private:
    void normalize() {
        for (std::size_t i = 0; i < m_.rows(); ++i) {
            const Int e = cod_.gen_order(i);
            if (e == 0) continue;
            for (std::size_t j = 0; j < m_.cols(); ++j) m_(i, j) = floor_mod(m_(i, j), e);
        }
    }

    FgaGroup dom_, cod_;
    IntMatrix m_;
};

/// outer ∘ inner.
inline GroupMap compose(const GroupMap& outer, const GroupMap& inner) {
    if (inner.codomain() != outer.domain())
        throw ValidationError("compose: codomain/domain mismatch");
    return {inner.domain(), outer.codomain(), outer.matrix() * inner.matrix()};
}

inline GroupMap sum(const GroupMap& a, const GroupMap& b) {
    if (a.domain() != b.domain() || a.codomain() != b.codomain())
        throw ValidationError("sum: map shape mismatch");
    IntMatrix m = a.matrix();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) += b.matrix()(i, j);
    return {a.domain(), a.codomain(), std::move(m)};
}

// ---------------------------------------------------------------------------
// Subgroup lattices. A subgroup of G is handled through the integer lattice
// (column span of its generators) + (relation lattice of G) inside Z^n.
// ---------------------------------------------------------------------------

/// Generators of the lattice representing the subgroup of `g` generated by the
/// columns of `gens` (relations of g appended).
inline IntMatrix subgroup_lattice(const FgaGroup& g, const IntMatrix& gens) {
    return IntMatrix::hcat(gens, g.relation_matrix());
}

inline bool lattice_contains(const IntMatrix& lattice_gens, const Elem& x) {
    return solve_linear(lattice_gens, x).has_value();
}

/// Every column of `inner` lies in the span of `outer`.
inline bool lattice_subset(const IntMatrix& inner, const IntMatrix& outer) {
    for (std::size_t j = 0; j < inner.cols(); ++j)
        if (!lattice_contains(outer, inner.column(j))) return false;
    return true;
}

/// Generators of span(a) ∩ span(b) for column-span lattices in the same Z^n.
inline IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix big = IntMatrix::hcat(a, scaled(b, Int(-1)));
    IntMatrix ker = kernel_basis(big);
    return a * ker.row_slice(0, a.cols());
}

// ---------------------------------------------------------------------------
// Kernel / image / cokernel / solve
// ---------------------------------------------------------------------------

struct EmbeddedSubgroup {
    FgaGroup group;
    GroupMap embedding;  // group -> ambient, injective
};

struct QuotientGroup {
    FgaGroup group;
    GroupMap projection;  // ambient -> group, surjective
};

/// Subgroup of g generated by the given elements, in canonical form, together
/// with its embedding.
inline EmbeddedSubgroup subgroup_from_generators(const FgaGroup& g, const std::vector<Elem>& gens) {
    std::vector<Elem> norm;
    norm.reserve(gens.size());
    for (const Elem& e : gens) norm.push_back(g.normalized(e));
    IntMatrix s = IntMatrix::from_columns(g.gen_count(), norm);
    // relations among the chosen generators: coefficient vectors landing in g's lattice
    IntMatrix sys = IntMatrix::hcat(s, scaled(g.relation_matrix(), Int(-1)));
    IntMatrix rel = kernel_basis(sys).row_slice(0, s.cols());
    Canonicalization c = canonicalize_full(Presentation{s.cols(), std::move(rel)});
    IntMatrix emb = s * c.gens_in_pres;
    return {c.group, GroupMap(c.group, g, std::move(emb))};
}

inline EmbeddedSubgroup kernel(const GroupMap& f) {
    const FgaGroup& g = f.domain();
    const FgaGroup& h = f.codomain();
    // x with f(x) in the relation lattice of h
    IntMatrix sys = IntMatrix::hcat(f.matrix(), scaled(h.relation_matrix(), Int(-1)));
    IntMatrix pre = kernel_basis(sys).row_slice(0, g.gen_count());
    std::vector<Elem> gens;
    for (std::size_t j = 0; j < pre.cols(); ++j) gens.push_back(g.normalized(pre.column(j)));
    return subgroup_from_generators(g, gens);
}

inline EmbeddedSubgroup image(const GroupMap& f) {
    std::vector<Elem> gens;
    for (std::size_t j = 0; j < f.matrix().cols(); ++j) gens.push_back(f.matrix().column(j));
    return subgroup_from_generators(f.codomain(), gens);
}

inline QuotientGroup cokernel(const GroupMap& f) {
    const FgaGroup& h = f.codomain();
    IntMatrix rel = IntMatrix::hcat(f.matrix(), h.relation_matrix());
    Canonicalization c = canonicalize_full(Presentation{h.gen_count(), std::move(rel)});
    return {c.group, GroupMap(h, c.group, c.pres_to_canon)};
}

/// Some x with f(x) = y, or nothing when y is outside the image. The solution
/// returned is the canonical one produced by the normal form.
inline std::optional<Elem> solve(const GroupMap& f, const Elem& y) {
    const FgaGroup& g = f.domain();
    const FgaGroup& h = f.codomain();
    IntMatrix sys = IntMatrix::hcat(f.matrix(), h.relation_matrix());
    auto sol = solve_linear(sys, h.normalized(y));
    if (!sol) return std::nullopt;
    Elem x(sol->particular.begin(), sol->particular.begin() + g.gen_count());
    return g.normalized(x);
}

inline bool is_injective(const GroupMap& f) { return kernel(f).group.is_trivial(); }
inline bool is_surjective(const GroupMap& f) { return cokernel(f).group.is_trivial(); }
inline bool is_isomorphism(const GroupMap& f) { return is_injective(f) && is_surjective(f); }

// ---------------------------------------------------------------------------
// Homomorphism solving: find x: dom -> cod with post ∘ x(test_t) = required_t.
// ---------------------------------------------------------------------------

/// Solution space of the affine homomorphism problem: `particular` plus the
/// integer span of `homogeneous` (as matrices over the canonical generators).
struct HomSolutions {
    FgaGroup dom, cod;
    IntMatrix particular;
    std::vector<IntMatrix> homogeneous;

    GroupMap map() const { return {dom, cod, particular}; }

    /// particular + Σ c_k · homogeneous_k, normalized into a GroupMap.
    GroupMap combination(const std::vector<Int>& coeffs) const {
        IntMatrix m = particular;
        for (std::size_t k = 0; k < homogeneous.size(); ++k)
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    m(i, j) += coeffs[k] * homogeneous[k](i, j);
        return {dom, cod, std::move(m)};
    }
};

/// Solve for a homomorphism x: dom -> cod with post∘x∘(test columns) equal to
/// the required columns in post's codomain. Well-definedness of x is encoded
/// entrywise; the rest is one integer linear system.
inline std::optional<HomSolutions> find_hom(const FgaGroup& dom, const FgaGroup& cod,
                                            const GroupMap& post, const IntMatrix& tests,
                                            const IntMatrix& required) {
    if (post.domain() != cod) throw ValidationError("find_hom: post map domain mismatch");
    const FgaGroup& tgt = post.codomain();
    if (tests.rows() != dom.gen_count() || required.rows() != tgt.gen_count() ||
        tests.cols() != required.cols())
        throw ValidationError("find_hom: constraint shape mismatch");

    // variables: one per matrix entry that is not forced to zero; x(u,j) = scale*T
    struct Var {
        std::size_t u, j;
        Int scale;
    };
    std::vector<Var> vars;
    for (std::size_t u = 0; u < cod.gen_count(); ++u)
        for (std::size_t j = 0; j < dom.gen_count(); ++j) {
            const Int o = dom.gen_order(j);
            const Int m = cod.gen_order(u);
            if (o == 0) {
                vars.push_back({u, j, 1});
            } else if (m == 0) {
                continue;  // torsion cannot map to a free generator
            } else {
                vars.push_back({u, j, m / gcd_int(o, m)});
            }
        }

    const std::size_t k = tests.cols();
    std::vector<std::size_t> aux_rows;  // (i, t) pairs with torsion target row get an aux column
    std::size_t n_aux = 0;
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t i = 0; i < tgt.gen_count(); ++i)
            if (tgt.gen_order(i) != 0) ++n_aux;

    IntMatrix sys(tgt.gen_count() * k, vars.size() + n_aux);
    Elem rhs(tgt.gen_count() * k);
    std::size_t aux = vars.size();
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t i = 0; i < tgt.gen_count(); ++i) {
            const std::size_t row = t * tgt.gen_count() + i;
            for (std::size_t vi = 0; vi < vars.size(); ++vi) {
                const Var& v = vars[vi];
                // coefficient of T_vi in (post ∘ x ∘ tests)(i, t)
                sys(row, vi) = post.matrix()(i, v.u) * v.scale * tests(v.j, t);
            }
            if (tgt.gen_order(i) != 0) sys(row, aux++) = tgt.gen_order(i);
            rhs[row] = required(i, t);
        }

    auto sol = solve_linear(sys, rhs);
    if (!sol) return std::nullopt;

    auto assemble = [&](const Elem& assignment) {
        IntMatrix m(cod.gen_count(), dom.gen_count());
        for (std::size_t vi = 0; vi < vars.size(); ++vi)
            m(vars[vi].u, vars[vi].j) = vars[vi].scale * assignment[vi];
        return m;
    };

    HomSolutions out{dom, cod, assemble(sol->particular), {}};
    for (std::size_t c = 0; c < sol->kernel.cols(); ++c) {
        IntMatrix hm = assemble(sol->kernel.column(c));
        if (!hm.is_zero()) out.homogeneous.push_back(std::move(hm));
    }
    return out;
}

/// Retraction r with r ∘ incl = id, when one exists.
inline std::optional<GroupMap> find_retraction(const GroupMap& incl) {
    const FgaGroup& sub = incl.domain();
    auto sols = find_hom(incl.codomain(), sub, GroupMap::identity(sub), incl.matrix(),
                         IntMatrix::identity(sub.gen_count()));
    if (!sols) return std::nullopt;
    return sols->map();
}

/// Section s with surj ∘ s = id, when one exists.
inline std::optional<GroupMap> find_section(const GroupMap& surj) {
    const FgaGroup& quot = surj.codomain();
    auto sols = find_hom(quot, surj.domain(), surj, IntMatrix::identity(quot.gen_count()),
                         IntMatrix::identity(quot.gen_count()));
    if (!sols) return std::nullopt;
    return sols->map();
}

// ---------------------------------------------------------------------------
// Direct sums with explicit coordinate bookkeeping
// ---------------------------------------------------------------------------

/// Direct sum of canonical groups. The sum is re-canonicalized (coprime cyclic
/// pieces merge), so the inclusion/projection data is kept explicitly.
struct DirectSum {
    std::vector<FgaGroup> parts;
    std::vector<std::size_t> offsets;  // generator offset of each part
    Canonicalization canon;

    const FgaGroup& group() const { return canon.group; }

    /// Canonical coordinates of an element of part p.
    Elem inject(std::size_t p, const Elem& x) const {
        Elem concat(total_gens());
        const Elem nx = parts[p].normalized(x);
        for (std::size_t i = 0; i < nx.size(); ++i) concat[offsets[p] + i] = nx[i];
        return canon.canon_coords(concat);
    }

    /// Component of a canonical element in part p.
    Elem project(std::size_t p, const Elem& x) const {
        Elem concat = canon.gens_in_pres * group().normalized(x);
        Elem out(parts[p].gen_count());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = concat[offsets[p] + i];
        return parts[p].normalized(out);
    }

    GroupMap inclusion(std::size_t p) const {
        IntMatrix m(group().gen_count(), parts[p].gen_count());
        for (std::size_t j = 0; j < parts[p].gen_count(); ++j)
            m.set_column(j, inject(p, unit_elem(parts[p].gen_count(), j)));
        return {parts[p], group(), std::move(m)};
    }

    GroupMap projection(std::size_t p) const {
        IntMatrix m(parts[p].gen_count(), group().gen_count());
        for (std::size_t j = 0; j < group().gen_count(); ++j)
            m.set_column(j, project(p, unit_elem(group().gen_count(), j)));
        return {group(), parts[p], std::move(m)};
    }

    std::size_t total_gens() const { return offsets.empty() ? 0 : canon.gens_in_pres.rows(); }
};

inline DirectSum direct_sum(std::vector<FgaGroup> parts) {
    DirectSum s;
    s.parts = std::move(parts);
    std::vector<Int> orders;
    for (const FgaGroup& g : s.parts) {
        s.offsets.push_back(orders.size());
        for (std::size_t k = 0; k < g.gen_count(); ++k) orders.push_back(g.gen_order(k));
    }
    s.canon = canonicalize_orders(orders);
    return s;
}

inline FgaGroup direct_sum_group(const FgaGroup& a, const FgaGroup& b) {
    return direct_sum({a, b}).group();
}

/// Block-diagonal map between two direct sums with matching part counts.
inline GroupMap direct_sum_map(const DirectSum& dom, const DirectSum& cod,
                               const std::vector<GroupMap>& blocks) {
    if (blocks.size() != dom.parts.size() || blocks.size() != cod.parts.size())
        throw ValidationError("direct_sum_map: block count mismatch");
    for (std::size_t p = 0; p < blocks.size(); ++p)
        if (blocks[p].domain() != dom.parts[p] || blocks[p].codomain() != cod.parts[p])
            throw ValidationError("direct_sum_map: block shape mismatch");
    IntMatrix m(cod.group().gen_count(), dom.group().gen_count());
    for (std::size_t j = 0; j < dom.group().gen_count(); ++j) {
        Elem img(cod.group().gen_count());
        for (std::size_t p = 0; p < blocks.size(); ++p) {
            Elem xp = dom.project(p, unit_elem(dom.group().gen_count(), j));
            img = add(img, cod.inject(p, blocks[p].apply(xp)));
        }
        m.set_column(j, cod.group().normalized(img));
    }
    return {dom.group(), cod.group(), std::move(m)};
}

}  // namespace kkcalc
