#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kkcalc/snf.hpp"

namespace kkcalc {

/// Canonical form of a finitely generated abelian group:
/// Z^free_rank  +  Z/d_1 + ... + Z/d_k  with  2 <= d_1 | d_2 | ... | d_k.
///
/// Two groups are isomorphic iff they are field-equal. Canonical generators
/// are ordered free generators first, then one generator per invariant factor.
/// Elements are coordinate vectors over the canonical generators, with each
/// torsion coordinate reduced into [0, d_i).
struct FgaGroup {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;

    FgaGroup() = default;
    FgaGroup(std::size_t rank, std::vector<Int> tors) : free_rank(rank), torsion(std::move(tors)) {
        for (std::size_t i = 0; i < torsion.size(); ++i) {
            if (torsion[i] < 2) throw ValidationError("FgaGroup: invariant factor < 2");
            if (i > 0 && torsion[i] % torsion[i - 1] != 0)
                throw ValidationError("FgaGroup: invariant factors do not form a divisibility chain");
        }
    }

    static FgaGroup trivial() { return {}; }
    static FgaGroup free_of_rank(std::size_t r) { return {r, {}}; }
    static FgaGroup cyclic(const Int& d) {
        if (d == 0) return free_of_rank(1);
        if (d == 1) return trivial();
        return {0, {d}};
    }

    std::size_t gen_count() const { return free_rank + torsion.size(); }

    /// Order of canonical generator k (0 for a free generator).
    Int gen_order(std::size_t k) const { return k < free_rank ? Int(0) : torsion[k - free_rank]; }

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool is_torsion() const { return free_rank == 0; }
    bool is_free() const { return torsion.empty(); }

    std::optional<Int> order() const {
        if (free_rank > 0) return std::nullopt;
        Int n = 1;
        for (const Int& d : torsion) n *= d;
        return n;
    }

    /// Exponent of the torsion part (1 when torsion-free).
    Int torsion_exponent() const { return torsion.empty() ? Int(1) : torsion.back(); }

    /// Reduce coordinates into canonical range; validates the length.
    Elem normalized(Elem coords) const {
        if (coords.size() != gen_count())
            throw ValidationError("element has wrong coordinate count for its group");
        for (std::size_t i = free_rank; i < coords.size(); ++i)
            coords[i] = floor_mod(coords[i], torsion[i - free_rank]);
        return coords;
    }

    /// Relation lattice generators: one column d_i * e_{free_rank + i} per factor.
    IntMatrix relation_matrix() const {
        IntMatrix r(gen_count(), torsion.size());
        for (std::size_t i = 0; i < torsion.size(); ++i) r(free_rank + i, i) = torsion[i];
        return r;
    }

    bool operator==(const FgaGroup&) const = default;
};

/// A group presented by generators and a relation matrix whose *columns* are
/// the relations (one fixed convention throughout the library and file formats).
struct Presentation {
    std::size_t generators = 0;
    IntMatrix relations;  // `generators` rows, one column per relation

    Presentation(std::size_t gens, IntMatrix rels) : generators(gens), relations(std::move(rels)) {
        if (relations.rows() != generators)
            throw ValidationError("Presentation: relation matrix must have one row per generator");
    }
    static Presentation free_on(std::size_t gens) { return {gens, IntMatrix(gens, 0)}; }
};

/// The canonical form of a presented group together with the change of basis
/// connecting presentation coordinates and canonical coordinates.
struct Canonicalization {
    FgaGroup group;
    IntMatrix gens_in_pres;   // pres_gens x canon_gens: column k = representative of canonical gen k
    IntMatrix pres_to_canon;  // canon_gens x pres_gens: linear part of the quotient map

    /// Canonical coordinates of a presentation-coordinate vector.
    Elem canon_coords(const Elem& pres_coords) const {
        return group.normalized(pres_to_canon * pres_coords);
    }
};

inline Canonicalization canonicalize_full(const Presentation& p) {
    SnfDecomposition s = snf(p.relations);
    const std::size_t n = p.generators;
    const std::size_t r = s.rank();

    std::vector<std::size_t> canon_idx;  // indices into normal-form coordinates
    for (std::size_t i = r; i < n; ++i) canon_idx.push_back(i);   // free generators
    std::vector<Int> torsion;
    for (std::size_t i = 0; i < r; ++i)
        if (s.d(i, i) >= 2) {
            canon_idx.push_back(i);
            torsion.push_back(s.d(i, i));
        }

    Canonicalization c;
    c.group = FgaGroup(n - r, std::move(torsion));
    c.gens_in_pres = IntMatrix(n, canon_idx.size());
    c.pres_to_canon = IntMatrix(canon_idx.size(), n);
    for (std::size_t k = 0; k < canon_idx.size(); ++k) {
        const std::size_t i = canon_idx[k];
        for (std::size_t row = 0; row < n; ++row) c.gens_in_pres(row, k) = s.u_inv(row, i);
        for (std::size_t col = 0; col < n; ++col) c.pres_to_canon(k, col) = s.u(i, col);
    }
    return c;
}

/// Canonical form of coker(relations): free rank = generators - rank,
/// torsion = the invariant factors > 1.
inline FgaGroup canonicalize(const Presentation& p) { return canonicalize_full(p).group; }

/// Canonicalization of a direct sum of cyclic pieces given by their orders
/// (0 meaning Z). Used wherever a group is assembled piecewise.
inline Canonicalization canonicalize_orders(const std::vector<Int>& orders) {
    IntMatrix rel(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) rel(i, i) = orders[i];
    return canonicalize_full(Presentation{orders.size(), std::move(rel)});
}

inline std::string to_string(const FgaGroup& g) {
    if (g.is_trivial()) return "0";
    std::string s;
    if (g.free_rank == 1) s = "Z";
    else if (g.free_rank > 1) s = "Z^" + std::to_string(g.free_rank);
    for (const Int& d : g.torsion) {
        if (!s.empty()) s += " + ";
        s += "Z/" + d.str();
    }
    return s;
}

}  // namespace kkcalc
