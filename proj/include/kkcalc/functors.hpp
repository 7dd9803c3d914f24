#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kkcalc/group_map.hpp"

namespace kkcalc {

enum class Bifunctor { tensor, tor, hom, ext };
enum class Slot { first, second };

inline const char* name(Bifunctor f) {
    switch (f) {
        case Bifunctor::tensor: return "tensor";
        case Bifunctor::tor: return "Tor";
        case Bifunctor::hom: return "Hom";
        case Bifunctor::ext: return "Ext";
    }
    return "?";
}

/// Value of a bifunctor on a pair of canonical groups, with enough basis data
/// to compute induced maps. The group decomposes into cyclic pieces indexed by
/// pairs (li, ri) of generators of the two arguments:
///
///   tensor: g_li ⊗ h_ri                    order per the usual gcd rules
///   hom:    scale · E(ri, li)              the elementary homomorphism
///   ext:    class of e_ri in H/(o_li)H     one block H/dH per torsion factor
///   tor:    scale · e_ri in H[o_li]        one block H[d] per torsion factor
///
/// Trivial pieces (order 1) are omitted. `canon` converts between elementary
/// coordinates (one per piece) and the canonical form.
struct BifunctorGroup {
    Bifunctor functor;
    FgaGroup left, right;

    struct Piece {
        std::size_t li, ri;
        Int order;  // 0 for a free piece
        Int scale;
    };
    std::vector<Piece> pieces;
    Canonicalization canon;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;

    const FgaGroup& value() const { return canon.group; }

    std::optional<std::size_t> piece_at(std::size_t li, std::size_t ri) const {
        auto it = index.find({li, ri});
        if (it == index.end()) return std::nullopt;
        return it->second;
    }

    /// Canonical coordinates of an elementary tuple.
    Elem encode(const Elem& elementary) const { return canon.canon_coords(elementary); }

    /// Elementary representative of a canonical element.
    Elem decode(const Elem& canonical) const {
        return canon.gens_in_pres * value().normalized(canonical);
    }
};

namespace detail {

inline BifunctorGroup build_bifunctor(Bifunctor fn, const FgaGroup& g, const FgaGroup& h) {
    BifunctorGroup b;
    b.functor = fn;
    b.left = g;
    b.right = h;
    for (std::size_t j = 0; j < g.gen_count(); ++j) {
        const Int o = g.gen_order(j);
        for (std::size_t i = 0; i < h.gen_count(); ++i) {
            const Int m = h.gen_order(i);
            Int order = -1, scale = 1;
            switch (fn) {
                case Bifunctor::tensor:
                    if (o == 0 && m == 0) order = 0;
                    else if (o == 0) order = m;
                    else if (m == 0) order = o;
                    else order = gcd_int(o, m);
                    break;
                case Bifunctor::tor:
                    if (o != 0 && m != 0) {
                        order = gcd_int(o, m);
                        scale = m / order;
                    }
                    break;
                case Bifunctor::hom:
                    if (o == 0) {
                        order = m;  // Hom(Z, piece) = piece
                    } else if (m != 0) {
                        order = gcd_int(o, m);
                        scale = m / order;
                    }
                    break;
                case Bifunctor::ext:
                    if (o != 0) order = (m == 0) ? o : gcd_int(o, m);
                    break;
            }
            if (order < 0 || order == 1) continue;
            b.index[{j, i}] = b.pieces.size();
            b.pieces.push_back({j, i, order, scale});
        }
    }
    std::vector<Int> orders;
    orders.reserve(b.pieces.size());
    for (const auto& p : b.pieces) orders.push_back(p.order);
    b.canon = canonicalize_orders(orders);
    return b;
}

}  // namespace detail

inline BifunctorGroup tensor_group(const FgaGroup& g, const FgaGroup& h) {
    return detail::build_bifunctor(Bifunctor::tensor, g, h);
}
inline BifunctorGroup tor_group(const FgaGroup& g, const FgaGroup& h) {
    return detail::build_bifunctor(Bifunctor::tor, g, h);
}
inline BifunctorGroup hom_group(const FgaGroup& g, const FgaGroup& h) {
    return detail::build_bifunctor(Bifunctor::hom, g, h);
}
inline BifunctorGroup ext_group(const FgaGroup& g, const FgaGroup& h) {
    return detail::build_bifunctor(Bifunctor::ext, g, h);
}

inline FgaGroup tensor(const FgaGroup& g, const FgaGroup& h) { return tensor_group(g, h).value(); }
inline FgaGroup tor(const FgaGroup& g, const FgaGroup& h) { return tor_group(g, h).value(); }
inline FgaGroup hom(const FgaGroup& g, const FgaGroup& h) { return hom_group(g, h).value(); }
inline FgaGroup ext(const FgaGroup& g, const FgaGroup& h) { return ext_group(g, h).value(); }

/// Concrete homomorphism matrix represented by an element of Hom(G, H).
inline GroupMap hom_element_to_map(const BifunctorGroup& b, const Elem& canonical) {
    if (b.functor != Bifunctor::hom) throw ValidationError("hom_element_to_map: not a Hom group");
    Elem t = b.decode(canonical);
    IntMatrix m(b.right.gen_count(), b.left.gen_count());
    for (std::size_t k = 0; k < b.pieces.size(); ++k)
        m(b.pieces[k].ri, b.pieces[k].li) += b.pieces[k].scale * t[k];
    return {b.left, b.right, std::move(m)};
}

/// Coordinates in Hom(G, H) of a concrete homomorphism G -> H.
inline Elem hom_map_to_element(const BifunctorGroup& b, const GroupMap& f) {
    if (b.functor != Bifunctor::hom) throw ValidationError("hom_map_to_element: not a Hom group");
    if (f.domain() != b.left || f.codomain() != b.right)
        throw ValidationError("hom_map_to_element: map shape mismatch");
    Elem t(b.pieces.size());
    for (std::size_t k = 0; k < b.pieces.size(); ++k) {
        const auto& p = b.pieces[k];
        const Int& entry = f.matrix()(p.ri, p.li);
        if (entry % p.scale != 0) throw Error("hom_map_to_element: entry not a scale multiple");
        t[k] = entry / p.scale;
    }
    return b.encode(t);
}

namespace detail {

/// Coefficient of the degree-one lift of the cyclic map (Z/d -> Z/d', 1 -> a):
/// the induced maps on Ext and Tor blocks are multiplications by a*d/d'.
inline Int cyclic_lift_coeff(const Int& a, const Int& d, const Int& d_prime) {
    Int num = a * d;
    if (num % d_prime != 0) throw Error("cyclic component map is not well defined");
    return num / d_prime;
}

/// Add coefficient c on piece (li, ri) of b into the elementary tuple `acc`.
inline void add_piece(const BifunctorGroup& b, Elem& acc, std::size_t li, std::size_t ri,
                      const Int& c) {
    if (c == 0) return;
    if (auto k = b.piece_at(li, ri)) acc[*k] += c;
    // absent pieces are trivial groups; any coefficient lands on zero
}

/// Image of one elementary generator under the induced map, as an elementary
/// tuple of the destination bifunctor group.
inline Elem induced_piece_image(const BifunctorGroup& src, const BifunctorGroup& dst, Slot slot,
                                const GroupMap& f, std::size_t k) {
    const auto& p = src.pieces[k];
    Elem acc(dst.pieces.size());
    const IntMatrix& fm = f.matrix();
    switch (src.functor) {
        case Bifunctor::tensor: {
            if (slot == Slot::first) {
                for (std::size_t u = 0; u < fm.rows(); ++u)
                    add_piece(dst, acc, u, p.ri, fm(u, p.li));
            } else {
                for (std::size_t u = 0; u < fm.rows(); ++u)
                    add_piece(dst, acc, p.li, u, fm(u, p.ri));
            }
            break;
        }
        case Bifunctor::ext: {
            if (slot == Slot::first) {
                // contravariant: src over G' pairs (u, i); dst over G pairs (j, i)
                const Int o_u = src.left.gen_order(p.li);
                for (std::size_t j = 0; j < dst.left.gen_count(); ++j) {
                    const Int o_j = dst.left.gen_order(j);
                    if (o_j == 0) continue;
                    add_piece(dst, acc, j, p.ri, cyclic_lift_coeff(fm(p.li, j), o_j, o_u));
                }
            } else {
                // covariant: push the class of e_ri through f: H -> H'
                for (std::size_t u = 0; u < fm.rows(); ++u)
                    add_piece(dst, acc, p.li, u, fm(u, p.ri));
            }
            break;
        }
        case Bifunctor::tor: {
            if (slot == Slot::first) {
                // covariant: H[o_j] -> H[o'_u] is multiplication by the lift coefficient
                const Int o_j = src.left.gen_order(p.li);
                const Int m_i = src.right.gen_order(p.ri);
                for (std::size_t u = 0; u < dst.left.gen_count(); ++u) {
                    const Int o_u = dst.left.gen_order(u);
                    if (o_u == 0) continue;
                    Int c = cyclic_lift_coeff(fm(u, p.li), o_j, o_u);
                    Int coord = floor_mod(c * p.scale, m_i);
                    if (coord == 0) continue;
                    auto idx = dst.piece_at(u, p.ri);
                    if (!idx) throw Error("Tor: nonzero coordinate on a trivial piece");
                    const Int& s2 = dst.pieces[*idx].scale;
                    if (coord % s2 != 0) throw Error("Tor: coordinate outside the torsion block");
                    acc[*idx] += coord / s2;
                }
            } else {
                // covariant in H: apply f to scale * e_ri and read off in H'[o_li]
                for (std::size_t u = 0; u < fm.rows(); ++u) {
                    const Int m_u = dst.right.gen_order(u);
                    Int coord = p.scale * fm(u, p.ri);
                    if (m_u != 0) coord = floor_mod(coord, m_u);
                    if (coord == 0) continue;
                    auto idx = dst.piece_at(p.li, u);
                    if (!idx) throw Error("Tor: nonzero coordinate on a trivial piece");
                    const Int& s2 = dst.pieces[*idx].scale;
                    if (coord % s2 != 0) throw Error("Tor: coordinate outside the torsion block");
                    acc[*idx] += coord / s2;
                }
            }
            break;
        }
        case Bifunctor::hom:
            throw Error("Hom induced maps are computed through concrete matrices");
    }
    return acc;
}

}  // namespace detail

/// The functorially induced map between bifunctor values: contravariant in the
/// first slot for Hom and Ext, covariant otherwise. `f` is the varying map,
/// `fixed` the other argument.
inline GroupMap induced_map(Bifunctor fn, Slot slot, const GroupMap& f, const FgaGroup& fixed) {
    const bool contra = (slot == Slot::first) && (fn == Bifunctor::hom || fn == Bifunctor::ext);
    FgaGroup src_left, src_right, dst_left, dst_right;
    if (slot == Slot::first) {
        src_left = contra ? f.codomain() : f.domain();
        dst_left = contra ? f.domain() : f.codomain();
        src_right = dst_right = fixed;
    } else {
        src_left = dst_left = fixed;
        src_right = f.domain();
        dst_right = f.codomain();
    }
    BifunctorGroup src = detail::build_bifunctor(fn, src_left, src_right);
    BifunctorGroup dst = detail::build_bifunctor(fn, dst_left, dst_right);

    IntMatrix m(dst.value().gen_count(), src.value().gen_count());
    for (std::size_t c = 0; c < src.value().gen_count(); ++c) {
        Elem out;
        if (fn == Bifunctor::hom) {
            GroupMap concrete =
                hom_element_to_map(src, unit_elem(src.value().gen_count(), c));
            GroupMap composed = (slot == Slot::first) ? compose(concrete, f)  // precompose
                                                      : compose(f, concrete);
            out = hom_map_to_element(dst, composed);
        } else {
            Elem t = src.decode(unit_elem(src.value().gen_count(), c));
            Elem acc(dst.pieces.size());
            for (std::size_t k = 0; k < src.pieces.size(); ++k) {
                if (t[k] == 0) continue;
                Elem img = detail::induced_piece_image(src, dst, slot, f, k);
                for (std::size_t x = 0; x < acc.size(); ++x) acc[x] += t[k] * img[x];
            }
            out = dst.encode(acc);
        }
        m.set_column(c, out);
    }
    return {src.value(), dst.value(), std::move(m)};
}

// ---------------------------------------------------------------------------
// Symbolic codomains: the only infinite non-finitely-generated targets needed,
// (Q/Z)^r and R^s. They appear exclusively as Hom targets and are never
// materialized.
// ---------------------------------------------------------------------------

struct SymbolicCodomain {
    enum class Kind { qmodz_power, real_power } kind;
    std::size_t power;

    static SymbolicCodomain qmodz(std::size_t r) { return {Kind::qmodz_power, r}; }
    static SymbolicCodomain reals(std::size_t s) { return {Kind::real_power, s}; }
};

/// Hom into a symbolic codomain: an exact finite part plus symbolic ranks.
/// The answer is exact (a plain group) iff both symbolic ranks are zero.
struct SymbolicHom {
    FgaGroup finite_part;
    std::size_t qmodz_rank = 0;  // number of Q/Z summands
    std::size_t real_rank = 0;   // number of R summands

    bool exact() const { return qmodz_rank == 0 && real_rank == 0; }
};

inline SymbolicHom hom_symbolic(const FgaGroup& g, const SymbolicCodomain& c) {
    SymbolicHom out;
    if (c.kind == SymbolicCodomain::Kind::real_power) {
        // torsion into torsion-free vanishes; the free part contributes symbolically
        out.finite_part = FgaGroup::trivial();
        out.real_rank = g.free_rank * c.power;
        return out;
    }
    // Hom(Z/d, Q/Z) = Z/d exactly; Hom(Z, Q/Z) = Q/Z stays symbolic
    std::vector<Int> orders;
    for (std::size_t copy = 0; copy < c.power; ++copy)
        for (const Int& d : g.torsion) orders.push_back(d);
    out.finite_part = canonicalize_orders(orders).group;
    out.qmodz_rank = g.free_rank * c.power;
    return out;
}

/// Pontryagin dual X(G) = Hom(G, R/Z) of a torsion group, computed as
/// Hom(G, Q/Z) rather than assumed.
inline FgaGroup pontryagin_dual(const FgaGroup& g) {
    if (!g.is_torsion())
        throw HypothesisError("pontryagin_dual: group has a free part; the dual of Z is not "
                              "finitely generated");
    return hom_symbolic(g, SymbolicCodomain::qmodz(1)).finite_part;
}

/// Pext of finitely generated groups. Every pure extension with a finitely
/// generated first argument splits, so the value is always the zero group; the
/// report records what the vanishing means for the Kasparov-group topology.
struct PextResult {
    FgaGroup value;                // always trivial for f.g. arguments
    bool first_arg_torsionfree;    // then Pext agrees with Ext (both vanish here)
    FgaGroup ext_value;            // Ext(G, H), for the torsion-free comparison
};

inline PextResult pext(const FgaGroup& g, const FgaGroup& h) {
    PextResult r;
    r.value = FgaGroup::trivial();
    r.first_arg_torsionfree = g.is_free();
    r.ext_value = ext(g, h);
    return r;
}

}  // namespace kkcalc
