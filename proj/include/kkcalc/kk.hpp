#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "kkcalc/decomp.hpp"
#include "kkcalc/functors.hpp"

namespace kkcalc {

// Grading convention, used everywhere below: in degree j the Hom part is
//   Hom(KA_0, KB_j) ⊕ Hom(KA_1, KB_{j+1})        (degree-preserving maps)
// and the Ext part enters with a shift of one:
//   Ext(KA_0, KB_{j+1}) ⊕ Ext(KA_1, KB_j)
// i.e. Ext of total degree j+1 contributes to degree j, matching a
// degree-one connecting map. See docs/design-notes.md.

/// KK_j(A, B) assembled from its universal-coefficient presentation. The
/// extension splits (unnaturally), so the total is the direct sum; the closure
/// of zero in the natural topology is the Pext term, which vanishes for
/// finitely generated K-theory, making the total its own Hausdorff quotient.
struct UctResult {
    int degree = 0;
    FgaGroup hom_part, ext_part, total;
    FgaGroup closure_of_zero;     // always trivial here
    FgaGroup hausdorff_quotient;  // = total
};

namespace detail {

/// Degree-j part of the graded Hom(KA, KB) as an explicit direct sum.
inline DirectSum graded_hom_sum(const GradedGroup& ka, const GradedGroup& kb, int j) {
    return direct_sum({hom(ka.even, kb.at(j)), hom(ka.odd, kb.at(j + 1))});
}

/// Degree-j Ext block (already shifted by one).
inline DirectSum graded_ext_sum(const GradedGroup& ka, const GradedGroup& kb, int j) {
    return direct_sum({ext(ka.even, kb.at(j + 1)), ext(ka.odd, kb.at(j))});
}

}  // namespace detail

inline UctResult kk(const GradedGroup& ka, const GradedGroup& kb, int j) {
    UctResult r;
    r.degree = j & 1;
    r.hom_part = detail::graded_hom_sum(ka, kb, j).group();
    r.ext_part = detail::graded_ext_sum(ka, kb, j).group();
    r.total = direct_sum_group(r.hom_part, r.ext_part);
    r.closure_of_zero = FgaGroup::trivial();
    r.hausdorff_quotient = r.total;
    return r;
}

/// K^j(A) = KK_j(A, C), i.e. KK against (Z; 0).
inline UctResult k_dual(const GradedGroup& ka, int j) {
    return kk(ka, GradedGroup{FgaGroup::free_of_rank(1), FgaGroup::trivial()}, j);
}

/// One degree of a Künneth-type answer: tensor term, Tor term (shifted by
/// one), and their (unnaturally split) sum. `alpha_iso` records when the
/// tensor map is an isomorphism because the Tor term vanishes for torsion-free
/// coefficients.
struct KunnethResult {
    int degree = 0;
    FgaGroup tensor_part, tor_part, total;
    bool alpha_iso = false;
};

inline KunnethResult kunneth_product(const GradedGroup& ka, const GradedGroup& kb, int j) {
    KunnethResult r;
    r.degree = j & 1;
    r.tensor_part =
        direct_sum_group(tensor(ka.even, kb.at(j)), tensor(ka.odd, kb.at(j + 1)));
    r.tor_part =
        direct_sum_group(tor(ka.even, kb.at(j + 1)), tor(ka.odd, kb.at(j)));
    r.total = direct_sum_group(r.tensor_part, r.tor_part);
    r.alpha_iso = kb.is_free();
    return r;
}

/// K_j(A; G): K-theory with coefficients in a finitely generated group G,
/// concentrated in degree 0.
inline KunnethResult coefficients(const GradedGroup& ka, const FgaGroup& g, int j) {
    KunnethResult r;
    r.degree = j & 1;
    r.tensor_part = tensor(ka.at(j), g);
    r.tor_part = tor(ka.at(j + 1), g);  // K_{j-1} = K_{j+1} mod 2
    r.total = direct_sum_group(r.tensor_part, r.tor_part);
    r.alpha_iso = g.is_free();
    return r;
}

/// KK reduced to the four torsion/free corner cases, with the assembled total
/// compared against the direct computation. The reduction is valid because
/// torsion subgroups of finitely generated groups are direct summands.
struct FourWaySplit {
    UctResult tt, tf, ft, ff;  // (A_t,B_t), (A_t,B_f), (A_f,B_t), (A_f,B_f)
    FgaGroup assembled;
    FgaGroup direct;
    bool matches = false;
};

inline FourWaySplit four_way(const GradedGroup& ka, const GradedGroup& kb, int j) {
    GradedGroup at = torsion_subgroup(ka).first, af = torsionfree_quotient(ka).first;
    GradedGroup bt = torsion_subgroup(kb).first, bf = torsionfree_quotient(kb).first;
    FourWaySplit s{kk(at, bt, j), kk(at, bf, j), kk(af, bt, j), kk(af, bf, j), {}, {}, false};
    s.assembled =
        direct_sum({s.tt.total, s.tf.total, s.ft.total, s.ff.total}).group();
    s.direct = kk(ka, kb, j).total;
    s.matches = (s.assembled == s.direct);
    return s;
}

// ---------------------------------------------------------------------------
// Splitting predicates: when does KK of a pair collapse onto the
// torsion / torsion-free pieces of one argument?
// ---------------------------------------------------------------------------

/// Report of a three-term splitting 0 -> left -> middle -> right -> 0 of KK in
/// both degrees, together with the surjectivity verdict of the Hom-level map
/// that controls the splitting.
struct SplitSequenceReport {
    bool onto = false;  // the controlling restriction/projection map is surjective
    struct Degree {
        UctResult left, middle, right;
    };
    std::array<Degree, 2> degrees;
};

/// Restriction criterion: the sequence
///   0 -> KK(A_f, B) -> KK(A, B) -> KK(A_t, B) -> 0
/// is exact iff restriction along the torsion inclusion is onto on Hom groups.
/// The surjectivity test is performed generically even though it always
/// succeeds for finitely generated input (torsion parts are summands).
inline SplitSequenceReport split_torsion_restriction(const GradedGroup& ka, const GradedGroup& kb) {
    auto [at, theta] = torsion_subgroup(ka);
    GradedGroup af = torsionfree_quotient(ka).first;

    SplitSequenceReport rep;
    rep.onto = true;
    for (int j = 0; j < 2; ++j) {
        DirectSum from = detail::graded_hom_sum(ka, kb, j);
        DirectSum to = detail::graded_hom_sum(at, kb, j);
        GroupMap restricted = direct_sum_map(
            from, to,
            {induced_map(Bifunctor::hom, Slot::first, theta.from_even, kb.at(j)),
             induced_map(Bifunctor::hom, Slot::first, theta.from_odd, kb.at(j + 1))});
        if (!is_surjective(restricted)) rep.onto = false;
        rep.degrees[j] = {kk(af, kb, j), kk(ka, kb, j), kk(at, kb, j)};
    }
    return rep;
}

/// Dual criterion: the sequence
///   0 -> KK(A, B_t) -> KK(A, B) -> KK(A, B_f) -> 0
/// is controlled by the projection onto the torsion-free quotient of B being
/// onto after applying Hom(K_*(A), -).
inline SplitSequenceReport split_free_projection(const GradedGroup& ka, const GradedGroup& kb) {
    auto [bf, pi] = torsionfree_quotient(kb);
    GradedGroup bt = torsion_subgroup(kb).first;

    SplitSequenceReport rep;
    rep.onto = true;
    for (int j = 0; j < 2; ++j) {
        DirectSum from = detail::graded_hom_sum(ka, kb, j);
        DirectSum to = detail::graded_hom_sum(ka, bf, j);
        // the second slot of each Hom block sits in degree j resp. j+1
        GroupMap projected = direct_sum_map(
            from, to,
            {induced_map(Bifunctor::hom, Slot::second, pi.from(j), ka.even),
             induced_map(Bifunctor::hom, Slot::second, pi.from(j + 1), ka.odd)});
        if (!is_surjective(projected)) rep.onto = false;
        rep.degrees[j] = {kk(ka, bt, j), kk(ka, kb, j), kk(ka, bf, j)};
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Torsion-source / free-target identities
// ---------------------------------------------------------------------------

/// For torsion K_*(A) and free K_*(B): KK collapses onto Ext, which can be
/// rewritten through Hom(-, - ⊗ Q/Z) and through Pontryagin duals with a
/// parity shift (one dual summand per generator of K_*(B)).
struct TorsionFreeKkReport {
    int degree = 0;
    UctResult uct;
    FgaGroup hom_into_qmodz;  // graded Hom(K_*(A), K_{*-1}(B) ⊗ Q/Z) in this degree
    FgaGroup dual_sum;        // ⊕ over KB generators of the shifted Pontryagin dual
    bool hom_vanishes = false;
    bool ext_matches_hom_qmodz = false;
    bool matches_dual_sum = false;
    bool finite = false;
};

inline TorsionFreeKkReport torsion_free_kk(const GradedGroup& ka, const GradedGroup& kb, int j) {
    if (!ka.is_torsion())
        throw HypothesisError("torsion_free_kk: K_*(A) must be a torsion group");
    if (!kb.is_free())
        throw HypothesisError("torsion_free_kk: K_*(B) must be torsion-free");
    TorsionFreeKkReport r;
    r.degree = j & 1;
    r.uct = kk(ka, kb, j);
    r.hom_vanishes = r.uct.hom_part.is_trivial();

    // Hom(KA_0, (Q/Z)^{rank KB_{j+1}}) ⊕ Hom(KA_1, (Q/Z)^{rank KB_j})
    SymbolicHom h0 = hom_symbolic(ka.even, SymbolicCodomain::qmodz(kb.at(j + 1).free_rank));
    SymbolicHom h1 = hom_symbolic(ka.odd, SymbolicCodomain::qmodz(kb.at(j).free_rank));
    r.hom_into_qmodz = direct_sum_group(h0.finite_part, h1.finite_part);
    r.ext_matches_hom_qmodz = (r.hom_into_qmodz == r.uct.ext_part);

    // each degree-e generator of KB contributes one copy of X(K_{j-1-e}(A))
    std::vector<FgaGroup> duals;
    for (std::size_t n = 0; n < kb.at(0).free_rank; ++n)
        duals.push_back(pontryagin_dual(ka.at(j + 1)));  // j-1 = j+1 mod 2
    for (std::size_t n = 0; n < kb.at(1).free_rank; ++n)
        duals.push_back(pontryagin_dual(ka.at(j)));
    r.dual_sum = direct_sum(duals).group();
    r.matches_dual_sum = (r.dual_sum == r.uct.total);
    r.finite = r.uct.total.order().has_value();
    return r;
}

/// The dual-versus-cohomology sequence 0 -> Hom(K, R) -> X(K_j) -> K^{j-1} -> 0
/// for groups with no free direct summand (equivalently, torsion, in the
/// finitely generated world): the real-coefficient Hom vanishes and the
/// comparison map chi is an isomorphism with a parity shift.
struct ChiSequenceReport {
    int degree = 0;             // j: the degree of the dualized K-group
    SymbolicHom hom_to_reals;   // Hom(K_j(A), R); trivial under the hypothesis
    FgaGroup dual;              // X(K_j(A))
    FgaGroup k_dual_group;      // K^{j-1}(A)
    GroupMap chi;               // dual -> k_dual_group
    bool chi_iso = false;
    LongSequence sequence;      // 0 -> Hom(K,R) -> X -> K^* -> 0 as a checkable chain
};

inline ChiSequenceReport chi_sequence(const GradedGroup& ka, int j) {
    for (int d = 0; d < 2; ++d)
        if (ka.at(d).free_rank > 0)
            throw HypothesisError(
                "chi_sequence: K_*(A) has a free direct summand (a free generator in degree " +
                std::to_string(d) + "), so Hom(K_*(A), Z) != 0 and the sequence does not "
                "degenerate; a torsion group is required");

    const FgaGroup& kj = ka.at(j);
    SymbolicHom hr = hom_symbolic(kj, SymbolicCodomain::reals(1));

    // X(K_j) via Hom(-, Q/Z), with its elementary basis: one dual generator
    // per torsion generator, same orders
    Canonicalization dual_canon = canonicalize_orders(kj.torsion);
    FgaGroup dual = dual_canon.group;

    // K^{j-1}(A): only the Ext block survives for torsion input; its pieces
    // are indexed by the torsion generators of K_j(A) paired with the single
    // free generator of K_0(C)
    UctResult kd = k_dual(ka, j + 1);  // degree j-1 = j+1 mod 2
    BifunctorGroup ext_b = ext_group(kj, FgaGroup::free_of_rank(1));
    DirectSum ext_sum = detail::graded_ext_sum(ka, GradedGroup{FgaGroup::free_of_rank(1), {}}, j + 1);
    DirectSum total_sum = direct_sum({kd.hom_part, kd.ext_part});

    // chi: dual generator k  ->  Ext piece k (the connecting map of
    // 0 -> Z -> R -> R/Z -> 0 identifies the two elementary bases)
    const std::size_t which_block = (j & 1) ? 1 : 0;  // Ext(KA_j, Z) sits at this summand
    IntMatrix m(kd.total.gen_count(), dual.gen_count());
    for (std::size_t c = 0; c < dual.gen_count(); ++c) {
        Elem elementary = dual_canon.gens_in_pres * dual.normalized(unit_elem(dual.gen_count(), c));
        Elem in_ext = ext_b.encode(elementary);
        Elem in_ext_sum = ext_sum.inject(which_block, in_ext);
        m.set_column(c, total_sum.inject(1, in_ext_sum));
    }
    GroupMap chi{dual, kd.total, std::move(m)};
    bool iso = is_isomorphism(chi);

    FgaGroup zero = FgaGroup::trivial();
    LongSequence seq({zero, hr.finite_part, dual, kd.total, zero},
                     {GroupMap::zero(zero, hr.finite_part), GroupMap::zero(hr.finite_part, dual),
                      chi, GroupMap::zero(kd.total, zero)});
    return {j & 1, hr, dual, kd.total, chi, iso, std::move(seq)};
}

/// The closure of zero in the natural topology on KK_j(A, B): the Pext term,
/// which vanishes for finitely generated K-theory. The quotient by it (the
/// Hausdorff quotient) is therefore all of KK; when K_*(A) is torsion-free it
/// coincides with the Hom part because Ext vanishes.
struct ClosureReport {
    FgaGroup closure_of_zero;
    FgaGroup hausdorff_quotient;
    bool quotient_is_hom_part = false;
    PextResult pext_even, pext_odd;
};

inline ClosureReport closure_of_zero(const GradedGroup& ka, const GradedGroup& kb, int j) {
    UctResult u = kk(ka, kb, j);
    ClosureReport r;
    r.closure_of_zero = FgaGroup::trivial();
    r.hausdorff_quotient = u.total;
    r.quotient_is_hom_part = (u.total == u.hom_part);
    r.pext_even = pext(ka.even, kb.at(j));
    r.pext_odd = pext(ka.odd, kb.at(j + 1));
    return r;
}

}  // namespace kkcalc
