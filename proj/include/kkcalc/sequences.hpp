#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "kkcalc/group_map.hpp"

namespace kkcalc {

namespace detail {

/// Lattice of {y : out(y) = 0} inside the middle group's coordinates.
inline IntMatrix kernel_lattice(const GroupMap& out) {
    IntMatrix sys =
        IntMatrix::hcat(out.matrix(), scaled(out.codomain().relation_matrix(), Int(-1)));
    return kernel_basis(sys).row_slice(0, out.domain().gen_count());
}

/// Lattice of the image of `in` in its codomain's coordinates.
inline IntMatrix image_lattice(const GroupMap& in) {
    return subgroup_lattice(in.codomain(), in.matrix());
}

}  // namespace detail

/// Result of testing im = ker at one interior node of a sequence.
struct NodeReport {
    std::size_t node = 0;           // index of the group the report is about
    bool image_in_kernel = false;   // composite of adjacent maps vanishes
    bool kernel_in_image = false;
    std::optional<Elem> witness;    // element of the node group exhibiting a failure

    bool exact() const { return image_in_kernel && kernel_in_image; }
};

/// A composable chain of groups and maps: groups[0] -f0-> groups[1] -f1-> ...
struct LongSequence {
    std::vector<FgaGroup> groups;
    std::vector<GroupMap> maps;

    LongSequence(std::vector<FgaGroup> gs, std::vector<GroupMap> ms)
        : groups(std::move(gs)), maps(std::move(ms)) {
        if (groups.size() != maps.size() + 1)
            throw ValidationError("LongSequence: need one more group than maps");
        for (std::size_t i = 0; i < maps.size(); ++i)
            if (maps[i].domain() != groups[i] || maps[i].codomain() != groups[i + 1])
                throw ValidationError("LongSequence: maps do not compose along the chain");
    }
};

/// im = ker at every interior node, with a concrete witness element on failure.
inline std::vector<NodeReport> check_exact(const LongSequence& seq) {
    std::vector<NodeReport> out;
    for (std::size_t i = 1; i + 1 < seq.groups.size(); ++i) {
        const GroupMap& in = seq.maps[i - 1];
        const GroupMap& outm = seq.maps[i];
        NodeReport rep;
        rep.node = i;
        rep.image_in_kernel = compose(outm, in).is_zero_map();
        if (!rep.image_in_kernel) {
            for (std::size_t j = 0; j < in.matrix().cols(); ++j) {
                Elem y = in.matrix().column(j);
                if (!is_zero(outm.apply(y))) {
                    rep.witness = seq.groups[i].normalized(y);
                    break;
                }
            }
        }
        IntMatrix ker = detail::kernel_lattice(outm);
        IntMatrix im = detail::image_lattice(in);
        rep.kernel_in_image = true;
        for (std::size_t j = 0; j < ker.cols(); ++j) {
            if (!lattice_contains(im, ker.column(j))) {
                rep.kernel_in_image = false;
                if (!rep.witness) rep.witness = seq.groups[i].normalized(ker.column(j));
                break;
            }
        }
        out.push_back(std::move(rep));
    }
    return out;
}

inline bool all_exact(const std::vector<NodeReport>& reports) {
    for (const NodeReport& r : reports)
        if (!r.exact()) return false;
    return true;
}

/// 0 -> a -f-> b -g-> c -> 0 with exactness machine-checked on construction.
struct ShortExactSeq {
    FgaGroup a, b, c;
    GroupMap f, g;

    ShortExactSeq(GroupMap f_, GroupMap g_)
        : a(f_.domain()), b(f_.codomain()), c(g_.codomain()), f(std::move(f_)), g(std::move(g_)) {
        if (f.codomain() != g.domain())
            throw ValidationError("ShortExactSeq: maps do not compose");
        if (!is_injective(f)) throw ValidationError("ShortExactSeq: first map is not injective");
        if (!is_surjective(g)) throw ValidationError("ShortExactSeq: second map is not surjective");
        LongSequence chain({a, b, c}, {f, g});
        if (!all_exact(check_exact(chain)))
            throw ValidationError("ShortExactSeq: im(f) != ker(g)");
    }

    LongSequence as_long_sequence() const {
        FgaGroup zero = FgaGroup::trivial();
        return LongSequence({zero, a, b, c, zero},
                            {GroupMap::zero(zero, a), f, g, GroupMap::zero(c, zero)});
    }
};

/// Splitting is reported as section existence. Whether the middle happens to
/// be abstractly isomorphic to a + c is reported separately and is not taken
/// as a splitting criterion.
struct SplitReport {
    bool split = false;
    std::optional<GroupMap> section;  // c -> b with g∘s = id
    bool middle_iso_to_sum = false;
};

inline SplitReport is_split(const ShortExactSeq& s) {
    SplitReport rep;
    rep.section = find_section(s.g);
    rep.split = rep.section.has_value();
    rep.middle_iso_to_sum = (direct_sum_group(s.a, s.c) == s.b);
    return rep;
}

/// Two rows joined by vertical maps, shaped for the snake lemma:
///
///     a --top_f--> b --top_g--> c --> 0      (exact at b and c)
///     |va          |vb          |vc
///     v            v            v
/// 0-> a2 --bot_f-> b2 --bot_g-> c2           (exact at a2 and b2)
///
/// Both squares must commute; hypotheses are checked on construction.
struct LadderDiagram {
    GroupMap top_f, top_g, bot_f, bot_g, va, vb, vc;

    LadderDiagram(GroupMap tf, GroupMap tg, GroupMap bf, GroupMap bg, GroupMap a, GroupMap b,
                  GroupMap c)
        : top_f(std::move(tf)), top_g(std::move(tg)), bot_f(std::move(bf)), bot_g(std::move(bg)),
          va(std::move(a)), vb(std::move(b)), vc(std::move(c)) {
        if (top_f.codomain() != top_g.domain() || bot_f.codomain() != bot_g.domain())
            throw ValidationError("LadderDiagram: rows do not compose");
        if (va.domain() != top_f.domain() || va.codomain() != bot_f.domain() ||
            vb.domain() != top_g.domain() || vb.codomain() != bot_g.domain() ||
            vc.domain() != top_g.codomain() || vc.codomain() != bot_g.codomain())
            throw ValidationError("LadderDiagram: vertical maps do not line up");
        if (compose(vb, top_f) != compose(bot_f, va))
            throw ValidationError("LadderDiagram: left square does not commute");
        if (compose(vc, top_g) != compose(bot_g, vb))
            throw ValidationError("LadderDiagram: right square does not commute");
        if (!is_surjective(top_g))
            throw ValidationError("LadderDiagram: top row not right-exact (g not onto)");
        LongSequence top({top_f.domain(), top_g.domain(), top_g.codomain()}, {top_f, top_g});
        if (!all_exact(check_exact(top)))
            throw ValidationError("LadderDiagram: top row not exact at the middle");
        if (!is_injective(bot_f))
            throw ValidationError("LadderDiagram: bottom row not left-exact (f not mono)");
        LongSequence bot({bot_f.domain(), bot_g.domain(), bot_g.codomain()}, {bot_f, bot_g});
        if (!all_exact(check_exact(bot)))
            throw ValidationError("LadderDiagram: bottom row not exact at the middle");
    }
};

/// Kernel-cokernel sequence of a ladder with the connecting map computed by an
/// element chase: lift along top_g, push down the middle, pull back along
/// bot_f. Lifts are the canonical solutions of solve(), so the output is
/// reproducible; independence of the lift choice is verified on every
/// generator before the map is accepted.
struct SnakeResult {
    LongSequence sequence;  // ker va -> ker vb -> ker vc -> coker va -> coker vb -> coker vc
    GroupMap connecting;    // the third map of the chain
};

inline SnakeResult snake(const LadderDiagram& l) {
    EmbeddedSubgroup ka = kernel(l.va), kb = kernel(l.vb), kc = kernel(l.vc);
    QuotientGroup ca = cokernel(l.va), cb = cokernel(l.vb), cc = cokernel(l.vc);

    auto restrict_map = [](const GroupMap& f, const EmbeddedSubgroup& from,
                           const EmbeddedSubgroup& to) {
        IntMatrix m(to.group.gen_count(), from.group.gen_count());
        for (std::size_t j = 0; j < from.group.gen_count(); ++j) {
            Elem y = f.apply(from.embedding.matrix().column(j));
            auto coords = solve(to.embedding, y);
            if (!coords) throw Error("snake: kernel does not map into kernel");
            m.set_column(j, *coords);
        }
        return GroupMap{from.group, to.group, std::move(m)};
    };
    GroupMap k1 = restrict_map(l.top_f, ka, kb);
    GroupMap k2 = restrict_map(l.top_g, kb, kc);

    auto descend_map = [](const GroupMap& f, const QuotientGroup& from, const QuotientGroup& to) {
        // well-defined on cosets because the squares commute
        IntMatrix m(to.group.gen_count(), from.group.gen_count());
        for (std::size_t j = 0; j < from.group.gen_count(); ++j) {
            auto rep = solve(from.projection, unit_elem(from.group.gen_count(), j));
            if (!rep) throw Error("snake: projection not surjective");
            m.set_column(j, to.projection.apply(f.apply(*rep)));
        }
        return GroupMap{from.group, to.group, std::move(m)};
    };
    GroupMap c1 = descend_map(l.bot_f, ca, cb);
    GroupMap c2 = descend_map(l.bot_g, cb, cc);

    auto chase = [&](const Elem& z_in_c) {
        auto lift = solve(l.top_g, z_in_c);
        if (!lift) throw Error("snake: failed to lift along the top row");
        auto chase_from = [&](const Elem& y) {
            Elem w = l.vb.apply(y);
            auto u = solve(l.bot_f, w);
            if (!u) throw Error("snake: chased element missed the bottom-left image");
            return ca.projection.apply(*u);
        };
        Elem delta = chase_from(*lift);
        // verify independence of the lift choice: shift by a kernel generator of top_g
        EmbeddedSubgroup kg = kernel(l.top_g);
        for (std::size_t j = 0; j < kg.group.gen_count(); ++j) {
            Elem alt = l.top_g.domain().normalized(
                add(*lift, kg.embedding.matrix().column(j)));
            if (chase_from(alt) != delta)
                throw Error("snake: connecting map depends on the choice of lift");
        }
        return delta;
    };

    IntMatrix dm(ca.group.gen_count(), kc.group.gen_count());
    for (std::size_t j = 0; j < kc.group.gen_count(); ++j)
        dm.set_column(j, chase(kc.embedding.matrix().column(j)));
    GroupMap delta{kc.group, ca.group, std::move(dm)};

    LongSequence seq({ka.group, kb.group, kc.group, ca.group, cb.group, cc.group},
                     {k1, k2, delta, c1, c2});
    return {std::move(seq), std::move(delta)};
}

}  // namespace kkcalc
