#pragma once

// Brute-force oracles, independent of the library's normal-form machinery.
// Finite groups are handled as explicit element machines; structure is
// recovered from order statistics, never from Smith normal form.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "kkcalc/fga.hpp"
#include "kkcalc/group_map.hpp"

namespace oracle {

using kkcalc::Elem;
using kkcalc::FgaGroup;
using kkcalc::GroupMap;
using kkcalc::Int;
using kkcalc::IntMatrix;

/// Explicit finite abelian group: all tuples over the given cyclic orders.
struct ExplicitGroup {
    std::vector<Int> orders;  // each >= 1

    explicit ExplicitGroup(std::vector<Int> ord) : orders(std::move(ord)) {}
    explicit ExplicitGroup(const FgaGroup& g) {
        if (!g.is_torsion()) throw std::logic_error("ExplicitGroup needs a finite group");
        orders = g.torsion;
    }

    std::size_t size() const {
        Int n = 1;
        for (const Int& d : orders) n *= d;
        return static_cast<std::size_t>(n);
    }

    Elem element(std::size_t idx) const {
        Elem e(orders.size());
        for (std::size_t i = 0; i < orders.size(); ++i) {
            Int d = orders[i];
            e[i] = Int(idx) % d;
            idx = static_cast<std::size_t>(Int(idx) / d);
        }
        return e;
    }

    std::vector<Elem> all_elements() const {
        std::vector<Elem> out;
        out.reserve(size());
        for (std::size_t i = 0; i < size(); ++i) out.push_back(element(i));
        return out;
    }

    Elem reduce(Elem e) const {
        for (std::size_t i = 0; i < orders.size(); ++i) e[i] = kkcalc::floor_mod(e[i], orders[i]);
        return e;
    }

    Elem add(const Elem& a, const Elem& b) const { return reduce(kkcalc::add(a, b)); }
    Elem smul(const Int& n, Elem a) const { return reduce(kkcalc::scaled(std::move(a), n)); }
    Elem zero() const { return Elem(orders.size()); }
};

/// Invariant factors of a finite abelian group given as a closed element set
/// inside an ambient machine, recovered from the counts #{x : p^k x = 0}.
inline std::vector<Int> invariant_factors_of_elements(const ExplicitGroup& amb,
                                                      const std::vector<Elem>& elems) {
    const Int n = Int(elems.size());
    if (n == 1) return {};
    std::map<Int, std::vector<unsigned>> ppowers;  // prime -> multiset of exponents
    for (const auto& [p, dummy] : kkcalc::factorize(n)) {
        (void)dummy;
        std::vector<std::size_t> count_killed;  // by p^k, k = 0, 1, ...
        count_killed.push_back(1);              // only 0 is killed by p^0
        Int pk = 1;
        for (;;) {
            pk *= p;
            std::size_t c = 0;
            for (const Elem& x : elems)
                if (kkcalc::is_zero(amb.smul(pk, x))) ++c;
            count_killed.push_back(c);
            if (c == count_killed[count_killed.size() - 2]) break;  // stabilized
        }
        // e_k = log_p(count); #factors with exponent >= k is e_k - e_{k-1}
        auto logp = [&](std::size_t c) {
            unsigned e = 0;
            Int v(c);
            while (v > 1) { v /= p; ++e; }
            return e;
        };
        std::vector<unsigned> ge;
        for (std::size_t k = 1; k < count_killed.size(); ++k)
            ge.push_back(logp(count_killed[k]) - logp(count_killed[k - 1]));
        for (std::size_t k = 0; k < ge.size(); ++k) {
            unsigned next = (k + 1 < ge.size()) ? ge[k + 1] : 0;
            for (unsigned c = next; c < ge[k]; ++c) ppowers[p].push_back(k + 1);
        }
    }
    // assemble invariant factors: pair the largest prime powers together
    std::size_t len = 0;
    for (auto& [p, exps] : ppowers) {
        std::sort(exps.begin(), exps.end(), std::greater<>());
        len = std::max(len, exps.size());
    }
    std::vector<Int> factors(len, Int(1));
    for (const auto& [p, exps] : ppowers)
        for (std::size_t i = 0; i < exps.size(); ++i) {
            Int pk = 1;
            for (unsigned t = 0; t < exps[i]; ++t) pk *= p;
            factors[i] *= pk;
        }
    std::sort(factors.begin(), factors.end());
    return factors;
}

/// Subgroup generated by elements, as an explicit element set (BFS closure).
inline std::vector<Elem> subgroup_closure(const ExplicitGroup& amb, const std::vector<Elem>& gens) {
    std::set<Elem> seen{amb.zero()};
    std::vector<Elem> queue{amb.zero()};
    while (!queue.empty()) {
        Elem x = queue.back();
        queue.pop_back();
        for (const Elem& g : gens) {
            Elem y = amb.add(x, amb.reduce(g));
            if (seen.insert(y).second) queue.push_back(y);
        }
    }
    return {seen.begin(), seen.end()};
}

/// Invariant factors of ambient/subgroup via the coset counting
/// #{x : p^k x in S} / |S|.
inline std::vector<Int> quotient_invariant_factors(const ExplicitGroup& amb,
                                                   const std::vector<Elem>& sub) {
    std::set<Elem> s(sub.begin(), sub.end());
    const Int q = Int(amb.size()) / Int(sub.size());
    if (q == 1) return {};
    std::map<Int, std::vector<unsigned>> ppowers;
    for (const auto& [p, dummy] : kkcalc::factorize(q)) {
        (void)dummy;
        std::vector<std::size_t> killed{static_cast<std::size_t>(1)};
        Int pk = 1;
        for (;;) {
            pk *= p;
            std::size_t c = 0;
            for (std::size_t i = 0; i < amb.size(); ++i)
                if (s.count(amb.smul(pk, amb.element(i)))) ++c;
            c /= sub.size();
            killed.push_back(c);
            if (c == killed[killed.size() - 2]) break;
        }
        auto logp = [&](std::size_t c) {
            unsigned e = 0;
            Int v(c);
            while (v > 1) { v /= p; ++e; }
            return e;
        };
        std::vector<unsigned> ge;
        for (std::size_t k = 1; k < killed.size(); ++k)
            ge.push_back(logp(killed[k]) - logp(killed[k - 1]));
        for (std::size_t k = 0; k < ge.size(); ++k) {
            unsigned next = (k + 1 < ge.size()) ? ge[k + 1] : 0;
            for (unsigned c = next; c < ge[k]; ++c) ppowers[p].push_back(k + 1);
        }
    }
    std::size_t len = 0;
    for (auto& [p, exps] : ppowers) {
        std::sort(exps.begin(), exps.end(), std::greater<>());
        len = std::max(len, exps.size());
    }
    std::vector<Int> factors(len, Int(1));
    for (const auto& [p, exps] : ppowers)
        for (std::size_t i = 0; i < exps.size(); ++i) {
            Int pk = 1;
            for (unsigned t = 0; t < exps[i]; ++t) pk *= p;
            factors[i] *= pk;
        }
    std::sort(factors.begin(), factors.end());
    return factors;
}

inline std::vector<Int> factors_of(const FgaGroup& g) { return g.torsion; }

// ---------------------------------------------------------------------------
// Cyclic bifunctor oracles. Arguments are cyclic orders with 0 standing for Z.
// Hom is decided by exhaustive map checking, tensor and Tor through the free
// resolution 0 -> Z -> Z -> Z/d -> 0 (so H/dH and H[d]), Ext as H/dH with its
// coset group structure.
// ---------------------------------------------------------------------------

/// Structure of {a in Z/e : d*a = 0 in Z/e} (all homomorphisms Z/d -> Z/e, or
/// all of Z/e when d = 0).
inline FgaGroup hom_oracle(const Int& d, const Int& e) {
    if (e == 0) {
        if (d == 0) return FgaGroup::free_of_rank(1);  // maps Z -> Z: choice of image of 1
        // torsion to Z: d*a = 0 forces a = 0
        return FgaGroup::trivial();
    }
    ExplicitGroup ze({e});
    std::vector<Elem> valid;
    for (std::size_t i = 0; i < ze.size(); ++i) {
        Elem a = ze.element(i);
        if (d == 0 || kkcalc::is_zero(ze.smul(d, a))) valid.push_back(a);
    }
    return FgaGroup(0, invariant_factors_of_elements(ze, valid));
}

/// H/dH by explicit cosets (tensor and Ext of cyclic arguments).
inline FgaGroup mod_d_quotient_oracle(const Int& d, const Int& e) {
    if (d == 0) throw std::logic_error("use the unit law for a free first argument");
    if (e == 0) {
        // Z/dZ: residues 0..d-1 under addition mod d
        ExplicitGroup zd({d});
        return FgaGroup(0, invariant_factors_of_elements(zd, zd.all_elements()));
    }
    ExplicitGroup ze({e});
    std::vector<Elem> dh;
    for (std::size_t i = 0; i < ze.size(); ++i) dh.push_back(ze.smul(d, ze.element(i)));
    std::set<Elem> dh_set(dh.begin(), dh.end());
    return FgaGroup(0, quotient_invariant_factors(ze, {dh_set.begin(), dh_set.end()}));
}

inline FgaGroup tensor_oracle(const Int& d, const Int& e) {
    if (d == 0 && e == 0) return FgaGroup::free_of_rank(1);  // Z (x) Z
    if (d == 0) return FgaGroup::cyclic(e);                  // unit law
    return mod_d_quotient_oracle(d, e);
}

/// H[d] = ker(d : H -> H) by enumeration.
inline FgaGroup tor_oracle(const Int& d, const Int& e) {
    if (d == 0 || e == 0) return FgaGroup::trivial();  // free argument
    ExplicitGroup ze({e});
    std::vector<Elem> killed;
    for (std::size_t i = 0; i < ze.size(); ++i)
        if (kkcalc::is_zero(ze.smul(d, ze.element(i)))) killed.push_back(ze.element(i));
    return FgaGroup(0, invariant_factors_of_elements(ze, killed));
}

inline FgaGroup ext_oracle(const Int& d, const Int& e) {
    if (d == 0) return FgaGroup::trivial();  // free first argument
    return mod_d_quotient_oracle(d, e);
}

// ---------------------------------------------------------------------------
// Element-chase snake oracle over explicit finite groups.
// ---------------------------------------------------------------------------

struct SnakeOracleResult {
    std::vector<std::vector<Int>> node_factors;  // six nodes
    std::vector<std::size_t> image_orders;       // five maps
    bool exact = false;                          // at the four interior nodes
};

/// Recompute the kernel-cokernel sequence of a ladder by pure enumeration.
/// All six corner groups must be finite and small.
inline SnakeOracleResult snake_oracle(const GroupMap& top_f, const GroupMap& top_g,
                                      const GroupMap& bot_f, const GroupMap& bot_g,
                                      const GroupMap& va, const GroupMap& vb,
                                      const GroupMap& vc) {
    ExplicitGroup A(top_f.domain()), B(top_g.domain()), C(top_g.codomain());
    ExplicitGroup A2(bot_f.domain()), B2(bot_g.domain()), C2(bot_g.codomain());

    auto apply = [](const GroupMap& m, const Elem& x) { return m.apply(x); };

    auto kernel_set = [&](const GroupMap& m, const ExplicitGroup& dom) {
        std::vector<Elem> out;
        for (std::size_t i = 0; i < dom.size(); ++i)
            if (kkcalc::is_zero(m.apply(dom.element(i)))) out.push_back(dom.element(i));
        return out;
    };
    std::vector<Elem> ka = kernel_set(va, A), kb = kernel_set(vb, B), kc = kernel_set(vc, C);

    auto image_set = [&](const GroupMap& m, const ExplicitGroup& dom) {
        std::set<Elem> out;
        for (std::size_t i = 0; i < dom.size(); ++i) out.insert(m.apply(dom.element(i)));
        return out;
    };
    std::set<Elem> im_va = image_set(va, A), im_vb = image_set(vb, B), im_vc = image_set(vc, C);

    SnakeOracleResult r;
    r.node_factors.push_back(invariant_factors_of_elements(A, ka));
    r.node_factors.push_back(invariant_factors_of_elements(B, kb));
    r.node_factors.push_back(invariant_factors_of_elements(C, kc));
    r.node_factors.push_back(
        quotient_invariant_factors(A2, {im_va.begin(), im_va.end()}));
    r.node_factors.push_back(
        quotient_invariant_factors(B2, {im_vb.begin(), im_vb.end()}));
    r.node_factors.push_back(
        quotient_invariant_factors(C2, {im_vc.begin(), im_vc.end()}));

    // the six maps as element functions; cosets keyed by canonical representative
    auto coset_rep = [](const std::set<Elem>& sub, const ExplicitGroup& amb, const Elem& x) {
        // smallest element of x + sub in lexicographic order
        std::optional<Elem> best;
        for (const Elem& s : sub) {
            Elem y = amb.add(x, s);
            if (!best || y < *best) best = y;
        }
        return *best;
    };

    auto chase_delta = [&](const Elem& z) {
        for (std::size_t i = 0; i < B.size(); ++i) {
            Elem y = B.element(i);
            if (apply(top_g, y) != z) continue;
            Elem w = apply(vb, y);
            for (std::size_t u = 0; u < A2.size(); ++u)
                if (apply(bot_f, A2.element(u)) == w)
                    return coset_rep(im_va, A2, A2.element(u));
        }
        throw std::logic_error("snake oracle: chase failed");
    };

    // image orders of the five maps in the output sequence
    std::set<Elem> im1, im2, im3, im4, im5;
    for (const Elem& x : ka) im1.insert(apply(top_f, x));
    for (const Elem& x : kb) im2.insert(apply(top_g, x));
    for (const Elem& z : kc) im3.insert(chase_delta(z));
    for (std::size_t i = 0; i < A2.size(); ++i)
        im4.insert(coset_rep(im_vb, B2, apply(bot_f, A2.element(i))));
    for (std::size_t i = 0; i < B2.size(); ++i)
        im5.insert(coset_rep(im_vc, C2, apply(bot_g, B2.element(i))));
    r.image_orders = {im1.size(), im2.size(), im3.size(), im4.size(), im5.size()};

    // exactness at the four interior nodes, elementwise
    auto set_of = [](const std::vector<Elem>& v) { return std::set<Elem>(v.begin(), v.end()); };
    std::set<Elem> ka_set = set_of(ka), kb_set = set_of(kb), kc_set = set_of(kc);

    bool ok = true;
    {  // at ker vb: im(top_f|ka) = {y in kb : top_g(y) in ... } ∩ kernel of next
        std::set<Elem> im;
        for (const Elem& x : ka) im.insert(apply(top_f, x));
        std::set<Elem> ker;
        for (const Elem& y : kb)
            if (kkcalc::is_zero(apply(top_g, y))) ker.insert(y);
        ok = ok && (im == ker);
    }
    {  // at ker vc: kernel of delta
        std::set<Elem> im;
        for (const Elem& y : kb) im.insert(apply(top_g, y));
        std::set<Elem> ker;
        Elem zero_rep = coset_rep(im_va, A2, A2.zero());
        for (const Elem& z : kc)
            if (chase_delta(z) == zero_rep) ker.insert(z);
        ok = ok && (im == ker);
    }
    {  // at coker va: image of delta = kernel of induced bot_f
        std::set<Elem> im;
        for (const Elem& z : kc) im.insert(chase_delta(z));
        std::set<Elem> ker;
        for (std::size_t i = 0; i < A2.size(); ++i) {
            Elem u = A2.element(i);
            if (im_vb.count(apply(bot_f, u))) ker.insert(coset_rep(im_va, A2, u));
        }
        ok = ok && (im == ker);
    }
    {  // at coker vb
        std::set<Elem> im;
        for (std::size_t i = 0; i < A2.size(); ++i)
            im.insert(coset_rep(im_vb, B2, apply(bot_f, A2.element(i))));
        std::set<Elem> ker;
        for (std::size_t i = 0; i < B2.size(); ++i) {
            Elem y = B2.element(i);
            if (im_vc.count(apply(bot_g, y))) ker.insert(coset_rep(im_vb, B2, y));
        }
        ok = ok && (im == ker);
    }
    r.exact = ok;
    return r;
}

}  // namespace oracle
