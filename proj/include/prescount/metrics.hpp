#ifndef PRESCOUNT_METRICS_HPP
#define PRESCOUNT_METRICS_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <unordered_map>

#include "prescount/bigint.hpp"
#include "prescount/formula.hpp"

namespace prescount {

// Coefficient / constant / modulus sets of a formula.
//
//   coeff_set: {0,1,-1,2,-2} plus +-a for every coefficient a of s1-s2 over
//              order atoms s1 < s2 (congruence atoms contribute nothing);
//   const_set: same with the constant of s1-s2;
//   mod_set:   {1} plus every congruence modulus and every modulo-counting
//              quantifier modulus (residue terms contribute nothing);
//   p_set:     coeff_set union mod_set.
//
// coeff/const are closed under negation by construction; mod members are
// positive.
struct MetricSummary {
    std::set<Int> coeff_set;
    std::set<Int> const_set;
    std::set<Int> mod_set;
    std::set<Int> p_set;
    long qd = 0;
    Int size = 0;

    Int max_coeff() const { return *coeff_set.rbegin(); }
    Int max_const() const { return *const_set.rbegin(); }
    Int max_mod() const { return *mod_set.rbegin(); }
    Int max_p() const { return *p_set.rbegin(); }

    Int lcm_mod() const {
        Int n = 1;
        for (const Int& k : mod_set)
            if (k >= 1) n = lcm_int(n, k);
        return n;
    }

    bool sets_subset_of(const MetricSummary& o) const {
        auto sub = [](const std::set<Int>& a, const std::set<Int>& b) {
            return std::includes(b.begin(), b.end(), a.begin(), a.end());
        };
        return sub(coeff_set, o.coeff_set) && sub(const_set, o.const_set) &&
               sub(mod_set, o.mod_set);
    }

    bool sets_equal(const MetricSummary& o) const {
        return coeff_set == o.coeff_set && const_set == o.const_set && mod_set == o.mod_set;
    }
};

inline long quantifier_depth(const Formula& f) {
    std::unordered_map<const FNode*, long> memo;
    std::function<long(const Formula&)> go = [&](const Formula& g) -> long {
        auto it = memo.find(g.raw());
        if (it != memo.end()) return it->second;
        long d = 0;
        switch (g.kind()) {
        case FKind::Atom:
            d = 0;
            break;
        case FKind::Not:
            d = go(g.child());
            break;
        case FKind::And:
        case FKind::Or:
        case FKind::Implies:
        case FKind::Iff:
            d = std::max(go(g.left()), go(g.right()));
            break;
        case FKind::Exists:
            d = 1 + go(g.body());
            break;
        case FKind::ModCount:
        case FKind::AtLeast:
        case FKind::Exactly:
            d = static_cast<long>(g.vars().size()) + go(g.body());
            break;
        }
        memo.emplace(g.raw(), d);
        return d;
    };
    return go(f);
}

// size(f) = AST node count plus, for every integer literal, 1 + bit-length.
// Computed with tree multiplicity (shared subtrees count each time they
// occur), memoized over the DAG.
inline Int size_measure(const Formula& f) {
    std::unordered_map<const FNode*, Int> memo;
    auto atom_size = [](const Atom& a) -> Int {
        Int s = Int(1) + Int(a.lhs.size_measure()) + Int(a.rhs.size_measure());
        if (a.kind == AtomKind::ModEq) s += 1 + Int(bit_length(a.modulus));
        return s;
    };
    std::function<Int(const Formula&)> go = [&](const Formula& g) -> Int {
        auto it = memo.find(g.raw());
        if (it != memo.end()) return it->second;
        Int s = 0;
        switch (g.kind()) {
        case FKind::Atom:
            s = atom_size(g.atom_ref());
            break;
        case FKind::Not:
            s = 1 + go(g.child());
            break;
        case FKind::And:
        case FKind::Or:
        case FKind::Implies:
        case FKind::Iff:
            s = 1 + go(g.left()) + go(g.right());
            break;
        case FKind::Exists:
            s = 2 + go(g.body());
            break;
        case FKind::ModCount:
            s = 1 + Int(g.vars().size()) + Int(1 + bit_length(g.modulus())) +
                Int(g.residue().size_measure()) + go(g.body());
            break;
        case FKind::AtLeast:
        case FKind::Exactly:
            s = 1 + Int(g.vars().size()) + Int(1 + bit_length(g.count())) + go(g.body());
            break;
        }
        memo.emplace(g.raw(), s);
        return s;
    };
    return go(f);
}

inline MetricSummary metrics(const Formula& f) {
    MetricSummary m;
    for (int k = 0; k <= 2; ++k) {
        m.coeff_set.insert(Int(k));
        m.coeff_set.insert(Int(-k));
        m.const_set.insert(Int(k));
        m.const_set.insert(Int(-k));
    }
    m.mod_set.insert(1);
    walk_nodes(f, [&](const Formula& g) {
        switch (g.kind()) {
        case FKind::Atom: {
            const Atom& a = g.atom_ref();
            if (a.kind == AtomKind::Less) {
                Term diff = a.lhs - a.rhs;
                for (const auto& [v, c] : diff.coeffs()) {
                    (void)v;
                    m.coeff_set.insert(c);
                    m.coeff_set.insert(-c);
                }
                m.const_set.insert(diff.constant_part());
                m.const_set.insert(-diff.constant_part());
            } else {
                m.mod_set.insert(a.modulus);
            }
            break;
        }
        case FKind::ModCount:
            m.mod_set.insert(g.modulus());
            break;
        default:
            break;
        }
    });
    m.p_set = m.coeff_set;
    m.p_set.insert(m.mod_set.begin(), m.mod_set.end());
    m.qd = quantifier_depth(f);
    m.size = size_measure(f);
    return m;
}

// Block depth per Def. 2.4 with the counting extension: a counting node with
// threshold c charges 2*ceil(log2 c) + 2 levels. Undefined (nullopt) when a
// modulo-counting node is present.
inline std::optional<long> block_depth(const Formula& f) {
    // For every node we track (bd, h) where h is the least n such that the
    // node is a Boolean combination of block-depth-n formulas; for atoms
    // h = 0, for quantifier nodes h = bd, for connectives h = max over the
    // combination's leaves. A non-atomic Boolean combination then has
    // bd = h + 1.
    struct Val {
        long bd;
        long h;
    };
    std::unordered_map<const FNode*, std::optional<Val>> memo;
    auto ceil_log2 = [](const Int& c) -> long {
        // smallest k with 2^k >= c (c >= 1)
        long k = 0;
        Int v = 1;
        while (v < c) {
            v <<= 1;
            ++k;
        }
        return k;
    };
    std::function<std::optional<Val>(const Formula&)> go =
        [&](const Formula& g) -> std::optional<Val> {
        auto it = memo.find(g.raw());
        if (it != memo.end()) return it->second;
        std::optional<Val> out;
        switch (g.kind()) {
        case FKind::Atom:
            out = Val{0, 0};
            break;
        case FKind::Not: {
            auto c = go(g.child());
            if (c) out = Val{c->h + 1, c->h};
            break;
        }
        case FKind::And:
        case FKind::Or:
        case FKind::Implies:
        case FKind::Iff: {
            auto l = go(g.left());
            auto r = go(g.right());
            if (l && r) {
                long h = std::max(l->h, r->h);
                out = Val{h + 1, h};
            }
            break;
        }
        case FKind::Exists: {
            // Strip the maximal block of unary exists.
            Formula beta = g.body();
            while (beta.kind() == FKind::Exists) beta = beta.body();
            auto b = go(beta);
            if (b) {
                long bd = b->h + 1;
                out = Val{bd, bd};
            }
            break;
        }
        case FKind::AtLeast:
        case FKind::Exactly: {
            auto b = go(g.body());
            if (b) {
                long bd = b->h + 2 * ceil_log2(g.count()) + 2;
                out = Val{bd, bd};
            }
            break;
        }
        case FKind::ModCount:
            out = std::nullopt;
            break;
        }
        memo.emplace(g.raw(), out);
        return out;
    };
    auto v = go(f);
    if (!v) return std::nullopt;
    return v->bd;
}

} // namespace prescount

#endif
