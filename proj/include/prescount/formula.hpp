#ifndef PRESCOUNT_FORMULA_HPP
#define PRESCOUNT_FORMULA_HPP

#include <algorithm>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "prescount/errors.hpp"
#include "prescount/term.hpp"

namespace prescount {

enum class AtomKind { Less, ModEq };

// s < t  or  s ==_k t (k >= 1; k = 1 is legal and always true).
struct Atom {
    AtomKind kind;
    Term lhs;
    Term rhs;
    Int modulus; // ModEq only

    static Atom less(Term l, Term r) {
        Atom a;
        a.kind = AtomKind::Less;
        a.lhs = std::move(l);
        a.rhs = std::move(r);
        a.modulus = 0;
        return a;
    }

    static Atom mod_eq(Term l, Int k, Term r) {
        if (k < 1) throw ValidationError("congruence modulus must be >= 1");
        Atom a;
        a.kind = AtomKind::ModEq;
        a.lhs = std::move(l);
        a.rhs = std::move(r);
        a.modulus = std::move(k);
        return a;
    }

    bool operator==(const Atom& o) const {
        return kind == o.kind && lhs == o.lhs && rhs == o.rhs &&
               (kind != AtomKind::ModEq || modulus == o.modulus);
    }
};

enum class FKind { Atom, Not, And, Or, Implies, Iff, Exists, ModCount, AtLeast, Exactly };

struct FNode;

class Formula {
public:
    Formula() = default;

    static Formula atom(Atom a);
    static Formula not_(Formula f);
    static Formula and_(Formula l, Formula r);
    static Formula or_(Formula l, Formula r);
    static Formula implies(Formula l, Formula r);
    static Formula iff(Formula l, Formula r);
    static Formula exists(VarId v, Formula body);
    // E^{(t,p)} ys : body  -- finitely many witness tuples, count ==_p value of t.
    static Formula mod_count(Term residue, Int p, std::vector<VarId> vars, Formula body);
    // E^{>=c} ys : body (c >= 1; witness set may be infinite).
    static Formula at_least(Int c, std::vector<VarId> vars, Formula body);
    // E^{=c} ys : body (c >= 1; finite witness set of exactly c tuples).
    static Formula exactly(Int c, std::vector<VarId> vars, Formula body);

    FKind kind() const;
    const Atom& atom_ref() const;
    const Formula& child() const; // Not
    const Formula& left() const;  // binary
    const Formula& right() const;
    VarId var() const;                      // Exists
    const std::vector<VarId>& vars() const; // tuple quantifiers
    const Term& residue() const;            // ModCount
    const Int& modulus() const;             // ModCount
    const Int& count() const;               // AtLeast / Exactly
    const Formula& body() const;            // quantifier body

    bool valid() const { return p_ != nullptr; }
    const FNode* raw() const { return p_.get(); }

private:
    explicit Formula(std::shared_ptr<const FNode> p) : p_(std::move(p)) {}
    std::shared_ptr<const FNode> p_;
};

struct FNode {
    FKind kind;
    Atom atom{AtomKind::Less, Term(), Term(), Int(0)};
    Formula a; // Not child, binary left, quantifier body
    Formula b; // binary right
    VarId var = -1;
    std::vector<VarId> vars;
    Term residue;
    Int modulus = 0;
    Int count = 0;
};

namespace detail {
inline void check_tuple(const std::vector<VarId>& vars) {
    if (vars.empty()) throw ValidationError("counting quantifier needs at least one variable");
    std::set<VarId> seen(vars.begin(), vars.end());
    if (seen.size() != vars.size())
        throw ValidationError("duplicate variable in quantifier tuple");
}
inline void check_body(const Formula& f) {
    if (!f.valid()) throw ValidationError("null subformula");
}
} // namespace detail

inline Formula Formula::atom(Atom a) {
    auto n = std::make_shared<FNode>();
    n->kind = FKind::Atom;
    n->atom = std::move(a);
    return Formula(std::move(n));
}

inline Formula Formula::not_(Formula f) {
    detail::check_body(f);
    auto n = std::make_shared<FNode>();
    n->kind = FKind::Not;
    n->a = std::move(f);
    return Formula(std::move(n));
}

inline Formula Formula::and_(Formula l, Formula r) {
    detail::check_body(l);
    detail::check_body(r);
    auto n = std::make_shared<FNode>();
    n->kind = FKind::And;
    n->a = std::move(l);
    n->b = std::move(r);
    return Formula(std::move(n));
}

inline Formula Formula::or_(Formula l, Formula r) {
    detail::check_body(l);
    detail::check_body(r);
    auto n = std::make_shared<FNode>();
    n->kind = FKind::Or;
    n->a = std::move(l);
    n->b = std::move(r);
    return Formula(std::move(n));
}

inline Formula Formula::implies(Formula l, Formula r) {
    detail::check_body(l);
    detail::check_body(r);
    auto n = std::make_shared<FNode>();
    n->kind = FKind::Implies;
    n->a = std::move(l);
    n->b = std::move(r);
    return Formula(std::move(n));
}

inline Formula Formula::iff(Formula l, Formula r) {
    detail::check_body(l);
    detail::check_body(r);
    auto n = std::make_shared<FNode>();
    n->kind = FKind::Iff;
    n->a = std::move(l);
    n->b = std::move(r);
    return Formula(std::move(n));
}

inline Formula Formula::exists(VarId v, Formula body) {
    detail::check_body(body);
    auto n = std::make_shared<FNode>();
    n->kind = FKind::Exists;
    n->var = v;
    n->a = std::move(body);
    return Formula(std::move(n));
}

inline Formula Formula::mod_count(Term residue, Int p, std::vector<VarId> vars, Formula body) {
    detail::check_body(body);
    detail::check_tuple(vars);
    if (p < 2) throw ValidationError("modulo-counting modulus must be >= 2");
    auto n = std::make_shared<FNode>();
    n->kind = FKind::ModCount;
    n->residue = std::move(residue);
    n->modulus = std::move(p);
    n->vars = std::move(vars);
    n->a = std::move(body);
    return Formula(std::move(n));
}

inline Formula Formula::at_least(Int c, std::vector<VarId> vars, Formula body) {
    detail::check_body(body);
    detail::check_tuple(vars);
    if (c < 1) throw ValidationError("threshold must be >= 1");
    auto n = std::make_shared<FNode>();
    n->kind = FKind::AtLeast;
    n->count = std::move(c);
    n->vars = std::move(vars);
    n->a = std::move(body);
    return Formula(std::move(n));
}

inline Formula Formula::exactly(Int c, std::vector<VarId> vars, Formula body) {
    detail::check_body(body);
    detail::check_tuple(vars);
    if (c < 1) throw ValidationError("exact count must be >= 1");
    auto n = std::make_shared<FNode>();
    n->kind = FKind::Exactly;
    n->count = std::move(c);
    n->vars = std::move(vars);
    n->a = std::move(body);
    return Formula(std::move(n));
}

inline FKind Formula::kind() const { return p_->kind; }
inline const Atom& Formula::atom_ref() const { return p_->atom; }
inline const Formula& Formula::child() const { return p_->a; }
inline const Formula& Formula::left() const { return p_->a; }
inline const Formula& Formula::right() const { return p_->b; }
inline VarId Formula::var() const { return p_->var; }
inline const std::vector<VarId>& Formula::vars() const { return p_->vars; }
inline const Term& Formula::residue() const { return p_->residue; }
inline const Int& Formula::modulus() const { return p_->modulus; }
inline const Int& Formula::count() const { return p_->count; }
inline const Formula& Formula::body() const { return p_->a; }

// ---------------------------------------------------------------------------
// Convenience constructors

// The canonical false/true constants: the empty disjunction is 0<0 and the
// empty conjunction is its negation.
inline Formula f_false() { return Formula::atom(Atom::less(Term(), Term())); }
inline Formula f_true() { return Formula::not_(f_false()); }

inline Formula f_less(Term a, Term b) { return Formula::atom(Atom::less(std::move(a), std::move(b))); }
inline Formula f_mod_eq(Term a, Int k, Term b) {
    return Formula::atom(Atom::mod_eq(std::move(a), std::move(k), std::move(b)));
}
// s = t expands to !(s < t || t < s).
inline Formula f_eq(const Term& a, const Term& b) {
    return Formula::not_(Formula::or_(f_less(a, b), f_less(b, a)));
}
// s <= t expands to !(t < s).
inline Formula f_leq(const Term& a, const Term& b) { return Formula::not_(f_less(b, a)); }

inline Formula exists_chain(const std::vector<VarId>& vars, Formula body) {
    Formula f = std::move(body);
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) f = Formula::exists(*it, f);
    return f;
}

// forall x : f is the abbreviation !(E x : !f).
inline Formula forall(VarId v, Formula body) {
    return Formula::not_(Formula::exists(v, Formula::not_(std::move(body))));
}

inline Formula forall_chain(const std::vector<VarId>& vars, Formula body) {
    return Formula::not_(exists_chain(vars, Formula::not_(std::move(body))));
}

namespace detail {
inline Formula fold_balanced(const std::vector<Formula>& fs, std::size_t lo, std::size_t hi,
                             FKind op) {
    if (hi - lo == 1) return fs[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    Formula l = fold_balanced(fs, lo, mid, op);
    Formula r = fold_balanced(fs, mid, hi, op);
    return op == FKind::And ? Formula::and_(std::move(l), std::move(r))
                            : Formula::or_(std::move(l), std::move(r));
}
} // namespace detail

// Balanced folds keep tree depth logarithmic in the disjunct count, which the
// elimination passes rely on to keep recursion depth sane on large outputs.
inline Formula disj(const std::vector<Formula>& fs) {
    if (fs.empty()) return f_false();
    return detail::fold_balanced(fs, 0, fs.size(), FKind::Or);
}

inline Formula conj(const std::vector<Formula>& fs) {
    if (fs.empty()) return f_true();
    return detail::fold_balanced(fs, 0, fs.size(), FKind::And);
}

// ---------------------------------------------------------------------------
// Traversals (all DAG-aware: shared subtrees are visited once)

namespace detail {
template <typename Fn>
void walk_nodes(const Formula& f, std::unordered_set<const FNode*>& seen, Fn&& fn) {
    if (!seen.insert(f.raw()).second) return;
    fn(f);
    switch (f.kind()) {
    case FKind::Atom:
        break;
    case FKind::Not:
        walk_nodes(f.child(), seen, fn);
        break;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
        walk_nodes(f.left(), seen, fn);
        walk_nodes(f.right(), seen, fn);
        break;
    case FKind::Exists:
    case FKind::ModCount:
    case FKind::AtLeast:
    case FKind::Exactly:
        walk_nodes(f.body(), seen, fn);
        break;
    }
}
} // namespace detail

template <typename Fn>
void walk_nodes(const Formula& f, Fn&& fn) {
    std::unordered_set<const FNode*> seen;
    detail::walk_nodes(f, seen, fn);
}

// Every variable id occurring anywhere (free, bound, or in a residue term).
inline std::set<VarId> collect_vars(const Formula& f) {
    std::set<VarId> out;
    walk_nodes(f, [&](const Formula& g) {
        switch (g.kind()) {
        case FKind::Atom:
            for (const auto& [v, a] : g.atom_ref().lhs.coeffs()) { (void)a; out.insert(v); }
            for (const auto& [v, a] : g.atom_ref().rhs.coeffs()) { (void)a; out.insert(v); }
            break;
        case FKind::Exists:
            out.insert(g.var());
            break;
        case FKind::ModCount:
            for (const auto& [v, a] : g.residue().coeffs()) { (void)a; out.insert(v); }
            for (VarId v : g.vars()) out.insert(v);
            break;
        case FKind::AtLeast:
        case FKind::Exactly:
            for (VarId v : g.vars()) out.insert(v);
            break;
        default:
            break;
        }
    });
    return out;
}

namespace detail {
inline const std::set<VarId>& free_vars_memo(const Formula& f,
                                             std::unordered_map<const FNode*, std::set<VarId>>& memo) {
    auto it = memo.find(f.raw());
    if (it != memo.end()) return it->second;
    std::set<VarId> out;
    switch (f.kind()) {
    case FKind::Atom:
        for (const auto& [v, a] : f.atom_ref().lhs.coeffs()) { (void)a; out.insert(v); }
        for (const auto& [v, a] : f.atom_ref().rhs.coeffs()) { (void)a; out.insert(v); }
        break;
    case FKind::Not:
        out = free_vars_memo(f.child(), memo);
        break;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff: {
        out = free_vars_memo(f.left(), memo);
        const auto& r = free_vars_memo(f.right(), memo);
        out.insert(r.begin(), r.end());
        break;
    }
    case FKind::Exists:
        out = free_vars_memo(f.body(), memo);
        out.erase(f.var());
        break;
    case FKind::ModCount: {
        out = free_vars_memo(f.body(), memo);
        for (VarId v : f.vars()) out.erase(v);
        // The residue term is evaluated outside the binder.
        for (const auto& [v, a] : f.residue().coeffs()) { (void)a; out.insert(v); }
        break;
    }
    case FKind::AtLeast:
    case FKind::Exactly:
        out = free_vars_memo(f.body(), memo);
        for (VarId v : f.vars()) out.erase(v);
        break;
    }
    return memo.emplace(f.raw(), std::move(out)).first->second;
}
} // namespace detail

inline std::set<VarId> free_vars(const Formula& f) {
    std::unordered_map<const FNode*, std::set<VarId>> memo;
    return detail::free_vars_memo(f, memo);
}

inline bool is_closed(const Formula& f) { return free_vars(f).empty(); }

inline std::size_t count_dag_nodes(const Formula& f) {
    std::size_t n = 0;
    walk_nodes(f, [&](const Formula&) { ++n; });
    return n;
}

inline bool is_quantifier_free(const Formula& f) {
    bool qf = true;
    walk_nodes(f, [&](const Formula& g) {
        switch (g.kind()) {
        case FKind::Exists:
        case FKind::ModCount:
        case FKind::AtLeast:
        case FKind::Exactly:
            qf = false;
            break;
        default:
            break;
        }
    });
    return qf;
}

inline bool has_counting_nodes(const Formula& f) {
    bool found = false;
    walk_nodes(f, [&](const Formula& g) {
        if (g.kind() == FKind::AtLeast || g.kind() == FKind::Exactly) found = true;
    });
    return found;
}

inline bool has_mod_count_nodes(const Formula& f) {
    bool found = false;
    walk_nodes(f, [&](const Formula& g) {
        if (g.kind() == FKind::ModCount) found = true;
    });
    return found;
}

// ---------------------------------------------------------------------------
// Structural equality (pair-memoized so shared subtrees stay cheap)

namespace detail {
struct PtrPairHash {
    std::size_t operator()(const std::pair<const FNode*, const FNode*>& p) const {
        return std::hash<const void*>()(p.first) * 1000003u ^ std::hash<const void*>()(p.second);
    }
};

inline bool equal_rec(const Formula& x, const Formula& y,
                      std::unordered_set<std::pair<const FNode*, const FNode*>, PtrPairHash>& ok) {
    if (x.raw() == y.raw()) return true;
    if (x.kind() != y.kind()) return false;
    if (ok.count({x.raw(), y.raw()})) return true;
    bool eq = false;
    switch (x.kind()) {
    case FKind::Atom:
        eq = x.atom_ref() == y.atom_ref();
        break;
    case FKind::Not:
        eq = equal_rec(x.child(), y.child(), ok);
        break;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
        eq = equal_rec(x.left(), y.left(), ok) && equal_rec(x.right(), y.right(), ok);
        break;
    case FKind::Exists:
        eq = x.var() == y.var() && equal_rec(x.body(), y.body(), ok);
        break;
    case FKind::ModCount:
        eq = x.vars() == y.vars() && x.modulus() == y.modulus() &&
             x.residue() == y.residue() && equal_rec(x.body(), y.body(), ok);
        break;
    case FKind::AtLeast:
    case FKind::Exactly:
        eq = x.vars() == y.vars() && x.count() == y.count() && equal_rec(x.body(), y.body(), ok);
        break;
    }
    if (eq) ok.insert({x.raw(), y.raw()});
    return eq;
}
} // namespace detail

inline bool structurally_equal(const Formula& x, const Formula& y) {
    std::unordered_set<std::pair<const FNode*, const FNode*>, detail::PtrPairHash> ok;
    return detail::equal_rec(x, y, ok);
}

inline FreshPool fresh_pool_for(const Formula& f) { return FreshPool(collect_vars(f)); }

} // namespace prescount

#endif
