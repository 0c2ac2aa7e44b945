#ifndef PRESCOUNT_SEPARATE_HPP
#define PRESCOUNT_SEPARATE_HPP

#include "prescount/formula.hpp"

namespace prescount {

// Rewrites an atom into x-separated shape: a*x < t, t < a*x, or a*x ==_k t
// with a >= 0 and t free of x. When x does not occur the result has a = 0 and
// reads 0 < t, t < 0, or 0 ==_k t.
inline Atom x_separate(const Atom& atom, VarId x) {
    Term diff = atom.lhs - atom.rhs; // s1 - s2
    Int a = diff.coeff(x);
    Term rest = diff.without(x);
    if (atom.kind == AtomKind::Less) {
        // s1 < s2  <=>  a*x + rest < 0
        if (a > 0) return Atom::less(Term::variable(x, a), -rest);
        if (a < 0) return Atom::less(rest, Term::variable(x, -a));
        return Atom::less(Term(), -rest);
    }
    // s1 ==_k s2  <=>  a*x ==_k -rest
    if (a >= 0) return Atom::mod_eq(Term::variable(x, a), atom.modulus, -rest);
    return Atom::mod_eq(Term::variable(x, -a), atom.modulus, rest);
}

// Rewrites an atom into constant-separated shape: c < s, s < c, or s ==_k c
// with s free of constants.
inline Atom constant_separate(const Atom& atom) {
    Term diff = atom.lhs - atom.rhs;
    Int c = diff.constant_part();
    Term vars_only = diff - Term::constant(c);
    if (atom.kind == AtomKind::Less) {
        // s1 < s2  <=>  vars_only + c < 0  <=>  c < -vars_only
        return Atom::less(Term::constant(c), -vars_only);
    }
    return Atom::mod_eq(vars_only, atom.modulus, Term::constant(-c));
}

} // namespace prescount

#endif
