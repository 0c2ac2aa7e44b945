#ifndef PRESCOUNT_PARSER_HPP
#define PRESCOUNT_PARSER_HPP

#include <cctype>
#include <string>
#include <vector>

#include "prescount/formula.hpp"

namespace prescount {

// Surface syntax
//
//   formula    E v : f | E[t % p] (v,...) : f | E>=c (v,...) : f |
//              E=c (v,...) : f | iff
//   iff        implies ('<->' iff)?
//   implies    or ('->' implies)?
//   or         and ('||' and)*
//   and        unary ('&&' unary)*
//   unary      '!' unary | '(' formula ')' | atom
//   atom       term rel term        rel in < > = <= >=
//            | term '==' term '(' 'mod' int ')'
//   term       ['-'] part (('+'|'-') part)*
//   part       int ('*' var)? | var
//
// Quantifiers bind weaker than every connective, so they must be
// parenthesized when used as a connective operand. '#' starts a comment.
// Derived relations expand during parsing: > swaps, = becomes !(< or >),
// <= / >= become single negations.

namespace lex {

enum class Tok {
    Ident, Number, KwE, KwMod,
    LParen, RParen, LBracket, RBracket, Comma, Colon, Percent,
    Lt, Gt, EqEq, Eq, Le, Ge,
    AndAnd, OrOr, Arrow, IffArrow, Bang, Plus, Minus, Star,
    End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t col;
};

inline std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string text) {
        out.push_back({k, std::move(text), line, col});
    };
    auto advance = [&](std::size_t n) {
        for (std::size_t j = 0; j < n; ++j) {
            if (src[i + j] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            push(Tok::Number, src.substr(i, j - i));
            advance(j - i);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            std::string word = src.substr(i, j - i);
            if (word == "E")
                push(Tok::KwE, word);
            else if (word == "mod")
                push(Tok::KwMod, word);
            else
                push(Tok::Ident, word);
            advance(j - i);
            continue;
        }
        auto match = [&](const char* s) {
            std::size_t n = std::char_traits<char>::length(s);
            return src.compare(i, n, s) == 0;
        };
        if (match("<->")) { push(Tok::IffArrow, "<->"); advance(3); continue; }
        if (match("<=")) { push(Tok::Le, "<="); advance(2); continue; }
        if (match(">=")) { push(Tok::Ge, ">="); advance(2); continue; }
        if (match("==")) { push(Tok::EqEq, "=="); advance(2); continue; }
        if (match("&&")) { push(Tok::AndAnd, "&&"); advance(2); continue; }
        if (match("||")) { push(Tok::OrOr, "||"); advance(2); continue; }
        if (match("->")) { push(Tok::Arrow, "->"); advance(2); continue; }
        switch (c) {
        case '<': push(Tok::Lt, "<"); advance(1); continue;
        case '>': push(Tok::Gt, ">"); advance(1); continue;
        case '=': push(Tok::Eq, "="); advance(1); continue;
        case '(': push(Tok::LParen, "("); advance(1); continue;
        case ')': push(Tok::RParen, ")"); advance(1); continue;
        case '[': push(Tok::LBracket, "["); advance(1); continue;
        case ']': push(Tok::RBracket, "]"); advance(1); continue;
        case ',': push(Tok::Comma, ","); advance(1); continue;
        case ':': push(Tok::Colon, ":"); advance(1); continue;
        case '%': push(Tok::Percent, "%"); advance(1); continue;
        case '!': push(Tok::Bang, "!"); advance(1); continue;
        case '+': push(Tok::Plus, "+"); advance(1); continue;
        case '-': push(Tok::Minus, "-"); advance(1); continue;
        case '*': push(Tok::Star, "*"); advance(1); continue;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

} // namespace lex

namespace detail {

class Parser {
public:
    explicit Parser(const std::string& src) : toks_(lex::tokenize(src)) {}

    Formula parse() {
        Formula f = formula();
        expect(lex::Tok::End, "end of input");
        return f;
    }

    Term parse_term_only() {
        Term t = term();
        expect(lex::Tok::End, "end of input");
        return t;
    }

private:
    const lex::Token& cur() const { return toks_[pos_]; }
    const lex::Token& peek(std::size_t n = 1) const {
        return toks_[std::min(pos_ + n, toks_.size() - 1)];
    }
    void bump() { ++pos_; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, cur().line, cur().col);
    }

    void expect(lex::Tok k, const std::string& what) {
        if (cur().kind != k) fail("expected " + what);
        bump();
    }

    bool eat(lex::Tok k) {
        if (cur().kind != k) return false;
        bump();
        return true;
    }

    Int number() {
        if (cur().kind != lex::Tok::Number) fail("expected integer");
        Int v(cur().text);
        bump();
        return v;
    }

    Int signed_number() {
        bool neg = eat(lex::Tok::Minus);
        Int v = number();
        return neg ? Int(-v) : v;
    }

    VarId ident() {
        if (cur().kind != lex::Tok::Ident) fail("expected variable name");
        VarId v = VarTable::intern(cur().text);
        bump();
        return v;
    }

    std::vector<VarId> var_tuple() {
        expect(lex::Tok::LParen, "'('");
        std::vector<VarId> vars;
        vars.push_back(ident());
        while (eat(lex::Tok::Comma)) vars.push_back(ident());
        expect(lex::Tok::RParen, "')'");
        return vars;
    }

    Formula formula() {
        if (cur().kind == lex::Tok::KwE) return quantified();
        return iff();
    }

    Formula quantified() {
        expect(lex::Tok::KwE, "'E'");
        switch (cur().kind) {
        case lex::Tok::Ident: {
            VarId v = ident();
            expect(lex::Tok::Colon, "':'");
            return Formula::exists(v, formula());
        }
        case lex::Tok::LBracket: {
            bump();
            Term t = term();
            expect(lex::Tok::Percent, "'%'");
            Int p = signed_number();
            if (p < 2) fail("counting modulus must be >= 2");
            expect(lex::Tok::RBracket, "']'");
            std::vector<VarId> vars = var_tuple();
            expect(lex::Tok::Colon, "':'");
            return Formula::mod_count(std::move(t), std::move(p), std::move(vars), formula());
        }
        case lex::Tok::Ge: {
            bump();
            Int c = signed_number();
            if (c < 1) fail("threshold must be >= 1");
            std::vector<VarId> vars = var_tuple();
            expect(lex::Tok::Colon, "':'");
            return Formula::at_least(std::move(c), std::move(vars), formula());
        }
        case lex::Tok::Eq: {
            bump();
            Int c = signed_number();
            if (c < 1) fail("exact count must be >= 1");
            std::vector<VarId> vars = var_tuple();
            expect(lex::Tok::Colon, "':'");
            return Formula::exactly(std::move(c), std::move(vars), formula());
        }
        default:
            fail("expected variable, '[', '>=', or '=' after 'E'");
        }
    }

    Formula iff() {
        Formula l = implies();
        if (eat(lex::Tok::IffArrow)) return Formula::iff(std::move(l), iff());
        return l;
    }

    Formula implies() {
        Formula l = or_chain();
        if (eat(lex::Tok::Arrow)) return Formula::implies(std::move(l), implies());
        return l;
    }

    Formula or_chain() {
        Formula l = and_chain();
        while (eat(lex::Tok::OrOr)) l = Formula::or_(std::move(l), and_chain());
        return l;
    }

    Formula and_chain() {
        Formula l = unary();
        while (eat(lex::Tok::AndAnd)) l = Formula::and_(std::move(l), unary());
        return l;
    }

    Formula unary() {
        if (eat(lex::Tok::Bang)) return Formula::not_(unary());
        if (cur().kind == lex::Tok::LParen) {
            bump();
            Formula f = formula();
            expect(lex::Tok::RParen, "')'");
            return f;
        }
        return atom();
    }

    Formula atom() {
        Term l = term();
        switch (cur().kind) {
        case lex::Tok::Lt:
            bump();
            return f_less(std::move(l), term());
        case lex::Tok::Gt: {
            bump();
            Term r = term();
            return f_less(std::move(r), std::move(l));
        }
        case lex::Tok::Le: {
            bump();
            Term r = term();
            return f_leq(l, r);
        }
        case lex::Tok::Ge: {
            bump();
            Term r = term();
            return f_leq(r, l);
        }
        case lex::Tok::Eq: {
            bump();
            Term r = term();
            return f_eq(l, r);
        }
        case lex::Tok::EqEq: {
            bump();
            Term r = term();
            expect(lex::Tok::LParen, "'(mod k)'");
            expect(lex::Tok::KwMod, "'mod'");
            Int k = signed_number();
            if (k < 1) fail("congruence modulus must be >= 1");
            expect(lex::Tok::RParen, "')'");
            return f_mod_eq(std::move(l), std::move(k), std::move(r));
        }
        default:
            fail("expected relation");
        }
    }

    Term term() {
        Term acc = part(eat(lex::Tok::Minus));
        for (;;) {
            if (eat(lex::Tok::Plus))
                acc = acc + part(false);
            else if (eat(lex::Tok::Minus))
                acc = acc + part(true);
            else
                break;
        }
        return acc;
    }

    Term part(bool negate) {
        if (cur().kind == lex::Tok::Number) {
            Int v = number();
            if (negate) v = -v;
            if (eat(lex::Tok::Star)) {
                if (cur().kind != lex::Tok::Ident) fail("'*' must join an integer and a variable");
                VarId var = ident();
                return Term::variable(var, v);
            }
            return Term::constant(v);
        }
        if (cur().kind == lex::Tok::Ident) {
            VarId var = ident();
            return Term::variable(var, negate ? Int(-1) : Int(1));
        }
        fail("expected integer or variable");
    }

    std::vector<lex::Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Formula parse_formula(const std::string& src) { return detail::Parser(src).parse(); }
inline Term parse_term(const std::string& src) { return detail::Parser(src).parse_term_only(); }

// ---------------------------------------------------------------------------
// Canonical printer: explicit coefficients ("1*x"), constants folded into the
// term tail, minimal parentheses per precedence, quantifier bodies extend
// maximally right. parse(print(f)) == f structurally.

inline std::string print_term(const Term& t) {
    std::string out;
    bool first = true;
    for (const auto& [v, a] : t.coeffs()) {
        if (first) {
            out += (a < 0 ? "-" : "");
        } else {
            out += (a < 0 ? " - " : " + ");
        }
        out += abs_int(a).str() + "*" + VarTable::name(v);
        first = false;
    }
    const Int& c = t.constant_part();
    if (first) {
        out = c.str();
    } else if (c != 0) {
        out += (c < 0 ? " - " : " + ") + abs_int(c).str();
    }
    return out;
}

inline std::string print_atom(const Atom& a) {
    if (a.kind == AtomKind::Less) return print_term(a.lhs) + " < " + print_term(a.rhs);
    return print_term(a.lhs) + " == " + print_term(a.rhs) + " (mod " + a.modulus.str() + ")";
}

namespace detail {

inline void print_rec(const Formula& f, int min_prec, std::string& out) {
    auto wrap = [&](int prec, auto&& emit) {
        bool parens = prec < min_prec;
        if (parens) out += "(";
        emit();
        if (parens) out += ")";
    };
    switch (f.kind()) {
    case FKind::Atom:
        out += print_atom(f.atom_ref());
        break;
    case FKind::Not:
        out += "!(";
        print_rec(f.child(), 0, out);
        out += ")";
        break;
    case FKind::And:
        wrap(4, [&] {
            print_rec(f.left(), 4, out);
            out += " && ";
            print_rec(f.right(), 5, out);
        });
        break;
    case FKind::Or:
        wrap(3, [&] {
            print_rec(f.left(), 3, out);
            out += " || ";
            print_rec(f.right(), 4, out);
        });
        break;
    case FKind::Implies:
        wrap(2, [&] {
            print_rec(f.left(), 3, out);
            out += " -> ";
            print_rec(f.right(), 2, out);
        });
        break;
    case FKind::Iff:
        wrap(1, [&] {
            print_rec(f.left(), 2, out);
            out += " <-> ";
            print_rec(f.right(), 1, out);
        });
        break;
    case FKind::Exists:
        wrap(0, [&] {
            out += "E " + VarTable::name(f.var()) + " : ";
            print_rec(f.body(), 0, out);
        });
        break;
    case FKind::ModCount:
    case FKind::AtLeast:
    case FKind::Exactly:
        wrap(0, [&] {
            if (f.kind() == FKind::ModCount) {
                out += "E[" + print_term(f.residue()) + " % " + f.modulus().str() + "]";
            } else if (f.kind() == FKind::AtLeast) {
                out += "E>=" + f.count().str();
            } else {
                out += "E=" + f.count().str();
            }
            out += " (";
            bool first = true;
            for (VarId v : f.vars()) {
                if (!first) out += ",";
                out += VarTable::name(v);
                first = false;
            }
            out += ") : ";
            print_rec(f.body(), 0, out);
        });
        break;
    }
}

} // namespace detail

inline std::string print_formula(const Formula& f) {
    std::string out;
    detail::print_rec(f, 0, out);
    return out;
}

} // namespace prescount

#endif
