#ifndef PRESCOUNT_JSON_IO_HPP
#define PRESCOUNT_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "prescount/formula.hpp"

namespace prescount {

// JSON AST schema: one object per node with a "kind" discriminator.
// Integers are serialized as decimal strings so arbitrary precision survives
// a round trip. Terms are {"coeffs": [[var, coeff], ...], "const": c} with
// entries in canonical (index) order.

using Json = nlohmann::ordered_json;

inline Json term_to_json(const Term& t) {
    Json coeffs = Json::array();
    for (const auto& [v, a] : t.coeffs())
        coeffs.push_back(Json::array({VarTable::name(v), a.str()}));
    return Json{{"coeffs", std::move(coeffs)}, {"const", t.constant_part().str()}};
}

namespace detail {

inline Int int_from_json(const Json& j, const char* what) {
    if (!j.is_string()) throw ValidationError(std::string("expected string-encoded integer for ") + what);
    const std::string& s = j.get_ref<const std::string&>();
    if (s.empty()) throw ValidationError(std::string("empty integer for ") + what);
    std::size_t k = s[0] == '-' ? 1 : 0;
    if (k == s.size()) throw ValidationError(std::string("bad integer for ") + what);
    for (; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            throw ValidationError(std::string("bad integer for ") + what);
    return Int(s);
}

} // namespace detail

inline Term term_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j.contains("const"))
        throw ValidationError("malformed term object");
    Term t = Term::constant(detail::int_from_json(j["const"], "term constant"));
    for (const auto& entry : j["coeffs"]) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string())
            throw ValidationError("malformed term coefficient entry");
        VarId v = VarTable::intern(entry[0].get<std::string>());
        t = t + Term::variable(v, detail::int_from_json(entry[1], "coefficient"));
    }
    return t;
}

inline Json formula_to_json(const Formula& f) {
    switch (f.kind()) {
    case FKind::Atom: {
        const Atom& a = f.atom_ref();
        if (a.kind == AtomKind::Less)
            return Json{{"kind", "less"}, {"lhs", term_to_json(a.lhs)}, {"rhs", term_to_json(a.rhs)}};
        return Json{{"kind", "modeq"},
                    {"lhs", term_to_json(a.lhs)},
                    {"modulus", a.modulus.str()},
                    {"rhs", term_to_json(a.rhs)}};
    }
    case FKind::Not:
        return Json{{"kind", "not"}, {"child", formula_to_json(f.child())}};
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff: {
        const char* k = f.kind() == FKind::And       ? "and"
                        : f.kind() == FKind::Or      ? "or"
                        : f.kind() == FKind::Implies ? "implies"
                                                     : "iff";
        return Json{{"kind", k}, {"lhs", formula_to_json(f.left())}, {"rhs", formula_to_json(f.right())}};
    }
    case FKind::Exists:
        return Json{{"kind", "exists"},
                    {"var", VarTable::name(f.var())},
                    {"body", formula_to_json(f.body())}};
    case FKind::ModCount: {
        Json vars = Json::array();
        for (VarId v : f.vars()) vars.push_back(VarTable::name(v));
        return Json{{"kind", "modcount"},
                    {"residue", term_to_json(f.residue())},
                    {"modulus", f.modulus().str()},
                    {"vars", std::move(vars)},
                    {"body", formula_to_json(f.body())}};
    }
    case FKind::AtLeast:
    case FKind::Exactly: {
        Json vars = Json::array();
        for (VarId v : f.vars()) vars.push_back(VarTable::name(v));
        return Json{{"kind", f.kind() == FKind::AtLeast ? "atleast" : "exactly"},
                    {"count", f.count().str()},
                    {"vars", std::move(vars)},
                    {"body", formula_to_json(f.body())}};
    }
    }
    throw InternalError("unreachable formula kind");
}

inline Formula formula_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ValidationError("malformed formula object");
    const std::string kind = j["kind"].get<std::string>();
    auto need = [&](const char* field) -> const Json& {
        if (!j.contains(field))
            throw ValidationError("formula node '" + kind + "' missing field '" + field + "'");
        return j[field];
    };
    auto vars_of = [&]() {
        std::vector<VarId> vars;
        for (const auto& v : need("vars")) vars.push_back(VarTable::intern(v.get<std::string>()));
        return vars;
    };
    if (kind == "less") return f_less(term_from_json(need("lhs")), term_from_json(need("rhs")));
    if (kind == "modeq")
        return f_mod_eq(term_from_json(need("lhs")), detail::int_from_json(need("modulus"), "modulus"),
                        term_from_json(need("rhs")));
    if (kind == "not") return Formula::not_(formula_from_json(need("child")));
    if (kind == "and") return Formula::and_(formula_from_json(need("lhs")), formula_from_json(need("rhs")));
    if (kind == "or") return Formula::or_(formula_from_json(need("lhs")), formula_from_json(need("rhs")));
    if (kind == "implies")
        return Formula::implies(formula_from_json(need("lhs")), formula_from_json(need("rhs")));
    if (kind == "iff") return Formula::iff(formula_from_json(need("lhs")), formula_from_json(need("rhs")));
    if (kind == "exists")
        return Formula::exists(VarTable::intern(need("var").get<std::string>()),
                               formula_from_json(need("body")));
    if (kind == "modcount")
        return Formula::mod_count(term_from_json(need("residue")),
                                  detail::int_from_json(need("modulus"), "modulus"), vars_of(),
                                  formula_from_json(need("body")));
    if (kind == "atleast")
        return Formula::at_least(detail::int_from_json(need("count"), "count"), vars_of(),
                                 formula_from_json(need("body")));
    if (kind == "exactly")
        return Formula::exactly(detail::int_from_json(need("count"), "count"), vars_of(),
                                formula_from_json(need("body")));
    throw ValidationError("unknown formula kind '" + kind + "'");
}

inline std::string formula_to_json_text(const Formula& f) { return formula_to_json(f).dump(2); }

inline Formula formula_from_json_text(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ValidationError("invalid JSON");
    return formula_from_json(j);
}

} // namespace prescount

#endif
