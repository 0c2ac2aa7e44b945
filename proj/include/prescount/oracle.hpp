#ifndef PRESCOUNT_ORACLE_HPP
#define PRESCOUNT_ORACLE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prescount/bigint.hpp"
#include "prescount/formula.hpp"

namespace prescount {

using Assignment = std::map<VarId, Int>;

enum class Verdict { tt, ff, unstable };

inline const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::tt: return "tt";
    case Verdict::ff: return "ff";
    default: return "unstable";
    }
}

struct OracleVerdict {
    Verdict verdict;
    std::optional<Int> witness_count; // populated for counting-quantifier roots
};

struct OracleParams {
    Int bound = 16;                        // small window [-bound, bound]^l
    std::uint64_t max_tuples = 10000000;   // enumeration cap per evaluation
};

namespace detail {

// Binding stack with shadowing: innermost binding wins.
class Env {
public:
    explicit Env(const Assignment& base) {
        for (const auto& [v, n] : base) stack_.emplace_back(v, n);
    }

    const Int* lookup(VarId v) const {
        for (auto it = stack_.rbegin(); it != stack_.rend(); ++it)
            if (it->first == v) return &it->second;
        return nullptr;
    }

    void push(VarId v, Int n) { stack_.emplace_back(v, std::move(n)); }
    void pop(std::size_t n = 1) { stack_.resize(stack_.size() - n); }

private:
    std::vector<std::pair<VarId, Int>> stack_;
};

inline Int eval_term_env(const Term& t, const Env& env) {
    return t.eval([&](VarId v) -> Int {
        const Int* n = env.lookup(v);
        if (!n) throw ValidationError("unbound variable " + VarTable::name(v));
        return *n;
    });
}

inline bool eval_atom_env(const Atom& a, const Env& env) {
    Int l = eval_term_env(a.lhs, env);
    Int r = eval_term_env(a.rhs, env);
    if (a.kind == AtomKind::Less) return l < r;
    return divides(a.modulus, l - r);
}

inline bool eval_qf_env(const Formula& f, Env& env) {
    switch (f.kind()) {
    case FKind::Atom:
        return eval_atom_env(f.atom_ref(), env);
    case FKind::Not:
        return !eval_qf_env(f.child(), env);
    case FKind::And:
        return eval_qf_env(f.left(), env) && eval_qf_env(f.right(), env);
    case FKind::Or:
        return eval_qf_env(f.left(), env) || eval_qf_env(f.right(), env);
    case FKind::Implies:
        return !eval_qf_env(f.left(), env) || eval_qf_env(f.right(), env);
    case FKind::Iff:
        return eval_qf_env(f.left(), env) == eval_qf_env(f.right(), env);
    default:
        throw ValidationError("eval_qf: formula is not quantifier-free");
    }
}

// Enumeration order for a single coordinate: 0, 1, -1, 2, -2, ..., b, -b.
inline Int nth_value(std::uint64_t i) {
    if (i == 0) return 0;
    std::uint64_t half = (i + 1) / 2;
    return i % 2 == 1 ? Int(half) : Int(-Int(half));
}

struct Budget {
    std::uint64_t used = 0;
    std::uint64_t cap;
    void charge() {
        if (++used > cap)
            throw ResourceError("oracle_tuples",
                                "bounded evaluation exceeded " + std::to_string(cap) +
                                    " enumerated tuples");
    }
};

class BoundedEval {
public:
    BoundedEval(const OracleParams& params, Budget& budget) : params_(params), budget_(budget) {}

    Verdict eval(const Formula& f, Env& env) {
        switch (f.kind()) {
        case FKind::Atom:
            return eval_atom_env(f.atom_ref(), env) ? Verdict::tt : Verdict::ff;
        case FKind::Not: {
            Verdict v = eval(f.child(), env);
            if (v == Verdict::unstable) return v;
            return v == Verdict::tt ? Verdict::ff : Verdict::tt;
        }
        case FKind::And: {
            Verdict l = eval(f.left(), env);
            if (l == Verdict::ff) return Verdict::ff;
            Verdict r = eval(f.right(), env);
            if (r == Verdict::ff) return Verdict::ff;
            if (l == Verdict::tt && r == Verdict::tt) return Verdict::tt;
            return Verdict::unstable;
        }
        case FKind::Or: {
            Verdict l = eval(f.left(), env);
            if (l == Verdict::tt) return Verdict::tt;
            Verdict r = eval(f.right(), env);
            if (r == Verdict::tt) return Verdict::tt;
            if (l == Verdict::ff && r == Verdict::ff) return Verdict::ff;
            return Verdict::unstable;
        }
        case FKind::Implies: {
            Verdict l = eval(f.left(), env);
            if (l == Verdict::ff) return Verdict::tt;
            Verdict r = eval(f.right(), env);
            if (r == Verdict::tt) return Verdict::tt;
            if (l == Verdict::tt && r == Verdict::ff) return Verdict::ff;
            return Verdict::unstable;
        }
        case FKind::Iff: {
            Verdict l = eval(f.left(), env);
            Verdict r = eval(f.right(), env);
            if (l == Verdict::unstable || r == Verdict::unstable) return Verdict::unstable;
            return l == r ? Verdict::tt : Verdict::ff;
        }
        case FKind::Exists: {
            // A witness anywhere in the larger window decides tt.
            std::uint64_t n = window_values(2 * params_.bound);
            bool saw_unstable = false;
            for (std::uint64_t i = 0; i < n; ++i) {
                budget_.charge();
                env.push(f.var(), nth_value(i));
                Verdict v = eval(f.body(), env);
                env.pop();
                if (v == Verdict::tt) return Verdict::tt;
                if (v == Verdict::unstable) saw_unstable = true;
            }
            return saw_unstable ? Verdict::unstable : Verdict::ff;
        }
        case FKind::AtLeast:
        case FKind::Exactly:
        case FKind::ModCount:
            return counting(f, env).verdict;
        }
        throw InternalError("unreachable formula kind");
    }

    // Counting nodes: count witnesses over [-b,b]^l, re-count over
    // [-2b,2b]^l; differing counts (or any unstable sub-verdict) make the
    // node unstable, except that E^{>=c} answers tt as soon as either window
    // holds at least c witnesses.
    OracleVerdict counting(const Formula& f, Env& env) {
        auto [c1, u1] = count_window(f, env, params_.bound);
        auto [c2, u2] = count_window(f, env, 2 * params_.bound);
        bool unstable_subs = u1 || u2;
        std::optional<Int> count;
        if (!unstable_subs) count = c2;
        if (f.kind() == FKind::AtLeast) {
            if (c1 >= f.count() || c2 >= f.count()) return {Verdict::tt, count};
            if (unstable_subs || c1 != c2) return {Verdict::unstable, count};
            return {Verdict::ff, count};
        }
        if (unstable_subs || c1 != c2) return {Verdict::unstable, count};
        if (f.kind() == FKind::Exactly) {
            return {c2 == f.count() ? Verdict::tt : Verdict::ff, count};
        }
        Int want = floor_mod(eval_term_env(f.residue(), env), f.modulus());
        return {floor_mod(c2, f.modulus()) == want ? Verdict::tt : Verdict::ff, count};
    }

private:
    std::uint64_t window_values(const Int& b) const {
        return static_cast<std::uint64_t>(2 * b + 1);
    }

    std::pair<Int, bool> count_window(const Formula& f, Env& env, const Int& b) {
        const std::vector<VarId>& vars = f.vars();
        std::uint64_t per = window_values(b);
        std::vector<std::uint64_t> idx(vars.size(), 0);
        for (VarId v : vars) env.push(v, 0);
        Int count = 0;
        bool saw_unstable = false;
        for (;;) {
            budget_.charge();
            // materialize current tuple (idx -> values) into the env slots
            env.pop(vars.size());
            for (std::size_t k = 0; k < vars.size(); ++k) env.push(vars[k], nth_value(idx[k]));
            Verdict v = eval(f.body(), env);
            if (v == Verdict::tt) ++count;
            if (v == Verdict::unstable) saw_unstable = true;
            // odometer, last coordinate fastest
            std::size_t k = vars.size();
            for (;;) {
                if (k == 0) goto done;
                --k;
                if (++idx[k] < per) break;
                idx[k] = 0;
            }
        }
    done:
        env.pop(vars.size());
        return {count, saw_unstable};
    }

    const OracleParams& params_;
    Budget& budget_;
};

} // namespace detail

inline Int eval_term(const Term& t, const Assignment& a) {
    detail::Env env(a);
    return detail::eval_term_env(t, env);
}

inline bool eval_qf(const Formula& f, const Assignment& a = {}) {
    detail::Env env(a);
    return detail::eval_qf_env(f, env);
}

inline OracleVerdict eval_bounded(const Formula& f, const Assignment& a,
                                  const OracleParams& params = {}) {
    if (params.bound < 1) throw ValidationError("oracle bound must be >= 1");
    detail::Budget budget{0, params.max_tuples};
    detail::Env env(a);
    detail::BoundedEval ev(params, budget);
    switch (f.kind()) {
    case FKind::AtLeast:
    case FKind::Exactly:
    case FKind::ModCount:
        return ev.counting(f, env);
    default:
        return {ev.eval(f, env), std::nullopt};
    }
}

} // namespace prescount

#endif
