#ifndef PRESCOUNT_TERM_HPP
#define PRESCOUNT_TERM_HPP

#include <cstddef>
#include <map>
#include <utility>

#include "prescount/bigint.hpp"
#include "prescount/var.hpp"

namespace prescount {

// A linear term in normal form: an ordered (by variable index) map of nonzero
// coefficients plus a constant. All arithmetic maintains the normal form, so
// construction doubles as normalization.
class Term {
public:
    Term() : constant_(0) {}

    static Term variable(VarId v, Int coeff = Int(1)) {
        Term t;
        if (coeff != 0) t.coeffs_[v] = std::move(coeff);
        return t;
    }

    static Term constant(Int c) {
        Term t;
        t.constant_ = std::move(c);
        return t;
    }

    const std::map<VarId, Int>& coeffs() const { return coeffs_; }
    const Int& constant_part() const { return constant_; }

    Int coeff(VarId v) const {
        auto it = coeffs_.find(v);
        return it == coeffs_.end() ? Int(0) : it->second;
    }

    bool contains(VarId v) const { return coeffs_.count(v) != 0; }
    bool is_constant() const { return coeffs_.empty(); }
    bool is_zero() const { return coeffs_.empty() && constant_ == 0; }

    Term operator+(const Term& o) const {
        Term t(*this);
        for (const auto& [v, a] : o.coeffs_) {
            Int& slot = t.coeffs_[v];
            slot += a;
            if (slot == 0) t.coeffs_.erase(v);
        }
        t.constant_ += o.constant_;
        return t;
    }

    Term operator-() const { return scaled(Int(-1)); }
    Term operator-(const Term& o) const { return *this + (-o); }

    Term operator+(const Int& c) const {
        Term t(*this);
        t.constant_ += c;
        return t;
    }

    Term scaled(const Int& k) const {
        Term t;
        if (k == 0) return t;
        for (const auto& [v, a] : coeffs_) t.coeffs_[v] = a * k;
        t.constant_ = constant_ * k;
        return t;
    }

    // Drop v's coefficient; used when separating an atom into a*x vs rest.
    Term without(VarId v) const {
        Term t(*this);
        t.coeffs_.erase(v);
        return t;
    }

    template <typename Lookup>
    Int eval(Lookup&& lookup) const {
        Int acc = constant_;
        for (const auto& [v, a] : coeffs_) acc += a * lookup(v);
        return acc;
    }

    // Canonical total order (entry-wise by index then coefficient, then the
    // constant); used for deterministic enumeration of substitution sets.
    int compare(const Term& o) const {
        auto i = coeffs_.begin();
        auto j = o.coeffs_.begin();
        for (; i != coeffs_.end() && j != o.coeffs_.end(); ++i, ++j) {
            if (i->first != j->first) return i->first < j->first ? -1 : 1;
            if (i->second != j->second) return i->second < j->second ? -1 : 1;
        }
        if (i != coeffs_.end()) return 1;
        if (j != o.coeffs_.end()) return -1;
        if (constant_ != o.constant_) return constant_ < o.constant_ ? -1 : 1;
        return 0;
    }

    bool operator==(const Term& o) const { return compare(o) == 0; }
    bool operator!=(const Term& o) const { return compare(o) != 0; }
    bool operator<(const Term& o) const { return compare(o) < 0; }

    // Contribution to the size measure: one node for the term, one per
    // variable, and 1 + bit_length per integer literal (coefficients and the
    // constant; the constant is always counted, with bit_length(0) = 0).
    std::size_t size_measure() const {
        std::size_t s = 1 + 1 + bit_length(constant_);
        for (const auto& [v, a] : coeffs_) {
            (void)v;
            s += 1 + 1 + bit_length(a);
        }
        return s;
    }

private:
    std::map<VarId, Int> coeffs_;
    Int constant_;
};

inline Term operator*(const Int& k, const Term& t) { return t.scaled(k); }

} // namespace prescount

#endif
