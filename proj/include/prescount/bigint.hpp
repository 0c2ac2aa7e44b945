#ifndef PRESCOUNT_BIGINT_HPP
#define PRESCOUNT_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <string>

#include "prescount/errors.hpp"

namespace prescount {

using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

// Floor division (rounds toward negative infinity). b != 0.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

// Result in [0, |m|). m != 0.
inline Int floor_mod(const Int& a, const Int& m) {
    Int mm = abs_int(m);
    Int r = a % mm;
    if (r < 0) r += mm;
    return r;
}

inline bool divides(const Int& k, const Int& a) {
    if (k == 0) return a == 0;
    return a % k == 0;
}

inline Int gcd_int(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(a, b);
}

inline Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return abs_int(a / gcd_int(a, b) * b);
}

// Bits needed for |n|: bit_length(0) = 0, bit_length(1) = 1, bit_length(4) = 3.
inline std::size_t bit_length(const Int& n) {
    if (n == 0) return 0;
    return boost::multiprecision::msb(abs_int(n)) + 1;
}

// base^exp for exp >= 0. Guards against accidentally materializing numbers
// beyond max_bits (0 = no guard).
inline Int pow_int(const Int& base, const Int& exp, std::size_t max_bits = 0) {
    if (exp < 0) throw ValidationError("pow_int: negative exponent");
    if (max_bits != 0 && abs_int(base) > 1) {
        // result bits ~ exp * bit_length(base); refuse way-out-of-range asks
        Int approx = exp * static_cast<long>(bit_length(base));
        if (approx > Int(max_bits) * 2)
            throw ResourceError("pow_bits", "pow_int result would exceed " +
                                            std::to_string(max_bits) + " bits");
    }
    Int result = 1;
    Int b = base;
    Int e = exp;
    while (e > 0) {
        if ((e & 1) == 1) result *= b;
        e >>= 1;
        if (e > 0) b *= b;
    }
    if (max_bits != 0 && bit_length(result) > max_bits)
        throw ResourceError("pow_bits", "pow_int result exceeds " +
                                        std::to_string(max_bits) + " bits");
    return result;
}

// Decides base^exp >= threshold without materializing huge powers.
// Requires base >= 2, exp >= 0, threshold >= 0.
inline bool pow_at_least(const Int& base, const Int& exp, const Int& threshold) {
    if (base < 2) throw ValidationError("pow_at_least: base must be >= 2");
    if (exp < 0) throw ValidationError("pow_at_least: negative exponent");
    if (threshold <= 1) return true;
    // base^exp >= 2^exp, and 2^bit_length(threshold) > threshold.
    Int tbits = static_cast<long>(bit_length(threshold));
    if (exp >= tbits) return true;
    // exp < bit_length(threshold), which is machine-sized: compute exactly.
    return pow_int(base, exp) >= threshold;
}

inline std::size_t decimal_digits(const Int& n) {
    if (n == 0) return 1;
    return abs_int(n).str().size();
}

} // namespace prescount

#endif
