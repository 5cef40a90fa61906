#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace heckemod {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown when a computation hits a state that indicates a defect in the
/// implementation (non-integral trace, bad precision bookkeeping, ...).
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a mathematical statement the library checks turns out false:
/// a divisibility that must hold, a polynomial that must split, a period that
/// must exist.  Callers distinguish it from ordinary failures.
class FalsificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Integer ipow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer ipow(long base, unsigned long e) { return ipow(Integer(base), e); }

/// Least nonnegative residue of x modulo m (m > 0, m < 2^63).
inline std::uint64_t mod_u64(const Integer& x, std::uint64_t m) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), m);
    return r.get_ui();
}

inline std::string to_decimal(const Integer& x) { return x.get_str(10); }

inline Integer from_decimal(const std::string& s) {
    Integer r;
    if (s.empty() || r.set_str(s, 10) != 0)
        throw std::invalid_argument("not a decimal integer: '" + s + "'");
    return r;
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        auto t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace heckemod
