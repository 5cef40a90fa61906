#pragma once

#include "heckemod/integer.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace heckemod {

/// Hurwitz class number H(N): classes of positive definite binary quadratic
/// forms of discriminant -N, forms equivalent to a multiple of x^2 + y^2
/// counted 1/2 and of x^2 + xy + y^2 counted 1/3.  H(0) = -1/12, and H(N) = 0
/// when -N is not a discriminant.
inline Rational hurwitz_class_number(std::int64_t N) {
    if (N < 0) throw std::invalid_argument("hurwitz_class_number: negative argument");
    if (N == 0) return Rational(-1, 12);
    if (N % 4 == 1 || N % 4 == 2) return Rational(0);
    Rational h = 0;
    // reduced forms: |b| <= a <= c, b >= 0 when |b| = a or a = c
    for (std::int64_t a = 1; 3 * a * a <= N; ++a)
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if ((b - N) % 2 != 0) continue;
            const std::int64_t num = b * b + N;
            if (num % (4 * a) != 0) continue;
            const std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (a == c && b == 0)
                h += Rational(1, 2);
            else if (a == b && b == c)
                h += Rational(1, 3);
            else
                h += 1;
        }
    h.canonicalize();
    return h;
}

/// (eta^{k-1} - etabar^{k-1}) / (eta - etabar) for eta, etabar the roots of
/// X^2 - tX + n, via U_0 = 0, U_1 = 1, U_j = t U_{j-1} - n U_{j-2}.  The
/// recursion covers the repeated-root case t^2 = 4n without special handling.
inline Integer weight_poly(int k, std::int64_t t, std::int64_t n) {
    if (k < 2) throw std::invalid_argument("weight_poly: weight must be at least 2");
    Integer prev = 0, cur = 1;
    const Integer tt(static_cast<long>(t)), nn(static_cast<long>(n));
    for (int j = 2; j <= k - 1; ++j) {
        Integer next = tt * cur - nn * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Trace of T_n on S_k(1) by the Eichler-Selberg trace formula:
///   -1/2 sum_{t^2 <= 4n} U_{k-1}(t, n) H(4n - t^2)  -  1/2 sum_{dd' = n} min(d, d')^{k-1}.
inline Integer trace(std::int64_t n, int k) {
    if (n < 1) throw std::invalid_argument("trace: index must be positive");
    if (k < 4 || k % 2 != 0) throw std::invalid_argument("trace: weight must be even and at least 4");
    Rational elliptic = 0;
    for (std::int64_t t = 0; t * t <= 4 * n; ++t) {
        Rational term = weight_poly(k, t, n) * hurwitz_class_number(4 * n - t * t);
        elliptic += (t == 0) ? term : 2 * term;  // U_{k-1} is even in t for even k
    }
    Rational hyperbolic = 0;
    for (std::int64_t d = 1; d <= n; ++d)
        if (n % d == 0) hyperbolic += ipow(Integer(static_cast<long>(std::min(d, n / d))), static_cast<unsigned long>(k - 1));
    Rational total = -elliptic / 2 - hyperbolic / 2;
    total.canonicalize();
    if (total.get_den() != 1)
        throw ComputationError("trace formula produced a non-integer for n=" + std::to_string(n) +
                               ", k=" + std::to_string(k) + ": " + total.get_str());
    return total.get_num();
}

inline bool is_square_mod(std::int64_t a, std::int64_t ell) {
    a %= ell;
    if (a < 0) a += ell;
    for (std::int64_t x = 0; x < ell; ++x)
        if ((x * x) % ell == a) return true;
    return false;
}

/// Search bound for the period of trace(n, k) mod ell in k.  When n is a
/// non-residue mod ell every eta lives in F_{ell^2}^*, so the period divides
/// ell^2 - 1; otherwise the bound is the exponent of GL_2(F_ell).
inline int trace_period_bound(std::int64_t n, std::int64_t ell) {
    const auto e = static_cast<int>(ell);
    return is_square_mod(n, ell) ? e * (e * e - 1) : e * e - 1;
}

/// Bound on the period of a root sequence mod ell when p is a non-residue.
inline int root_period_bound(std::int64_t ell) { return static_cast<int>((ell * ell - 1) / 12); }

/// Least L, a multiple of ell - 1, with trace(n, k) = trace(n, k + L) mod ell
/// for every sampled k = kclass mod (ell - 1) in a window twice the search
/// bound.  A bound of 0 selects trace_period_bound.  No period within the
/// bound is a FalsificationError.
inline int trace_mod_periodicity(std::int64_t n, std::int64_t ell, int kclass, int bound = 0) {
    if (ell < 5 || !is_prime(ell)) throw std::invalid_argument("trace_mod_periodicity: ell must be a prime >= 5");
    if (n < 1 || n % ell == 0) throw std::invalid_argument("trace_mod_periodicity: ell must not divide n");
    const int step = static_cast<int>(ell - 1);
    if (kclass < 0 || kclass >= step || kclass % 2 != 0)
        throw std::invalid_argument("trace_mod_periodicity: kclass must be even and in [0, ell-1)");
    if (bound <= 0) bound = trace_period_bound(n, ell);
    int k0 = kclass;
    while (k0 < 4) k0 += step;
    const int max_shift = bound / step;
    const int samples = 2 * max_shift + 1;
    std::vector<std::uint64_t> v;
    v.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) v.push_back(mod_u64(trace(n, k0 + i * step), static_cast<std::uint64_t>(ell)));
    for (int s = 1; s <= max_shift; ++s) {
        bool ok = true;
        for (int i = 0; i + s < samples && ok; ++i) ok = v[static_cast<std::size_t>(i)] == v[static_cast<std::size_t>(i + s)];
        if (ok) return s * step;
    }
    throw FalsificationError("trace(" + std::to_string(n) + ", k) mod " + std::to_string(ell) +
                             " shows no period up to " + std::to_string(bound) + " for k = " +
                             std::to_string(kclass) + " mod " + std::to_string(step));
}

} // namespace heckemod
