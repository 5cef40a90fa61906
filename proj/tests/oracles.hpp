#pragma once

// Independent reference computations used by the tests.  None of these share
// code paths with the library beyond the Integer/Rational typedefs.

#include "heckemod/integer.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace oracle {

using heckemod::Integer;
using heckemod::Rational;

// tau(1..n) from Jacobi's identity prod (1-q^m)^3 = sum (-1)^j (2j+1) q^{j(j+1)/2},
// so Delta = q * (that series)^8.
inline std::vector<Integer> tau(std::size_t n) {
    std::vector<Integer> theta(n, 0);
    for (long j = 0;; ++j) {
        const auto e = static_cast<std::size_t>(j * (j + 1) / 2);
        if (e >= n) break;
        theta[e] = (j % 2 ? -1 : 1) * (2 * j + 1);
    }
    std::vector<Integer> acc(n, 0);
    acc[0] = 1;
    for (int rep = 0; rep < 8; ++rep) {
        std::vector<Integer> next(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            if (acc[i] != 0)
                for (std::size_t j = 0; i + j < n; ++j) next[i + j] += acc[i] * theta[j];
        acc.swap(next);
    }
    std::vector<Integer> t(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) t[i + 1] = acc[i];
    return t;
}

// Classical dimension formula for S_k(SL_2(Z)).
inline int dim_cusp(int k) {
    if (k < 12 || k % 2) return 0;
    return k % 12 == 2 ? k / 12 - 1 : k / 12;
}

inline Integer sigma(long n, unsigned r) {
    Integer s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) s += heckemod::ipow(d, r);
    return s;
}

// Kronecker-Hurwitz: sum over t in Z of H(4n - t^2) = 2 sigma(n) - sum_{dd'=n} min(d, d').
inline Rational kronecker_hurwitz_rhs(long n) {
    Integer lam = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) lam += std::min(d, n / d);
    return Rational(2 * sigma(n, 1) - lam);
}

// Characteristic polynomial by Faddeev-LeVerrier over Q, ascending coefficients.
inline std::vector<Integer> faddeev_leverrier(const std::vector<std::vector<Integer>>& a) {
    const std::size_t n = a.size();
    using Mat = std::vector<std::vector<Rational>>;
    Mat A(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A[i][j] = a[i][j];
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    Mat M(n, std::vector<Rational>(n, 0));
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I
        Mat next(n, std::vector<Rational>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t l = 0; l < n; ++l) next[i][j] += A[i][l] * M[l][j];
                if (i == j) next[i][j] += c[n - k + 1];
            }
        M = next;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) tr += A[i][l] * M[l][i];
        c[n - k] = -tr / static_cast<long>(k);
    }
    std::vector<Integer> out;
    for (auto& x : c) out.push_back(x.get_num());
    return out;
}

// All monic polynomials of the given degree over F_ell, ascending coefficient vectors.
inline std::vector<std::vector<std::uint64_t>> monic_polys(std::uint64_t ell, int deg) {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> c(static_cast<std::size_t>(deg) + 1, 0);
    c.back() = 1;
    while (true) {
        out.push_back(c);
        std::size_t i = 0;
        while (i < static_cast<std::size_t>(deg) && ++c[i] == ell) c[i++] = 0;
        if (i == static_cast<std::size_t>(deg)) break;
    }
    return out;
}

inline std::uint64_t eval(const std::vector<std::uint64_t>& c, std::uint64_t x, std::uint64_t ell) {
    std::uint64_t v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = (v * x + *it) % ell;
    return v;
}

// Degree <= 3: irreducible iff no root.
inline bool irreducible_small(const std::vector<std::uint64_t>& c, std::uint64_t ell) {
    const auto deg = c.size() - 1;
    if (deg == 1) return true;
    for (std::uint64_t x = 0; x < ell; ++x)
        if (eval(c, x, ell) == 0) return false;
    return true;
}

// Sorted list of factor degrees with multiplicity, for deg <= 3, via roots.
inline std::vector<int> degree_partition_small(const std::vector<std::uint64_t>& c, std::uint64_t ell) {
    std::vector<std::uint64_t> f = c;
    std::vector<int> parts;
    for (std::uint64_t x = 0; x < ell && f.size() > 1;) {
        if (eval(f, x, ell) != 0) {
            ++x;
            continue;
        }
        // synthetic division by (X - x): q_i = f_{i+1} + x q_{i+1}
        std::vector<std::uint64_t> q(f.size() - 1);
        for (std::size_t i = q.size(); i-- > 0;) q[i] = (f[i + 1] + (i + 1 < q.size() ? x * q[i + 1] : 0)) % ell;
        f = q;
        parts.push_back(1);
    }
    int rest = static_cast<int>(f.size()) - 1;
    if (rest > 0) parts.push_back(rest);
    std::sort(parts.rbegin(), parts.rend());
    return parts;
}

// Smallest period p of v such that v[i] == v[i + p] for all valid i and the
// sequence holds at least two full periods.
template <typename T>
inline std::size_t naive_period(const std::vector<T>& v) {
    for (std::size_t p = 1; 2 * p <= v.size(); ++p) {
        bool ok = true;
        for (std::size_t i = 0; i + p < v.size() && ok; ++i) ok = v[i] == v[i + p];
        if (ok) return p;
    }
    return 0;
}

} // namespace oracle
