#pragma once

#include "heckemod/hecke.hpp"
#include "heckemod/integer.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heckemod {

/// Dense polynomial over the prime field F_p, ascending residues in [0, p),
/// no trailing zeros.  Moduli are kept below 2^32 so products fit in 64 bits.
class FpPoly {
public:
    using Residue = std::uint64_t;

    FpPoly() = default;

    FpPoly(std::uint64_t modulus, std::vector<Residue> coeffs) : p_(modulus), c_(std::move(coeffs)) {
        check_modulus();
        for (auto& x : c_) x %= p_;
        trim();
    }

    /// Coefficients given as signed integers, reduced into [0, p).
    static FpPoly from_signed(std::uint64_t modulus, std::initializer_list<long long> coeffs) {
        std::vector<Residue> r;
        for (long long c : coeffs) {
            long long m = c % static_cast<long long>(modulus);
            if (m < 0) m += static_cast<long long>(modulus);
            r.push_back(static_cast<Residue>(m));
        }
        return FpPoly(modulus, std::move(r));
    }

    static FpPoly constant(std::uint64_t modulus, Residue c) { return FpPoly(modulus, {c}); }
    static FpPoly x(std::uint64_t modulus) { return FpPoly(modulus, {0, 1}); }

    std::uint64_t modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    Residue lead() const { return c_.empty() ? 0 : c_.back(); }
    Residue operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<Residue>& coeffs() const { return c_; }

    Residue operator()(Residue x) const {
        Residue v = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = (v * x + *it) % p_;
        return v;
    }

    Residue inv(Residue a) const {
        if (a % p_ == 0) throw std::domain_error("FpPoly: inverse of zero");
        Residue r = 1, b = a % p_, e = p_ - 2;
        while (e > 0) {
            if (e & 1) r = r * b % p_;
            b = b * b % p_;
            e >>= 1;
        }
        return r;
    }

    FpPoly monic() const {
        if (is_zero()) return *this;
        return scaled(inv(lead()));
    }

    FpPoly scaled(Residue s) const {
        FpPoly r = *this;
        for (auto& x : r.c_) x = x * (s % p_) % p_;
        r.trim();
        return r;
    }

    FpPoly derivative() const {
        std::vector<Residue> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * (i % p_) % p_);
        return FpPoly(p_, std::move(d));
    }

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
        a.check_same(b);
        std::vector<Residue> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = (a[i] + b[i]) % a.p_;
        return FpPoly(a.p_, std::move(r));
    }

    friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
        a.check_same(b);
        std::vector<Residue> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = (a[i] + a.p_ - b[i]) % a.p_;
        return FpPoly(a.p_, std::move(r));
    }

    friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
        a.check_same(b);
        if (a.is_zero() || b.is_zero()) return FpPoly(a.p_, {});
        std::vector<Residue> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = (r[i + j] + a.c_[i] * b.c_[j]) % a.p_;
        }
        return FpPoly(a.p_, std::move(r));
    }

    /// Quotient and remainder; b must be nonzero.
    friend std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
        a.check_same(b);
        if (b.is_zero()) throw std::domain_error("FpPoly: division by zero polynomial");
        const std::uint64_t p = a.p_;
        if (a.degree() < b.degree()) return {FpPoly(p, {}), a};
        std::vector<Residue> rem = a.c_;
        std::vector<Residue> quo(a.c_.size() - b.c_.size() + 1);
        const Residue linv = b.inv(b.lead());
        const std::size_t db = b.c_.size() - 1;
        for (std::size_t i = rem.size(); i-- > db;) {
            const Residue q = rem[i] * linv % p;
            quo[i - db] = q;
            if (q == 0) continue;
            for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] = (rem[i - db + j] + p - q * b.c_[j] % p) % p;
        }
        rem.resize(db);
        return {FpPoly(p, std::move(quo)), FpPoly(p, std::move(rem))};
    }

    friend FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }
    friend FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }

    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

    /// Canonical order: modulus, then degree, then ascending coefficient tuple.
    friend std::strong_ordering operator<=>(const FpPoly& a, const FpPoly& b) {
        if (auto c = a.p_ <=> b.p_; c != 0) return c;
        if (auto c = a.c_.size() <=> b.c_.size(); c != 0) return c;
        return a.c_ <=> b.c_;
    }

    /// Descending-degree human form with residues in [0, p), e.g. "x^2 + 4".
    std::string to_string(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const Residue c = c_[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            if (!first) os << " + ";
            first = false;
            if (i == 0) {
                os << c;
                continue;
            }
            if (c != 1) os << c << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        return os.str();
    }

private:
    void check_modulus() const {
        if (p_ < 2 || p_ >= (std::uint64_t{1} << 32)) throw std::invalid_argument("FpPoly: modulus must be in [2, 2^32)");
    }
    void check_same(const FpPoly& o) const {
        if (p_ != o.p_) throw std::invalid_argument("FpPoly: mismatched moduli");
    }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::uint64_t p_ = 2;
    std::vector<Residue> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
inline FpPoly gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// base^e mod m for an arbitrary-size exponent.
inline FpPoly powmod(const FpPoly& base, const Integer& e, const FpPoly& m) {
    FpPoly result = FpPoly::constant(m.modulus(), 1) % m;
    if (e == 0) return result;
    FpPoly b = base % m;
    for (auto bit = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)); bit-- > 0;) {
        result = (result * result) % m;
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) result = (result * b) % m;
    }
    return result;
}

class InexactDivision : public std::runtime_error {
public:
    InexactDivision(FpPoly quotient, FpPoly remainder)
        : std::runtime_error("inexact division, remainder " + remainder.to_string()),
          quotient_(std::move(quotient)),
          remainder_(std::move(remainder)) {}

    const FpPoly& quotient() const { return quotient_; }
    const FpPoly& remainder() const { return remainder_; }

private:
    FpPoly quotient_;
    FpPoly remainder_;
};

/// a / b when b divides a; InexactDivision (carrying the remainder) otherwise.
inline FpPoly divide_exact(const FpPoly& a, const FpPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw InexactDivision(std::move(q), std::move(r));
    return q;
}

/// Coefficient-wise reduction of an integer polynomial.
inline FpPoly reduce_mod(const IntPoly& f, std::uint64_t ell) {
    std::vector<FpPoly::Residue> c;
    c.reserve(f.coeffs().size());
    for (const auto& x : f.coeffs()) c.push_back(mod_u64(x, ell));
    return FpPoly(ell, std::move(c));
}

struct Factor {
    FpPoly poly;
    int multiplicity = 1;
    friend bool operator==(const Factor&, const Factor&) = default;
};

/// unit * prod factor^multiplicity, factors monic irreducible, pairwise
/// distinct and sorted canonically.
struct FactorMultiset {
    std::uint64_t modulus = 2;
    FpPoly::Residue unit = 1;
    std::vector<Factor> factors;

    FpPoly product() const {
        FpPoly r = FpPoly::constant(modulus, unit);
        for (const auto& f : factors)
            for (int i = 0; i < f.multiplicity; ++i) r = r * f.poly;
        return r;
    }

    bool squarefree() const {
        return std::all_of(factors.begin(), factors.end(), [](const Factor& f) { return f.multiplicity == 1; });
    }

    /// Degrees of the irreducible factors, repeated by multiplicity, descending.
    std::vector<int> degree_partition() const {
        std::vector<int> parts;
        for (const auto& f : factors)
            for (int i = 0; i < f.multiplicity; ++i) parts.push_back(f.poly.degree());
        std::sort(parts.rbegin(), parts.rend());
        return parts;
    }

    /// "(x + 1)(x + 4)", with a leading unit when it is not 1 and "^m" for
    /// repeated factors; "1" for the empty product.
    std::string to_string() const {
        std::ostringstream os;
        if (unit != 1 || factors.empty()) os << unit;
        for (const auto& f : factors) {
            os << "(" << f.poly.to_string() << ")";
            if (f.multiplicity > 1) os << "^" << f.multiplicity;
        }
        return os.str();
    }

    friend bool operator==(const FactorMultiset&, const FactorMultiset&) = default;
};

namespace detail {

// Frobenius inverse on F_p[x]: f(x) = g(x)^p  =>  g
inline FpPoly pth_root(const FpPoly& f) {
    const auto p = f.modulus();
    std::vector<FpPoly::Residue> g;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) g.push_back(f.coeffs()[i]);
    return FpPoly(p, std::move(g));
}

// Square-free decomposition of a monic polynomial: pairs (g, i) with g
// square-free and f = prod g^i.
inline void squarefree_parts(const FpPoly& f, int scale, std::vector<std::pair<FpPoly, int>>& out) {
    if (f.degree() < 1) return;
    const auto p = static_cast<int>(f.modulus());
    FpPoly c = gcd(f, f.derivative());
    FpPoly w = f / c;
    int i = 1;
    while (!w.is_one()) {
        FpPoly y = gcd(w, c);
        FpPoly fac = w / y;
        if (fac.degree() > 0) out.emplace_back(fac.monic(), i * scale);
        w = y;
        c = c / y;
        ++i;
    }
    if (!c.is_one()) squarefree_parts(pth_root(c.monic()), scale * p, out);
}

// Distinct-degree factorization of a monic square-free polynomial.
inline std::vector<std::pair<FpPoly, int>> distinct_degree(const FpPoly& f) {
    std::vector<std::pair<FpPoly, int>> out;
    const auto p = f.modulus();
    const FpPoly x = FpPoly::x(p);
    FpPoly rest = f;
    FpPoly h = x % rest;
    for (int i = 1; rest.degree() >= 2 * i; ++i) {
        h = powmod(h, Integer(static_cast<unsigned long>(p)), rest);
        FpPoly g = gcd(rest, h - x);
        if (!g.is_one()) {
            out.emplace_back(g, i);
            rest = rest / g;
            h = h % rest;
        }
    }
    if (rest.degree() > 0) out.emplace_back(rest.monic(), rest.degree());
    return out;
}

// Cantor-Zassenhaus splitting of a monic square-free product of irreducibles
// of degree d.  Characteristic 2 uses the trace map instead of the
// quadratic-residue exponent.
inline void equal_degree(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    if (f.degree() <= d) {
        out.push_back(f.monic());
        return;
    }
    const auto p = f.modulus();
    const FpPoly one = FpPoly::constant(p, 1);
    Integer exponent = 0;
    if (p != 2) exponent = (ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(d)) - 1) / 2;
    std::uniform_int_distribution<FpPoly::Residue> coeff(0, p - 1);
    for (;;) {
        std::vector<FpPoly::Residue> a(static_cast<std::size_t>(f.degree()));
        for (auto& c : a) c = coeff(rng);
        FpPoly r(p, std::move(a));
        if (r.degree() < 1) continue;
        FpPoly b;
        if (p == 2) {
            FpPoly term = r % f;
            b = term;
            for (int i = 1; i < d; ++i) {
                term = (term * term) % f;
                b = b + term;
            }
        } else {
            b = powmod(r, exponent, f) - one;
        }
        FpPoly g = gcd(f, b);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
    }
}

} // namespace detail

/// Complete factorization over F_p.  The seed drives the random splitting
/// only; the canonical sort makes the result independent of it.
inline FactorMultiset factor(const FpPoly& f, std::uint64_t seed = 0) {
    if (f.is_zero()) throw std::invalid_argument("factor: zero polynomial");
    FactorMultiset result;
    result.modulus = f.modulus();
    result.unit = f.lead();
    std::vector<std::pair<FpPoly, int>> sqf;
    detail::squarefree_parts(f.monic(), 1, sqf);
    std::mt19937_64 rng(seed);
    for (const auto& [part, mult] : sqf)
        for (const auto& [block, d] : detail::distinct_degree(part)) {
            std::vector<FpPoly> irreducibles;
            detail::equal_degree(block, d, rng, irreducibles);
            for (auto& g : irreducibles) result.factors.push_back({std::move(g), mult});
        }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const Factor& a, const Factor& b) { return a.poly < b.poly; });
    // the same irreducible can surface from different square-free layers
    std::vector<Factor> merged;
    for (auto& fac : result.factors) {
        if (!merged.empty() && merged.back().poly == fac.poly)
            merged.back().multiplicity += fac.multiplicity;
        else
            merged.push_back(std::move(fac));
    }
    result.factors = std::move(merged);
    return result;
}

/// Roots in F_p with multiplicity, ascending.
inline std::vector<FpPoly::Residue> roots(const FpPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("roots: zero polynomial");
    std::vector<FpPoly::Residue> r;
    for (const auto& fac : factor(f).factors) {
        if (fac.poly.degree() != 1) continue;
        const auto root = (f.modulus() - fac.poly[0]) % f.modulus();
        r.insert(r.end(), static_cast<std::size_t>(fac.multiplicity), root);
    }
    std::sort(r.begin(), r.end());
    return r;
}

/// Rabin's test: g of degree n is irreducible iff x^{p^n} = x mod g and
/// gcd(x^{p^{n/r}} - x, g) = 1 for each prime r | n.
inline bool is_irreducible(const FpPoly& g) {
    const int n = g.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    const auto p = g.modulus();
    const FpPoly m = g.monic();
    const FpPoly x = FpPoly::x(p);
    std::vector<FpPoly> frob{x % m};  // frob[j] = x^{p^j} mod m
    for (int j = 1; j <= n; ++j) frob.push_back(powmod(frob.back(), Integer(static_cast<unsigned long>(p)), m));
    if (!(frob[static_cast<std::size_t>(n)] == x % m)) return false;
    for (int r = 2; r <= n; ++r) {
        if (n % r != 0 || !is_prime(r)) continue;
        if (!gcd(m, frob[static_cast<std::size_t>(n / r)] - x).is_one()) return false;
    }
    return true;
}

} // namespace heckemod
