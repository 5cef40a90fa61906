#pragma once

#include "heckemod/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace heckemod {

/// Truncated q-expansion  sum_{m < prec} a_m q^m  with exact integer
/// coefficients.  Binary operations truncate to the smaller precision.
class QExpansion {
public:
    explicit QExpansion(std::size_t prec) : coeffs_(prec) {
        if (prec == 0) throw std::invalid_argument("QExpansion: precision must be positive");
    }

    explicit QExpansion(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw std::invalid_argument("QExpansion: precision must be positive");
    }

    QExpansion(std::initializer_list<long> coeffs) {
        if (coeffs.size() == 0) throw std::invalid_argument("QExpansion: precision must be positive");
        coeffs_.reserve(coeffs.size());
        for (long c : coeffs) coeffs_.emplace_back(c);
    }

    static QExpansion one(std::size_t prec) {
        QExpansion r(prec);
        r.coeffs_[0] = 1;
        return r;
    }

    std::size_t prec() const { return coeffs_.size(); }
    const Integer& operator[](std::size_t m) const { return coeffs_.at(m); }
    Integer& operator[](std::size_t m) { return coeffs_.at(m); }
    const std::vector<Integer>& coeffs() const { return coeffs_; }

    /// Order of vanishing at q = 0, or prec() for the zero series.
    std::size_t valuation() const {
        std::size_t m = 0;
        while (m < coeffs_.size() && coeffs_[m] == 0) ++m;
        return m;
    }

    bool is_zero() const { return valuation() == coeffs_.size(); }

    QExpansion truncated(std::size_t prec) const {
        if (prec == 0 || prec > coeffs_.size())
            throw std::invalid_argument("QExpansion::truncated: cannot extend precision");
        return QExpansion(std::vector<Integer>(coeffs_.begin(), coeffs_.begin() + prec));
    }

    friend QExpansion operator+(const QExpansion& a, const QExpansion& b) {
        QExpansion r(std::min(a.prec(), b.prec()));
        for (std::size_t m = 0; m < r.prec(); ++m) r.coeffs_[m] = a.coeffs_[m] + b.coeffs_[m];
        return r;
    }

    friend QExpansion operator-(const QExpansion& a, const QExpansion& b) {
        QExpansion r(std::min(a.prec(), b.prec()));
        for (std::size_t m = 0; m < r.prec(); ++m) r.coeffs_[m] = a.coeffs_[m] - b.coeffs_[m];
        return r;
    }

    friend QExpansion operator*(const Integer& s, const QExpansion& a) {
        QExpansion r = a;
        for (auto& c : r.coeffs_) c *= s;
        return r;
    }

    friend bool operator==(const QExpansion& a, const QExpansion& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::vector<Integer> coeffs_;
};

/// Truncated product.  Leading zeros of either factor are skipped, so
/// multiplying by a power of Delta costs nothing for the low coefficients.
inline QExpansion mul(const QExpansion& a, const QExpansion& b) {
    const std::size_t prec = std::min(a.prec(), b.prec());
    QExpansion r(prec);
    const std::size_t va = a.valuation();
    const std::size_t vb = b.valuation();
    for (std::size_t i = va; i < prec; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = vb; i + j < prec; ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    return r;
}

inline QExpansion operator*(const QExpansion& a, const QExpansion& b) { return mul(a, b); }

inline QExpansion pow(const QExpansion& a, unsigned long e) {
    QExpansion result = QExpansion::one(a.prec());
    QExpansion base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return result;
}

namespace detail {

// sigma_r(n) = sum of d^r over the divisors d of n
inline Integer divisor_power_sum(std::size_t n, unsigned long r) {
    Integer s = 0;
    for (std::size_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        s += ipow(Integer(static_cast<unsigned long>(d)), r);
        if (d * d != n) s += ipow(Integer(static_cast<unsigned long>(n / d)), r);
    }
    return s;
}

inline QExpansion eisenstein(std::size_t prec, long factor, unsigned long r) {
    if (prec == 0) throw std::invalid_argument("eisenstein: precision must be positive");
    QExpansion e(prec);
    e[0] = 1;
    for (std::size_t n = 1; n < prec; ++n) e[n] = factor * divisor_power_sum(n, r);
    return e;
}

} // namespace detail

/// E4 = 1 + 240 sum sigma_3(n) q^n
inline QExpansion eisenstein4(std::size_t prec) { return detail::eisenstein(prec, 240, 3); }

/// E6 = 1 - 504 sum sigma_5(n) q^n
inline QExpansion eisenstein6(std::size_t prec) { return detail::eisenstein(prec, -504, 5); }

/// Delta = q prod_{n>=1} (1 - q^n)^24, built from the eta product.
inline QExpansion delta(std::size_t prec) {
    if (prec == 0) throw std::invalid_argument("delta: precision must be positive");
    QExpansion r(prec);
    if (prec == 1) return r;
    // Euler product prod (1 - q^n) up to q^{prec-2}; the final shift by q
    // consumes one coefficient.
    const std::size_t inner = prec - 1;
    QExpansion euler = QExpansion::one(inner);
    for (std::size_t n = 1; n < inner; ++n)
        for (std::size_t m = inner - 1; m >= n; --m) {
            euler[m] -= euler[m - n];
            if (m == n) break;
        }
    QExpansion p24 = pow(euler, 24);
    for (std::size_t m = 1; m < prec; ++m) r[m] = p24[m - 1];
    return r;
}

} // namespace heckemod
