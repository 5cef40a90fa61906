#pragma once

#include "heckemod/integer.hpp"
#include "heckemod/qseries.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heckemod {

/// Hecke operator T_n on S_k(1); level one and trivial character are fixed.
struct HeckeSpec {
    long n = 1;
    int k = 0;
};

class InsufficientPrecision : public ComputationError {
public:
    using ComputationError::ComputationError;
};

/// Dense square matrix of exact integers, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

    static IntMatrix identity(std::size_t dim) {
        IntMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t dim() const { return dim_; }
    Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

    Integer trace() const {
        Integer t = 0;
        for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.dim_ != b.dim_) throw std::invalid_argument("IntMatrix: dimension mismatch");
        IntMatrix r(a.dim_);
        for (std::size_t i = 0; i < a.dim_; ++i)
            for (std::size_t l = 0; l < a.dim_; ++l) {
                if (a(i, l) == 0) continue;
                for (std::size_t j = 0; j < a.dim_; ++j)
                    mpz_addmul(r(i, j).get_mpz_t(), a(i, l).get_mpz_t(), b(l, j).get_mpz_t());
            }
        return r;
    }

    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
        if (a.dim_ != b.dim_) throw std::invalid_argument("IntMatrix: dimension mismatch");
        IntMatrix r(a.dim_);
        for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] = a.entries_[i] - b.entries_[i];
        return r;
    }

    friend IntMatrix operator*(const Integer& s, const IntMatrix& a) {
        IntMatrix r = a;
        for (auto& e : r.entries_) e *= s;
        return r;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.dim_ == b.dim_ && a.entries_ == b.entries_;
    }

private:
    std::size_t dim_ = 0;
    std::vector<Integer> entries_;
};

/// Dense polynomial over Z, ascending coefficients, no trailing zeros
/// (the zero polynomial has no coefficients).
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
    IntPoly(std::initializer_list<long> coeffs) {
        for (long c : coeffs) coeffs_.emplace_back(c);
        normalize();
    }

    /// Degree, or -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
    const std::vector<Integer>& coeffs() const { return coeffs_; }
    const Integer& operator[](std::size_t i) const { return coeffs_.at(i); }

    Integer operator()(const Integer& x) const {
        Integer v = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
        return v;
    }

    friend bool operator==(const IntPoly&, const IntPoly&) = default;

    /// Descending-degree human form, e.g. "x^2 - 1080*x - 20468736".
    std::string to_string(const std::string& var = "x") const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const Integer& c = coeffs_[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            Integer mag = abs(c);
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            if (i == 0) {
                os << mag.get_str();
                continue;
            }
            if (mag != 1) os << mag.get_str() << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        return os.str();
    }

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Integer> coeffs_;
};

/// Exponent triple of the monomial Delta^a E4^b E6^c.
struct Monomial {
    int a = 0;
    int b = 0;
    int c = 0;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// dim S_k(1): the number of (a, b, c) with a >= 1, b >= 0, c in {0, 1} and
/// 12a + 4b + 6c = k.
inline int dim_cusp(int k) {
    if (k < 0 || k % 2 != 0) return 0;
    int count = 0;
    for (int a = 1; 12 * a <= k; ++a)
        for (int c = 0; c <= 1; ++c) {
            int rest = k - 12 * a - 6 * c;
            if (rest >= 0 && rest % 4 == 0) ++count;
        }
    return count;
}

/// Basis of S_k(1) ordered by the power of Delta; the j-th element starts
/// with q^j, so the coefficient matrix is unit upper triangular.
inline std::vector<Monomial> monomial_basis(int k) {
    if (k % 2 != 0) throw std::invalid_argument("monomial_basis: weight must be even");
    if (k < 0) throw std::invalid_argument("monomial_basis: weight must be nonnegative");
    std::vector<Monomial> basis;
    const int d = dim_cusp(k);
    for (int j = 1; j <= d; ++j) {
        int rest = k - 12 * j;
        int c = (rest % 4 == 0) ? 0 : 1;
        rest -= 6 * c;
        if (rest < 0 || rest % 4 != 0) throw ComputationError("monomial_basis: no monomial for j=" + std::to_string(j));
        basis.push_back({j, rest / 4, c});
    }
    return basis;
}

/// T_n f at level one: coefficient m is sum_{e | gcd(m, n)} e^{k-1} a_{mn/e^2}.
/// The input must carry coefficients up to index n*(out_prec - 1).
inline QExpansion hecke_action(const QExpansion& f, const HeckeSpec& spec, std::size_t out_prec) {
    if (spec.n < 1) throw std::invalid_argument("hecke_action: index must be positive");
    if (out_prec == 0) throw std::invalid_argument("hecke_action: output precision must be positive");
    const auto n = static_cast<std::size_t>(spec.n);
    const std::size_t needed = n * (out_prec - 1) + 1;
    if (f.prec() < needed)
        throw InsufficientPrecision("hecke_action: T_" + std::to_string(n) + " to precision " +
                                    std::to_string(out_prec) + " needs " + std::to_string(needed) +
                                    " input coefficients, got " + std::to_string(f.prec()));
    QExpansion r(out_prec);
    for (std::size_t m = 0; m < out_prec; ++m) {
        const std::size_t g = std::gcd(m, n);
        for (std::size_t e = 1; e <= g; ++e) {
            if (g % e != 0) continue;
            const std::size_t idx = m * n / (e * e);
            if (f[idx] == 0) continue;
            r[m] += ipow(Integer(static_cast<unsigned long>(e)), static_cast<unsigned long>(spec.k - 1)) * f[idx];
        }
    }
    return r;
}

/// Memo of the series Delta^a and E4^b E6^c used to assemble monomial bases.
/// Entries are immutable once published; a request for more precision than
/// stored replaces the entry with a longer one.
class SeriesTable {
public:
    using Ptr = std::shared_ptr<const QExpansion>;

    Ptr delta_power(int a, std::size_t prec) {
        if (a == 0) return std::make_shared<const QExpansion>(QExpansion::one(prec));
        if (auto hit = lookup(delta_, a, prec)) return hit;
        const std::size_t target = grow(prec);
        auto value = (a == 1) ? std::make_shared<const QExpansion>(delta(target))
                              : std::make_shared<const QExpansion>(mul(*delta_power(a - 1, target), *delta_power(1, target)));
        return publish(delta_, a, value);
    }

    Ptr eisenstein_power(int b, int c, std::size_t prec) {
        const int key = 2 * b + c;
        if (auto hit = lookup(eis_, key, prec)) return hit;
        const std::size_t target = grow(prec);
        QExpansion value = (b == 0) ? (c == 0 ? QExpansion::one(target) : eisenstein6(target))
                                    : mul(*eisenstein_power(b - 1, c, target), eisenstein4(target));
        return publish(eis_, key, std::make_shared<const QExpansion>(std::move(value)));
    }

    static SeriesTable& shared() {
        static SeriesTable table;
        return table;
    }

private:
    static std::size_t grow(std::size_t prec) { return ((prec + 31) / 32) * 32; }

    Ptr lookup(std::map<int, Ptr>& m, int key, std::size_t prec) {
        std::lock_guard lock(mutex_);
        auto it = m.find(key);
        if (it != m.end() && it->second->prec() >= prec) return it->second;
        return nullptr;
    }

    Ptr publish(std::map<int, Ptr>& m, int key, Ptr value) {
        std::lock_guard lock(mutex_);
        auto& slot = m[key];
        if (!slot || slot->prec() < value->prec()) slot = std::move(value);
        return slot;
    }

    std::mutex mutex_;
    std::map<int, Ptr> delta_;
    std::map<int, Ptr> eis_;
};

/// Full q-expansion of a basis monomial.
inline QExpansion monomial_series(const Monomial& mono, std::size_t prec, SeriesTable& table = SeriesTable::shared()) {
    auto d = table.delta_power(mono.a, prec);
    auto e = table.eisenstein_power(mono.b, mono.c, prec);
    return mul(d->truncated(prec), e->truncated(prec));
}

/// Matrix of T_n on S_k(1) in the monomial basis; column j holds the
/// coordinates of T_n applied to the j-th basis element.
inline IntMatrix hecke_matrix(const HeckeSpec& spec, SeriesTable& table = SeriesTable::shared()) {
    if (spec.k % 2 != 0) throw std::invalid_argument("hecke_matrix: weight must be even");
    if (spec.n < 1) throw std::invalid_argument("hecke_matrix: index must be positive");
    const auto basis = monomial_basis(spec.k);
    const std::size_t d = basis.size();
    IntMatrix result(d);
    if (d == 0) return result;

    const auto n = static_cast<std::size_t>(spec.n);
    const std::size_t prec = n * d + 1;

    // Coefficient indices consulted by T_n for output indices 1..d, plus
    // 1..d themselves for the triangular solve.
    std::set<std::size_t> wanted;
    for (std::size_t m = 1; m <= d; ++m) {
        wanted.insert(m);
        const std::size_t g = std::gcd(m, n);
        for (std::size_t e = 1; e <= g; ++e)
            if (g % e == 0) wanted.insert(m * n / (e * e));
    }

    std::vector<Integer> epow(n + 1);
    for (std::size_t e = 1; e <= n; ++e)
        epow[e] = ipow(Integer(static_cast<unsigned long>(e)), static_cast<unsigned long>(spec.k - 1));

    // lead[i][m] = coefficient of q^m in basis element i (m = 0..d)
    std::vector<std::vector<Integer>> lead(d, std::vector<Integer>(d + 1));
    std::vector<std::vector<Integer>> image(d, std::vector<Integer>(d + 1));
    for (std::size_t i = 0; i < d; ++i) {
        auto dp = table.delta_power(basis[i].a, prec);
        auto ep = table.eisenstein_power(basis[i].b, basis[i].c, prec);
        const auto start = static_cast<std::size_t>(basis[i].a);
        std::map<std::size_t, Integer> coeff;
        for (std::size_t idx : wanted) {
            Integer s = 0;
            for (std::size_t t = start; t <= idx; ++t)
                mpz_addmul(s.get_mpz_t(), (*dp)[t].get_mpz_t(), (*ep)[idx - t].get_mpz_t());
            coeff.emplace(idx, std::move(s));
        }
        for (std::size_t m = 1; m <= d; ++m) {
            lead[i][m] = coeff.at(m);
            const std::size_t g = std::gcd(m, n);
            Integer s = 0;
            for (std::size_t e = 1; e <= g; ++e)
                if (g % e == 0) s += epow[e] * coeff.at(m * n / (e * e));
            image[i][m] = std::move(s);
        }
        if (lead[i][start] != 1) throw ComputationError("hecke_matrix: basis is not unit triangular");
    }

    for (std::size_t j = 0; j < d; ++j) {
        std::vector<Integer> rest = image[j];
        for (std::size_t i = 0; i < d; ++i) {
            const std::size_t m = i + 1;
            Integer x = rest[m];
            for (std::size_t t = m; t <= d; ++t) rest[t] -= x * lead[i][t];
            result(i, j) = std::move(x);
        }
        for (std::size_t t = 1; t <= d; ++t)
            if (rest[t] != 0) throw ComputationError("hecke_matrix: image left the span of the basis");
    }
    return result;
}

/// det(x I - A) by Berkowitz's division-free recursion on leading principal
/// submatrices.  The empty matrix gives the constant 1.
inline IntPoly berkowitz_charpoly(const IntMatrix& a) {
    const std::size_t n = a.dim();
    if (n == 0) return IntPoly{1};
    // descending coefficients of the characteristic polynomial of the
    // leading r x r block
    std::vector<Integer> vect{Integer(1), Integer(-a(0, 0))};
    for (std::size_t r = 1; r < n; ++r) {
        std::vector<Integer> toeplitz(r + 2);
        toeplitz[0] = 1;
        toeplitz[1] = -a(r, r);
        // column = A_r^i C, starting from C = a(0..r-1, r)
        std::vector<Integer> column(r);
        for (std::size_t i = 0; i < r; ++i) column[i] = a(i, r);
        for (std::size_t i = 0; i < r; ++i) {
            Integer dot = 0;
            for (std::size_t t = 0; t < r; ++t) mpz_addmul(dot.get_mpz_t(), a(r, t).get_mpz_t(), column[t].get_mpz_t());
            toeplitz[i + 2] = -dot;
            if (i + 1 == r) break;
            std::vector<Integer> next(r);
            for (std::size_t s = 0; s < r; ++s)
                for (std::size_t t = 0; t < r; ++t)
                    mpz_addmul(next[s].get_mpz_t(), a(s, t).get_mpz_t(), column[t].get_mpz_t());
            column = std::move(next);
        }
        std::vector<Integer> updated(r + 2);
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= std::min(i, r); ++j)
                mpz_addmul(updated[i].get_mpz_t(), toeplitz[i - j].get_mpz_t(), vect[j].get_mpz_t());
        vect = std::move(updated);
    }
    std::reverse(vect.begin(), vect.end());
    return IntPoly(std::move(vect));
}

/// T_{n,k}(x), the characteristic polynomial of T_n on S_k(1).
inline IntPoly charpoly(const HeckeSpec& spec, SeriesTable& table = SeriesTable::shared()) {
    return berkowitz_charpoly(hecke_matrix(spec, table));
}

} // namespace heckemod
