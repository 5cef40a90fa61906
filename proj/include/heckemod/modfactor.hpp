#pragma once

#include "heckemod/cache.hpp"
#include "heckemod/gfpoly.hpp"
#include "heckemod/hecke.hpp"
#include "heckemod/integer.hpp"
#include "heckemod/parallel.hpp"
#include "heckemod/traceformula.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heckemod {

using Residue = FpPoly::Residue;

/// T_{p,k+ell-1}(x) mod ell was not divisible by T_{p,k}(x) mod ell.
class Lemma1Violation : public FalsificationError {
public:
    Lemma1Violation(long p, std::uint64_t ell, int k, const InexactDivision& e)
        : FalsificationError("divisibility T_{" + std::to_string(p) + "," + std::to_string(k) + "} | T_{" +
                             std::to_string(p) + "," + std::to_string(k + static_cast<int>(ell) - 1) + "} mod " +
                             std::to_string(ell) + " failed: remainder " + e.remainder().to_string()),
          remainder_(e.remainder()) {}

    const FpPoly& remainder() const { return remainder_; }

private:
    FpPoly remainder_;
};

/// T_{p,k}(x) mod ell.
inline FpPoly charpoly_mod(CharpolyCache& cache, long p, int k, std::uint64_t ell) {
    if (!is_prime(p)) throw std::invalid_argument("charpoly_mod: p = " + std::to_string(p) + " is not prime");
    if (!is_prime(static_cast<std::int64_t>(ell))) throw std::invalid_argument("charpoly_mod: ell must be prime");
    if (static_cast<std::uint64_t>(p) == ell) throw std::invalid_argument("charpoly_mod: p and ell must be distinct");
    if (k % 2 != 0) throw std::invalid_argument("charpoly_mod: weight must be even");
    return reduce_mod(cache.get(p, k), ell);
}

/// Exact quotient T_{p,k+ell-1}(x) / T_{p,k}(x) over F_ell.
inline FpPoly lemma1_check(CharpolyCache& cache, long p, std::uint64_t ell, int k) {
    if (ell < 5) throw std::invalid_argument("lemma1_check: ell must be at least 5");
    if (k < 12 || k % 2 != 0) throw std::invalid_argument("lemma1_check: weight must be even and at least 12");
    const FpPoly lower = charpoly_mod(cache, p, k, ell);
    const FpPoly upper = charpoly_mod(cache, p, k + static_cast<int>(ell) - 1, ell);
    try {
        return divide_exact(upper, lower);
    } catch (const InexactDivision& e) {
        throw Lemma1Violation(p, ell, k, e);
    }
}

/// Smallest P with 2P <= size and v[i] = v[i + P] throughout, capped at
/// max_period.
template <typename T>
std::optional<std::size_t> detect_period(const std::vector<T>& v, std::size_t max_period) {
    for (std::size_t period = 1; 2 * period <= v.size() && period <= max_period; ++period) {
        bool ok = true;
        for (std::size_t i = 0; i + period < v.size() && ok; ++i) ok = v[i] == v[i + period];
        if (ok) return period;
    }
    return std::nullopt;
}

/// Period search cutoff, in dimension increments.
inline std::size_t period_search_cutoff(std::uint64_t ell) { return 4 * (ell * ell - 1); }

/// Smallest even weight >= 12 congruent to kclass mod (ell - 1).
inline int first_weight(std::uint64_t ell, int kclass) {
    const int step = static_cast<int>(ell) - 1;
    int k = kclass;
    while (k < 12) k += step;
    return k;
}

/// Weights kclass, kclass + (ell-1), ... from first_weight up to max_weight.
inline std::vector<int> class_weights(std::uint64_t ell, int kclass, int max_weight) {
    std::vector<int> ks;
    for (int k = first_weight(ell, kclass); k <= max_weight; k += static_cast<int>(ell) - 1) ks.push_back(k);
    return ks;
}

/// The successive factors f_j = T_{p,k0+j(ell-1)} / T_{p,k0+(j-1)(ell-1)} mod ell.
struct QuotientSequence {
    long p = 0;
    std::uint64_t ell = 0;
    int kclass = 0;
    int k0 = 0;
    FpPoly head;                    ///< T_{p,k0} mod ell
    std::vector<FpPoly> terms;      ///< f_1, f_2, ...
    std::optional<std::size_t> period;
};

inline QuotientSequence quotient_sequence(CharpolyCache& cache, long p, std::uint64_t ell, int kclass, int max_weight) {
    QuotientSequence seq;
    seq.p = p;
    seq.ell = ell;
    seq.kclass = kclass;
    seq.k0 = first_weight(ell, kclass);
    const auto ks = class_weights(ell, kclass, max_weight);
    if (ks.empty()) throw std::invalid_argument("quotient_sequence: empty weight window");
    seq.head = charpoly_mod(cache, p, ks.front(), ell);
    for (std::size_t j = 1; j < ks.size(); ++j) {
        FpPoly f = lemma1_check(cache, p, ell, ks[j - 1]);
        const int jump = dim_cusp(ks[j]) - dim_cusp(ks[j - 1]);
        if (f.degree() != jump) throw ComputationError("quotient_sequence: quotient degree does not match dimension jump");
        seq.terms.push_back(std::move(f));
    }
    seq.period = detect_period(seq.terms, period_search_cutoff(ell));
    return seq;
}

/// Periodic sequence {a_j} with T_{p,k} = prod_{j <= d_k} (x - a_j) mod ell
/// for every weight k = kclass mod (ell - 1) in the verified window.
struct RootSequence {
    long p = 0;
    std::uint64_t ell = 0;
    int kclass = 0;
    std::vector<Residue> terms;        ///< a_1, a_2, ... as observed in the window
    std::optional<std::size_t> period;
    int verified_up_to = 0;            ///< largest weight checked

    /// One period of the sequence (all observed terms when no period was found).
    std::vector<Residue> one_period() const {
        if (!period) return terms;
        return {terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(*period)};
    }
};

class WindowTooShort : public ComputationError {
public:
    using ComputationError::ComputationError;
};

/// Default window: two full periods' worth of weights in each class, i.e.
/// up to 2*12*(ell-1) + kclass for ell in {5, 7}, and for ell = 13 the first
/// weight whose dimension reaches 28 (14 when single_period is set).
inline int default_max_weight(std::uint64_t ell, int kclass, bool single_period = false) {
    if (ell == 13) {
        const int want = single_period ? 14 : 28;
        int k = first_weight(ell, kclass);
        while (dim_cusp(k) < want) k += 12;
        return k;
    }
    return 2 * 12 * static_cast<int>(ell - 1) + kclass;
}

/// Walks the weights of one class mod (ell - 1) in ascending order, checks
/// that every T_{p,k} splits into linear factors mod ell and that each root
/// multiset extends the previous one by exactly the dimension jump, and
/// records the new roots in order.  With require_period set, the minimal
/// period must be confirmed by two consecutive full periods.
inline RootSequence root_sequence(CharpolyCache& cache, long p, std::uint64_t ell, int kclass, int max_weight = 0,
                                  bool require_period = true) {
    if (ell != 5 && ell != 7 && ell != 13)
        throw std::invalid_argument("root_sequence: ell must be 5, 7 or 13");
    if (static_cast<std::uint64_t>(p) == ell) throw std::invalid_argument("root_sequence: p and ell must be distinct");
    if (kclass < 0 || kclass >= static_cast<int>(ell) - 1 || kclass % 2 != 0)
        throw std::invalid_argument("root_sequence: kclass must be even and below ell - 1");
    if (max_weight <= 0) max_weight = default_max_weight(ell, kclass);

    RootSequence seq;
    seq.p = p;
    seq.ell = ell;
    seq.kclass = kclass;
    std::multiset<Residue> previous;
    int previous_dim = 0;
    for (int k : class_weights(ell, kclass, max_weight)) {
        const int d = dim_cusp(k);
        const FpPoly f = charpoly_mod(cache, p, k, ell);
        const FactorMultiset fm = factor(f);
        std::multiset<Residue> current;
        for (const auto& fac : fm.factors) {
            if (fac.poly.degree() != 1)
                throw FalsificationError("T_{" + std::to_string(p) + "," + std::to_string(k) + "} mod " +
                                         std::to_string(ell) + " does not split: factor " + fac.poly.to_string());
            for (int i = 0; i < fac.multiplicity; ++i) current.insert((ell - fac.poly[0]) % ell);
        }
        std::multiset<Residue> fresh = current;
        for (Residue r : previous) {
            auto it = fresh.find(r);
            if (it == fresh.end())
                throw FalsificationError("roots of T_{" + std::to_string(p) + "," + std::to_string(k) + "} mod " +
                                         std::to_string(ell) + " do not contain those of the previous weight");
            fresh.erase(it);
        }
        if (static_cast<int>(fresh.size()) != d - previous_dim || d - previous_dim > 1)
            throw FalsificationError("T_{" + std::to_string(p) + "," + std::to_string(k) + "} mod " +
                                     std::to_string(ell) + " adds " + std::to_string(fresh.size()) +
                                     " roots for a dimension jump of " + std::to_string(d - previous_dim));
        seq.terms.insert(seq.terms.end(), fresh.begin(), fresh.end());
        previous = std::move(current);
        previous_dim = d;
        seq.verified_up_to = k;
    }
    seq.period = detect_period(seq.terms, period_search_cutoff(ell));
    if (require_period && !seq.period)
        throw WindowTooShort("root_sequence: no period confirmed by two full repetitions among " +
                             std::to_string(seq.terms.size()) + " terms (p=" + std::to_string(p) +
                             ", ell=" + std::to_string(ell) + ", kclass=" + std::to_string(kclass) +
                             "); raise the weight bound");
    return seq;
}

/// Row labels of the mod-5 and mod-7 tables in display order:
/// the smallest prime of each nonzero residue class.
inline std::vector<long> table_rows(std::uint64_t ell) {
    if (ell == 5) return {11, 2, 3, 19};
    if (ell == 7) return {29, 2, 3, 11, 5, 13};
    if (ell == 13) return {2};
    throw std::invalid_argument("table_rows: ell must be 5, 7 or 13");
}

inline std::vector<int> table_columns(std::uint64_t ell) {
    std::vector<int> cols;
    for (int c = 0; c < static_cast<int>(ell) - 1; c += 2) cols.push_back(c);
    return cols;
}

struct FactorTable {
    std::uint64_t ell = 0;
    std::vector<long> rows;             ///< prime labelling each row
    std::vector<int> columns;           ///< k mod (ell - 1)
    std::vector<std::vector<RootSequence>> cells;  ///< cells[row][column]
};

/// Warms the cache for every (p, k) a table needs, on `jobs` threads.
inline void prefetch(CharpolyCache& cache, const std::vector<std::pair<long, int>>& tasks, unsigned jobs) {
    parallel_for(tasks.size(), jobs, [&](std::size_t i) { cache.get(tasks[i].first, tasks[i].second); });
}

/// Root-sequence table for ell in {5, 7} (rows = residue classes of p) or
/// ell = 13 (single row p = 2, one cell per k mod 12).
inline FactorTable factor_table(CharpolyCache& cache, std::uint64_t ell, int max_weight = 0, unsigned jobs = 1,
                                bool single_period = false) {
    FactorTable t;
    t.ell = ell;
    t.rows = table_rows(ell);
    t.columns = table_columns(ell);
    auto window = [&](int kclass) {
        return max_weight > 0 ? max_weight : default_max_weight(ell, kclass, single_period);
    };
    std::vector<std::pair<long, int>> tasks;
    for (long p : t.rows)
        for (int c : t.columns)
            for (int k : class_weights(ell, c, window(c))) tasks.emplace_back(p, k);
    prefetch(cache, tasks, jobs);
    for (long p : t.rows) {
        std::vector<RootSequence> row;
        for (int c : t.columns) row.push_back(root_sequence(cache, p, ell, c, window(c), !single_period));
        t.cells.push_back(std::move(row));
    }
    return t;
}

inline FactorTable table_theorem2a(CharpolyCache& cache, std::uint64_t ell, int max_weight = 0, unsigned jobs = 1) {
    if (ell != 5 && ell != 7) throw std::invalid_argument("table_theorem2a: ell must be 5 or 7");
    return factor_table(cache, ell, max_weight, jobs);
}

inline FactorTable table_theorem2b(CharpolyCache& cache, int max_weight = 0, unsigned jobs = 1,
                                   bool single_period = false) {
    return factor_table(cache, 13, max_weight, jobs, single_period);
}

/// Closed forms for tiny ell: x^{d_k} mod 2 for odd p; mod 3, (x - 2)^{d_k}
/// when p = 1 mod 3 and x^{d_k} when p = 2 mod 3.
inline FpPoly small_ell_rule(long p, int k, std::uint64_t ell) {
    if (ell != 2 && ell != 3) throw std::invalid_argument("small_ell_rule: ell must be 2 or 3");
    if (ell == 2 && p % 2 == 0) throw std::invalid_argument("small_ell_rule: p must be odd for ell = 2");
    if (ell == 3 && p % 3 == 0) throw std::invalid_argument("small_ell_rule: p must differ from 3 for ell = 3");
    const int d = dim_cusp(k);
    const Residue root = (ell == 3 && p % 3 == 1) ? 2 : 0;
    FpPoly linear(ell, {(ell - root) % ell, 1});
    FpPoly r = FpPoly::constant(ell, 1);
    for (int i = 0; i < d; ++i) r = r * linear;
    return r;
}

/// T_{p,k} = T_{q,k} mod ell for p = q mod ell.
inline bool congruence_class_invariance(CharpolyCache& cache, long p, long q, std::uint64_t ell, int k) {
    if ((p - q) % static_cast<long>(ell) != 0) throw std::invalid_argument("congruence_class_invariance: p != q mod ell");
    return charpoly_mod(cache, p, k, ell) == charpoly_mod(cache, q, k, ell);
}

/// { p^m + p^n mod ell : 0 <= m <= n < ell - 1 }.
inline std::set<Residue> serre_values(long p, std::uint64_t ell) {
    std::vector<Residue> powers;
    Residue x = 1;
    const auto pr = static_cast<Residue>(((p % static_cast<long>(ell)) + static_cast<long>(ell)) % static_cast<long>(ell));
    for (std::uint64_t i = 0; i + 1 < ell; ++i) {
        powers.push_back(x);
        x = x * pr % ell;
    }
    std::set<Residue> values;
    for (std::size_t m = 0; m < powers.size(); ++m)
        for (std::size_t n = m; n < powers.size(); ++n) values.insert((powers[m] + powers[n]) % ell);
    return values;
}

/// Every root of T_{p,k} mod ell lies in serre_values(p, ell).
inline bool serre_classification_check(CharpolyCache& cache, std::uint64_t ell, long p, int k) {
    if (ell != 3 && ell != 5 && ell != 7) throw std::invalid_argument("serre_classification_check: ell must be 3, 5 or 7");
    const auto allowed = serre_values(p, ell);
    const FpPoly f = charpoly_mod(cache, p, k, ell);
    if (f.degree() == 0) return true;
    for (Residue r : roots(f))
        if (!allowed.count(r)) return false;
    return true;
}

} // namespace heckemod
