#pragma once

#include "heckemod/cache.hpp"
#include "heckemod/gfpoly.hpp"
#include "heckemod/hecke.hpp"
#include "heckemod/modfactor.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace heckemod {

/// Degrees of the irreducible factors of a square-free reduction mod ell,
/// descending.  By Dedekind this is the cycle type of a Frobenius element.
struct CycleType {
    std::uint64_t ell = 0;
    std::vector<int> parts;
    friend bool operator==(const CycleType&, const CycleType&) = default;
};

/// The reduction mod ell has a repeated factor; ell carries no cycle type.
struct SquarefreeFailure {
    std::uint64_t ell = 0;
    FactorMultiset factorization;
};

inline std::variant<CycleType, SquarefreeFailure> cycle_type(const IntPoly& f, std::uint64_t ell, std::uint64_t seed = 0) {
    if (!f.is_monic() || f.degree() < 1) throw std::invalid_argument("cycle_type: polynomial must be monic and nonconstant");
    FactorMultiset fm = factor(reduce_mod(f, ell), seed);
    if (!fm.squarefree()) return SquarefreeFailure{ell, std::move(fm)};
    return CycleType{ell, fm.degree_partition()};
}

/// Some power of an element of this cycle type is a transposition: exactly
/// one even part, and it equals 2.
inline bool yields_transposition(const std::vector<int>& parts) {
    int even = 0;
    bool two = false;
    for (int x : parts)
        if (x % 2 == 0) {
            ++even;
            two = (x == 2);
        }
    return even == 1 && two;
}

/// Prime q with d/2 < q < d - 2 among the parts; a suitable power of the
/// element is then a q-cycle.
inline std::optional<int> jordan_prime_cycle(const std::vector<int>& parts, int d) {
    for (int q : parts)
        if (is_prime(q) && 2 * q > d && q < d - 2) return q;
    return std::nullopt;
}

enum class Claim { Irreducible, FullSymmetricGroup, PowerOfIrreducible, LinearPower };

enum class Rule {
    IrreducibleModEll,       ///< irreducible reduction mod some ell
    DegreeSetSieve,          ///< no proper factor degree survives every ell
    Trivial,                 ///< degree 1
    SmallDegree,             ///< S_2: irreducible; S_3: irreducible + transposition
    PrimeDegree,             ///< prime degree: transitive + transposition
    JordanDoublyTransitive,  ///< transitive + (d-1)-cycle + transposition
    JordanPrimeCycle,        ///< transitive + q-cycle, d/2 < q < d-2 + transposition
    Proposition2,            ///< shape transfer from an irreducible T_{n,k}
    Corollary,               ///< dimension / residue conditions for irreducibility
    Theorem1,                ///< residue conditions mod 5 or 7 for full Galois group
    PaperRemark,             ///< T_{2,k} from the period-14 mod-13 sequence
};

inline std::string to_string(Claim c) {
    switch (c) {
        case Claim::Irreducible: return "Irreducible";
        case Claim::FullSymmetricGroup: return "FullSymmetricGroup";
        case Claim::PowerOfIrreducible: return "PowerOfIrreducible";
        case Claim::LinearPower: return "LinearPower";
    }
    return "?";
}

inline std::string to_string(Rule r) {
    switch (r) {
        case Rule::IrreducibleModEll: return "IrreducibleModEll";
        case Rule::DegreeSetSieve: return "DegreeSetSieve";
        case Rule::Trivial: return "Trivial";
        case Rule::SmallDegree: return "SmallDegree";
        case Rule::PrimeDegree: return "PrimeDegree";
        case Rule::JordanDoublyTransitive: return "JordanDoublyTransitive";
        case Rule::JordanPrimeCycle: return "JordanPrimeCycle";
        case Rule::Proposition2: return "Proposition2";
        case Rule::Corollary: return "Corollary";
        case Rule::Theorem1: return "Theorem1";
        case Rule::PaperRemark: return "PaperRemark";
    }
    return "?";
}

/// One reduction consulted by a deduction.
struct Evidence {
    std::uint64_t ell = 0;
    FactorMultiset factorization;
    std::string role;   ///< what this reduction contributes, e.g. "transposition"
};

struct Certificate {
    Claim claim = Claim::Irreducible;
    std::string subject;                 ///< e.g. "T_{2,24}" or "x^4 + 1"
    long p = 0;                          ///< Hecke index, 0 for a bare polynomial
    int k = 0;
    int degree = 0;
    Rule rule = Rule::Trivial;
    std::vector<Evidence> evidence;
    std::vector<std::string> assumptions;   ///< empty for unconditional claims
    std::vector<std::string> notes;

    bool unconditional() const { return assumptions.empty(); }
};

struct NotFound {
    std::string subject;
    std::string reason;
    std::vector<Evidence> evidence;
};

using CertifyResult = std::variant<Certificate, NotFound>;

inline std::string hecke_subject(long p, int k) { return "T_{" + std::to_string(p) + "," + std::to_string(k) + "}"; }

struct ScanOptions {
    std::uint64_t bound = 100;      ///< largest ell scanned
    std::uint64_t seed = 0;
    std::set<std::uint64_t> skip;   ///< primes excluded from the scan (e.g. the Hecke index)
};

namespace detail {

inline std::vector<std::uint64_t> scan_primes(const ScanOptions& opt) {
    std::vector<std::uint64_t> ells;
    for (std::uint64_t ell = 2; ell <= opt.bound; ++ell)
        if (is_prime(static_cast<std::int64_t>(ell)) && !opt.skip.count(ell)) ells.push_back(ell);
    return ells;
}

// proper subset sums of a partition of d, restricted to [1, d-1]
inline std::set<int> achievable_degrees(const std::vector<int>& parts, int d) {
    std::vector<char> reach(static_cast<std::size_t>(d) + 1, 0);
    reach[0] = 1;
    for (int x : parts)
        for (int s = d; s >= x; --s)
            if (reach[static_cast<std::size_t>(s - x)]) reach[static_cast<std::size_t>(s)] = 1;
    std::set<int> out;
    for (int s = 1; s < d; ++s)
        if (reach[static_cast<std::size_t>(s)]) out.insert(s);
    return out;
}

} // namespace detail

/// Irreducibility over Q from reductions mod ell <= bound: an irreducible
/// reduction settles it (IrreducibleModEll); failing that, the degrees of
/// rational factors allowed by every square-free reduction are intersected
/// and an empty intersection settles it (DegreeSetSieve).
inline CertifyResult certify_irreducible(const IntPoly& f, const std::string& subject, const ScanOptions& opt) {
    if (!f.is_monic() || f.degree() < 1) throw std::invalid_argument("certify_irreducible: polynomial must be monic and nonconstant");
    const int d = f.degree();
    std::vector<Evidence> squarefree;
    for (std::uint64_t ell : detail::scan_primes(opt)) {
        FactorMultiset fm = factor(reduce_mod(f, ell), opt.seed);
        if (!fm.squarefree()) continue;
        if (fm.factors.size() == 1) {
            Certificate c;
            c.claim = Claim::Irreducible;
            c.subject = subject;
            c.degree = d;
            c.rule = Rule::IrreducibleModEll;
            c.evidence.push_back({ell, std::move(fm), "irreducible reduction"});
            return c;
        }
        squarefree.push_back({ell, std::move(fm), "factor degrees"});
    }

    std::set<int> possible;
    for (int s = 1; s < d; ++s) possible.insert(s);
    std::vector<Evidence> used;
    for (auto& ev : squarefree) {
        const auto allowed = detail::achievable_degrees(ev.factorization.degree_partition(), d);
        std::set<int> next;
        std::set_intersection(possible.begin(), possible.end(), allowed.begin(), allowed.end(),
                              std::inserter(next, next.begin()));
        if (next.size() == possible.size()) continue;
        possible = std::move(next);
        used.push_back(ev);
        if (possible.empty()) {
            Certificate c;
            c.claim = Claim::Irreducible;
            c.subject = subject;
            c.degree = d;
            c.rule = Rule::DegreeSetSieve;
            c.evidence = std::move(used);
            return c;
        }
    }
    std::string left;
    for (int s : possible) left += (left.empty() ? "" : ",") + std::to_string(s);
    return NotFound{subject, "factor degrees {" + left + "} not excluded for ell <= " + std::to_string(opt.bound),
                    std::move(squarefree)};
}

inline CertifyResult certify_irreducible(CharpolyCache& cache, long p, int k, std::uint64_t bound = 100,
                                         std::uint64_t seed = 0) {
    if (dim_cusp(k) < 1) throw std::invalid_argument("certify_irreducible: S_k(1) is zero for k = " + std::to_string(k));
    ScanOptions opt{bound, seed, {static_cast<std::uint64_t>(p)}};
    auto r = certify_irreducible(cache.get(p, k), hecke_subject(p, k), opt);
    if (auto* c = std::get_if<Certificate>(&r)) {
        c->p = p;
        c->k = k;
    }
    return r;
}

/// Full symmetric Galois group: irreducibility (transitivity) plus a
/// transposition plus a primitivity witness, which is one of prime degree,
/// a (d-1)-cycle, or a q-cycle with q prime and d/2 < q < d - 2.
inline CertifyResult certify_full_symmetric(const IntPoly& f, const std::string& subject, const ScanOptions& opt) {
    const int d = f.degree();
    auto irr = certify_irreducible(f, subject, opt);
    if (auto* nf = std::get_if<NotFound>(&irr)) {
        nf->reason = "no irreducibility certificate: " + nf->reason;
        return irr;
    }
    Certificate c = std::get<Certificate>(irr);
    c.claim = Claim::FullSymmetricGroup;
    for (auto& ev : c.evidence) ev.role = "transitivity: " + ev.role;
    if (d == 1) {
        c.rule = Rule::Trivial;
        return c;
    }
    if (d == 2) {
        c.rule = Rule::SmallDegree;
        return c;
    }

    std::optional<Evidence> transposition, primitive;
    Rule primitive_rule = Rule::PrimeDegree;
    const bool prime_degree = is_prime(d);
    std::vector<Evidence> seen;
    for (std::uint64_t ell : detail::scan_primes(opt)) {
        auto ct = cycle_type(f, ell, opt.seed);
        auto* t = std::get_if<CycleType>(&ct);
        if (!t) continue;
        if (!transposition && yields_transposition(t->parts))
            transposition = Evidence{ell, factor(reduce_mod(f, ell), opt.seed), "transposition"};
        if (!primitive && !prime_degree && d > 3) {
            if (t->parts.size() == 2 && t->parts[0] == d - 1) {
                primitive = Evidence{ell, factor(reduce_mod(f, ell), opt.seed), "(d-1)-cycle"};
                primitive_rule = Rule::JordanDoublyTransitive;
            } else if (auto q = jordan_prime_cycle(t->parts, d)) {
                primitive = Evidence{ell, factor(reduce_mod(f, ell), opt.seed), std::to_string(*q) + "-cycle"};
                primitive_rule = Rule::JordanPrimeCycle;
            }
        }
        if (transposition && (primitive || prime_degree || d == 3)) break;
    }
    if (!transposition)
        return NotFound{subject, "no transposition among cycle types for ell <= " + std::to_string(opt.bound), c.evidence};
    c.evidence.push_back(*transposition);
    if (d == 3) {
        c.rule = Rule::SmallDegree;
        return c;
    }
    if (prime_degree) {
        c.rule = Rule::PrimeDegree;
        return c;
    }
    if (!primitive)
        return NotFound{subject, "no primitivity witness among cycle types for ell <= " + std::to_string(opt.bound),
                        c.evidence};
    c.evidence.push_back(*primitive);
    c.rule = primitive_rule;
    return c;
}

inline CertifyResult certify_full_symmetric(CharpolyCache& cache, long p, int k, std::uint64_t bound = 200,
                                            std::uint64_t seed = 0) {
    if (dim_cusp(k) < 1) throw std::invalid_argument("certify_full_symmetric: S_k(1) is zero for k = " + std::to_string(k));
    ScanOptions opt{bound, seed, {static_cast<std::uint64_t>(p)}};
    auto r = certify_full_symmetric(cache.get(p, k), hecke_subject(p, k), opt);
    if (auto* c = std::get_if<Certificate>(&r)) {
        c->p = p;
        c->k = k;
    }
    return r;
}

/// What the mod-ell shapes of T_{m,k} leave of the two alternatives
/// T_{m,k} = f^r (f irreducible) and T_{m,k} = (x - a)^d.
struct ShapeVerdict {
    int degree = 0;
    int multiplicity_gcd = 0;               ///< gcd of d and every factor multiplicity
    std::vector<int> surviving_powers;      ///< r > 1 with r | d not yet excluded
    bool power_excluded = false;            ///< r = 1 forced
    bool linear_power_excluded = false;     ///< some reduction is not (x - c)^d

    /// Irreducible under "T_{n,k} irreducible for some n".
    bool irreducible_under_assumption() const { return power_excluded; }
    /// Irreducible with full group under "T_{n,k} has full group for some n".
    bool full_galois_under_assumption() const { return linear_power_excluded; }

    std::string summary() const {
        if (linear_power_excluded && power_excluded) return "IrreducibleFullGalois";
        if (linear_power_excluded) return "FullGalois";
        if (power_excluded) return "Irreducible";
        return "Inconclusive";
    }
};

inline ShapeVerdict prop2_shape_filter(int d, const std::vector<FactorMultiset>& evidence) {
    ShapeVerdict v;
    v.degree = d;
    if (d <= 1) {
        v.multiplicity_gcd = 1;
        v.power_excluded = true;
        v.linear_power_excluded = true;
        return v;
    }
    int g = d;
    for (const auto& fm : evidence) {
        for (const auto& fac : fm.factors) g = std::gcd(g, fac.multiplicity);
        const bool single_linear = fm.factors.size() == 1 && fm.factors[0].poly.degree() == 1;
        if (!single_linear) v.linear_power_excluded = true;
    }
    v.multiplicity_gcd = g;
    for (int r = 2; r <= d; ++r)
        if (d % r == 0 && g % r == 0) v.surviving_powers.push_back(r);
    v.power_excluded = v.surviving_powers.empty();
    return v;
}

inline bool plus_minus_one(long p, long m) {
    const long r = ((p % m) + m) % m;
    return r == 1 || r == m - 1;
}

/// The residue hypothesis of the transfer theorem: p != +-1 mod 5 or p != +-1 mod 7.
inline bool theorem1_applicable(long p) { return !plus_minus_one(p, 5) || !plus_minus_one(p, 7); }

/// Mod-5 / mod-7 evidence behind a transfer verdict for T_{p,k}.
struct TableEvidence {
    std::uint64_t ell = 0;
    long row = 0;                  ///< table row label: smallest prime = p mod ell
    int kclass = 0;
    std::vector<Residue> predicted;  ///< a_1..a_{d_k} from the table row
    FactorMultiset direct;           ///< factorization of T_{p,k} mod ell computed directly
};

struct TransferVerdict {
    bool applicable = false;
    std::string detail;
    std::vector<TableEvidence> evidence;
    ShapeVerdict shape;
    std::optional<Certificate> certificate;
};

namespace detail {

inline long row_label(std::uint64_t ell, long p) {
    for (long r : table_rows(ell))
        if ((r - p) % static_cast<long>(ell) == 0) return r;
    throw std::invalid_argument("row_label: p divisible by ell");
}

// First d terms of the periodic table sequence for (row of p, k mod (ell-1)),
// checked against the direct factorization of T_{p,k} mod ell.
inline TableEvidence table_evidence(CharpolyCache& cache, std::uint64_t ell, long p, int k) {
    TableEvidence ev;
    ev.ell = ell;
    ev.row = row_label(ell, p);
    ev.kclass = k % static_cast<int>(ell - 1);
    const int d = dim_cusp(k);
    const auto seq = root_sequence(cache, ev.row, ell, ev.kclass);
    for (int j = 0; j < d; ++j) {
        const auto idx = static_cast<std::size_t>(j);
        ev.predicted.push_back(idx < seq.terms.size() ? seq.terms[idx] : seq.terms[idx % *seq.period]);
    }
    ev.direct = factor(charpoly_mod(cache, p, k, ell));
    std::vector<Residue> direct_roots;
    for (const auto& fac : ev.direct.factors)
        if (fac.poly.degree() == 1)
            direct_roots.insert(direct_roots.end(), static_cast<std::size_t>(fac.multiplicity), (ell - fac.poly[0]) % ell);
    std::sort(direct_roots.begin(), direct_roots.end());
    auto predicted = ev.predicted;
    std::sort(predicted.begin(), predicted.end());
    if (predicted != direct_roots)
        throw FalsificationError("T_{" + std::to_string(p) + "," + std::to_string(k) + "} mod " + std::to_string(ell) +
                                 " disagrees with the table row of p = " + std::to_string(ev.row));
    return ev;
}

inline std::string hypothesis_text(int k, bool full) {
    return "T_{n," + std::to_string(k) + "} is irreducible" + (full ? " with full Galois group" : "") + " for some n";
}

} // namespace detail

/// Transfer of "irreducible with full Galois group" to T_{p,k}.  Applicable
/// when p != +-1 mod 5 or p != +-1 mod 7; the evidence is the table row at
/// an ell in {5, 7} where p is not +-1, which must show two distinct roots
/// among a_1..a_{d_k}.  With `hypothesis` holding an unconditional
/// certificate for some T_{n,k}, the resulting certificate is unconditional.
inline TransferVerdict theorem1_conclusion(CharpolyCache& cache, long p, int k,
                                           const std::optional<Certificate>& hypothesis = std::nullopt) {
    if (!is_prime(p)) throw std::invalid_argument("theorem1_conclusion: p must be prime");
    TransferVerdict v;
    const int d = dim_cusp(k);
    if (!theorem1_applicable(p)) {
        v.detail = std::to_string(p) + " = +-1 mod 5 and = +-1 mod 7";
        return v;
    }
    v.applicable = true;
    std::uint64_t ell = 0;
    if (p != 5 && !plus_minus_one(p, 5))
        ell = 5;
    else
        ell = 7;
    if (d >= 1) {
        v.evidence.push_back(detail::table_evidence(cache, ell, p, k));
        v.shape = prop2_shape_filter(d, {v.evidence.back().direct});
        std::set<Residue> distinct(v.evidence.back().predicted.begin(), v.evidence.back().predicted.end());
        if (d >= 2 && distinct.size() < 2)
            throw FalsificationError("table row " + std::to_string(v.evidence.back().row) + " mod " + std::to_string(ell) +
                                     " shows a single root for " + hecke_subject(p, k));
        if (!v.shape.full_galois_under_assumption())
            throw FalsificationError("mod " + std::to_string(ell) + " shape does not exclude (x-a)^d for " + hecke_subject(p, k));
    } else {
        v.shape = prop2_shape_filter(0, {});
    }
    v.detail = "p = " + std::to_string(p) + " is not +-1 mod " + std::to_string(ell);

    Certificate c;
    c.claim = Claim::FullSymmetricGroup;
    c.subject = hecke_subject(p, k);
    c.p = p;
    c.k = k;
    c.degree = d;
    c.rule = Rule::Theorem1;
    for (const auto& ev : v.evidence) c.evidence.push_back({ev.ell, ev.direct, "distinct roots mod " + std::to_string(ev.ell)});
    if (hypothesis && hypothesis->unconditional() && hypothesis->claim == Claim::FullSymmetricGroup && hypothesis->k == k) {
        c.notes.push_back("hypothesis discharged by " + to_string(hypothesis->rule) + " certificate for " + hypothesis->subject);
        for (const auto& ev : hypothesis->evidence) c.evidence.push_back({ev.ell, ev.factorization, hypothesis->subject + " " + ev.role});
    } else {
        c.assumptions.push_back(detail::hypothesis_text(k, true));
    }
    v.certificate = std::move(c);
    return v;
}

/// Irreducibility transfer: case (i) d_k odd and p != +-1 mod 5 or mod 7;
/// case (ii) d_k = 2 mod 4 and p = 3 or 5 mod 7.  The multiplicity gcd of the
/// mod-5 and mod-7 reductions must force r = 1.
inline TransferVerdict corollary_conclusion(CharpolyCache& cache, long p, int k,
                                            const std::optional<Certificate>& hypothesis = std::nullopt) {
    if (!is_prime(p)) throw std::invalid_argument("corollary_conclusion: p must be prime");
    TransferVerdict v;
    const int d = dim_cusp(k);
    const long r7 = ((p % 7) + 7) % 7;
    const bool case1 = (d % 2 == 1) && theorem1_applicable(p);
    const bool case2 = (d % 4 == 2) && (r7 == 3 || r7 == 5);
    if (!case1 && !case2) {
        v.detail = "d_k = " + std::to_string(d) + " and p = " + std::to_string(p) + " meet neither case";
        return v;
    }
    v.applicable = true;
    v.detail = case1 ? "case (i): d_k odd" : "case (ii): d_k = 2 mod 4, p = 3 or 5 mod 7";
    std::vector<FactorMultiset> shapes;
    for (std::uint64_t ell : {std::uint64_t{5}, std::uint64_t{7}}) {
        if (static_cast<std::uint64_t>(p) == ell) continue;
        if (case2 && !case1 && ell == 5) continue;
        if (case1 && plus_minus_one(p, static_cast<long>(ell))) continue;
        v.evidence.push_back(detail::table_evidence(cache, ell, p, k));
        shapes.push_back(v.evidence.back().direct);
    }
    v.shape = prop2_shape_filter(d, shapes);
    if (!v.shape.irreducible_under_assumption())
        throw FalsificationError("root multiplicities do not force r = 1 for " + hecke_subject(p, k));

    Certificate c;
    c.claim = Claim::Irreducible;
    c.subject = hecke_subject(p, k);
    c.p = p;
    c.k = k;
    c.degree = d;
    c.rule = Rule::Corollary;
    for (const auto& ev : v.evidence) c.evidence.push_back({ev.ell, ev.direct, "root multiplicities"});
    if (hypothesis && hypothesis->unconditional() && hypothesis->k == k) {
        c.notes.push_back("hypothesis discharged by " + to_string(hypothesis->rule) + " certificate for " + hypothesis->subject);
    } else {
        c.assumptions.push_back(detail::hypothesis_text(k, false));
    }
    v.certificate = std::move(c);
    return v;
}

/// T_{2,k} irreducible under "T_{n,k} irreducible for some n" when d_k is not
/// a multiple of 14, from the mod-13 period-14 sequence together with the
/// mod-5 and mod-7 shapes.  Flagged as a remark-level rule.
inline TransferVerdict paper_remark_conclusion(CharpolyCache& cache, int k) {
    TransferVerdict v;
    const int d = dim_cusp(k);
    if (d < 1 || d % 14 == 0) {
        v.detail = "d_k = " + std::to_string(d) + " is a multiple of 14";
        return v;
    }
    v.applicable = true;
    std::vector<FactorMultiset> shapes;
    for (std::uint64_t ell : {std::uint64_t{5}, std::uint64_t{7}, std::uint64_t{13}}) {
        TableEvidence ev;
        ev.ell = ell;
        ev.row = 2;
        ev.kclass = k % static_cast<int>(ell - 1);
        ev.direct = factor(charpoly_mod(cache, 2, k, ell));
        shapes.push_back(ev.direct);
        v.evidence.push_back(std::move(ev));
    }
    v.shape = prop2_shape_filter(d, shapes);
    v.detail = v.shape.irreducible_under_assumption() ? "root multiplicities force r = 1"
                                                      : "root multiplicities leave r > 1 open";
    if (v.shape.irreducible_under_assumption()) {
        Certificate c;
        c.claim = Claim::Irreducible;
        c.subject = hecke_subject(2, k);
        c.p = 2;
        c.k = k;
        c.degree = d;
        c.rule = Rule::PaperRemark;
        for (const auto& ev : v.evidence) c.evidence.push_back({ev.ell, ev.direct, "root multiplicities"});
        c.assumptions.push_back(detail::hypothesis_text(k, false));
        c.notes.push_back("remark-level rule, not a theorem");
        v.certificate = std::move(c);
    }
    return v;
}

} // namespace heckemod
