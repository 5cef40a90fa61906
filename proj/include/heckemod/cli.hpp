#pragma once

#include "heckemod/cache.hpp"
#include "heckemod/galois.hpp"
#include "heckemod/modfactor.hpp"
#include "heckemod/report.hpp"
#include "heckemod/traceformula.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace heckemod::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kComputation = 2, kFalsified = 3 };

struct RunConfig {
    std::string cache_dir;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::string format = "text";
};

namespace detail {

using nlohmann::json;
using report::csv_row;

inline void require_prime(long p, const std::string& what) {
    if (!is_prime(p)) throw std::invalid_argument(what + " = " + std::to_string(p) + " is not prime");
}

inline void require_even(int k) {
    if (k % 2 != 0) throw std::invalid_argument("weight " + std::to_string(k) + " is odd");
    if (k < 0) throw std::invalid_argument("weight must be nonnegative");
}

inline void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

struct CharpolyArgs {
    long p = 0;
    int k = 0;
    long ell = 0;
};

inline int cmd_charpoly(CharpolyCache& cache, const RunConfig& cfg, const CharpolyArgs& a, std::ostream& out) {
    require_prime(a.p, "prime");
    require_even(a.k);
    if (a.ell != 0) {
        require_prime(a.ell, "ell");
        if (a.ell == a.p) throw std::invalid_argument("prime and ell must be distinct");
    }
    const IntPoly f = cache.get(a.p, a.k);
    const int d = dim_cusp(a.k);
    std::optional<FactorMultiset> fm;
    if (a.ell != 0) fm = factor(reduce_mod(f, static_cast<std::uint64_t>(a.ell)), cfg.seed);

    if (cfg.format == "json") {
        json j = {{"command", "charpoly"}, {"p", a.p}, {"k", a.k}, {"dim", d}, {"coeffs", report::to_json(f)},
                  {"text", f.to_string()}};
        j["ell"] = a.ell ? json(a.ell) : json(nullptr);
        j["factorization"] = fm ? report::to_json(*fm) : json(nullptr);
        emit_json(out, j);
    } else if (cfg.format == "csv") {
        out << csv_row({"p", "k", "dim", "ell", "coeffs", "factorization"}) << "\n";
        std::string coeffs;
        for (const auto& c : f.coeffs()) coeffs += (coeffs.empty() ? "" : " ") + to_decimal(c);
        out << csv_row({std::to_string(a.p), std::to_string(a.k), std::to_string(d), a.ell ? std::to_string(a.ell) : "",
                        coeffs, fm ? fm->to_string() : ""})
            << "\n";
    } else {
        out << f.to_string() << (d == 0 ? " (dim 0)" : "") << "\n";
        if (fm) out << fm->to_string() << " over F_" << a.ell << "\n";
    }
    return kSuccess;
}

struct TableArgs {
    long ell = 0;
    int max_weight = 0;
    bool single_period = false;
};

inline int cmd_table(CharpolyCache& cache, const RunConfig& cfg, const TableArgs& a, std::ostream& out) {
    if (a.ell != 5 && a.ell != 7 && a.ell != 13) throw std::invalid_argument("--ell must be 5, 7 or 13");
    const auto ell = static_cast<std::uint64_t>(a.ell);
    if (a.single_period && ell != 13) throw std::invalid_argument("--single-period applies to --ell 13 only");
    const FactorTable t = factor_table(cache, ell, a.max_weight, cfg.jobs, a.single_period);
    const std::string sep = report::table_separator(ell);
    const int step = static_cast<int>(ell) - 1;

    if (cfg.format == "json") {
        json rows = json::array();
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            json cells = json::array();
            for (const auto& cell : t.cells[r]) cells.push_back(report::to_json(cell));
            rows.push_back({{"p", t.rows[r]}, {"residue", t.rows[r] % a.ell}, {"cells", cells}});
        }
        emit_json(out, {{"command", "table"}, {"ell", a.ell}, {"columns", t.columns}, {"rows", rows},
                        {"single_period", a.single_period}});
    } else if (cfg.format == "csv") {
        out << csv_row({"ell", "row", "residue", "kclass", "period", "one_period", "verified_up_to"}) << "\n";
        for (std::size_t r = 0; r < t.rows.size(); ++r)
            for (const auto& cell : t.cells[r])
                out << csv_row({std::to_string(a.ell), std::to_string(t.rows[r]), std::to_string(t.rows[r] % a.ell),
                                std::to_string(cell.kclass), cell.period ? std::to_string(*cell.period) : "",
                                report::tuple_text(cell.one_period(), sep), std::to_string(cell.verified_up_to)})
                    << "\n";
    } else if (ell == 13) {
        out << "T_{2,k}(x) = prod_{j<=d_k} (x - a_j) mod 13; one row per k mod 12\n";
        int verified = 0;
        for (const auto& cell : t.cells[0]) {
            std::ostringstream label;
            label << cell.kclass << " mod 12";
            out << std::left << std::setw(12) << label.str() << report::tuple_text(cell.one_period(), sep);
            if (cell.period) out << "  period " << *cell.period;
            out << "\n";
            verified = std::max(verified, cell.verified_up_to);
        }
        out << "verified through weight " << verified << "\n";
    } else {
        out << "T_{p,k}(x) = prod_{j<=d_k} (x - a_j) mod " << ell << "; one period of a_j per cell\n";
        out << "rows: smallest prime in each class of p mod " << ell << "; columns: k mod " << step << "\n";
        out << std::left << std::setw(8) << "p";
        for (int c : t.columns) out << std::setw(14) << ("k=" + std::to_string(c));
        out << "\n";
        int verified = 0;
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            out << std::setw(8) << t.rows[r];
            for (const auto& cell : t.cells[r]) {
                out << std::setw(14) << report::tuple_text(cell.one_period(), sep);
                verified = std::max(verified, cell.verified_up_to);
            }
            out << "\n";
        }
        out << "verified through weight " << verified << "\n";
    }
    return kSuccess;
}

inline int cmd_trace(const RunConfig& cfg, long n, int k, std::ostream& out) {
    if (n < 1) throw std::invalid_argument("--n must be positive");
    if (k < 4 || k % 2 != 0) throw std::invalid_argument("--weight must be even and at least 4");
    const Integer t = trace(n, k);
    if (cfg.format == "json")
        emit_json(out, {{"command", "trace"}, {"n", n}, {"k", k}, {"trace", to_decimal(t)}});
    else if (cfg.format == "csv")
        out << csv_row({"n", "k", "trace"}) << "\n" << csv_row({std::to_string(n), std::to_string(k), to_decimal(t)}) << "\n";
    else
        out << to_decimal(t) << "\n";
    return kSuccess;
}

struct PeriodArgs {
    long p = 0;
    long ell = 0;
    int kclass = 0;
    int max_weight = 0;
};

inline int cmd_period(CharpolyCache& cache, const RunConfig& cfg, const PeriodArgs& a, std::ostream& out) {
    require_prime(a.p, "prime");
    if (a.ell != 5 && a.ell != 7 && a.ell != 13) throw std::invalid_argument("--ell must be 5, 7 or 13");
    if (a.p == a.ell) throw std::invalid_argument("prime and ell must be distinct");
    const auto ell = static_cast<std::uint64_t>(a.ell);
    const int mw = a.max_weight > 0 ? a.max_weight : default_max_weight(ell, a.kclass);
    std::vector<std::pair<long, int>> tasks;
    for (int k : class_weights(ell, a.kclass, mw)) tasks.emplace_back(a.p, k);
    prefetch(cache, tasks, cfg.jobs);
    const RootSequence seq = root_sequence(cache, a.p, ell, a.kclass, mw);
    const int trace_period = trace_mod_periodicity(a.p, a.ell, a.kclass);
    const std::string sep = report::table_separator(ell);

    if (cfg.format == "json") {
        json j = report::to_json(seq);
        j["command"] = "period";
        j["trace_period"] = trace_period;
        j["trace_period_bound"] = trace_period_bound(a.p, a.ell);
        emit_json(out, j);
    } else if (cfg.format == "csv") {
        out << csv_row({"p", "ell", "kclass", "period", "one_period", "trace_period", "verified_up_to"}) << "\n";
        out << csv_row({std::to_string(a.p), std::to_string(a.ell), std::to_string(a.kclass), std::to_string(*seq.period),
                        report::tuple_text(seq.one_period(), sep), std::to_string(trace_period),
                        std::to_string(seq.verified_up_to)})
            << "\n";
    } else {
        out << *seq.period << "\n";
        out << "one period of a_j: " << report::tuple_text(seq.one_period(), sep) << "\n";
        out << "terms observed: " << seq.terms.size() << " (weights through " << seq.verified_up_to << ")\n";
        out << "trace(" << a.p << ", k) mod " << a.ell << " period in k: " << trace_period << "\n";
    }
    return kSuccess;
}

struct CertifyArgs {
    long p = 0;
    int k = 0;
    std::uint64_t bound = 200;
};

inline int cmd_certify(CharpolyCache& cache, const RunConfig& cfg, const CertifyArgs& a, std::ostream& out) {
    require_prime(a.p, "prime");
    require_even(a.k);
    if (dim_cusp(a.k) == 0) throw std::invalid_argument("S_k(1) is zero for k = " + std::to_string(a.k));
    const auto irr = certify_irreducible(cache, a.p, a.k, a.bound, cfg.seed);
    const auto full = certify_full_symmetric(cache, a.p, a.k, a.bound, cfg.seed);
    const bool ok = std::holds_alternative<Certificate>(irr) && std::holds_alternative<Certificate>(full);

    if (cfg.format == "json") {
        emit_json(out, {{"command", "certify"}, {"p", a.p}, {"k", a.k}, {"bound", a.bound},
                        {"irreducible", report::to_json(irr)}, {"full_symmetric", report::to_json(full)}});
    } else if (cfg.format == "csv") {
        out << csv_row({"subject", "claim", "status", "rule", "ells"}) << "\n";
        for (const auto* r : {&irr, &full}) {
            const bool is_irr = r == &irr;
            std::string status = "NotFound", rule, ells;
            if (const auto* c = std::get_if<Certificate>(r)) {
                status = "Certified";
                rule = to_string(c->rule);
                for (const auto& e : c->evidence) ells += (ells.empty() ? "" : " ") + std::to_string(e.ell);
            }
            out << csv_row({hecke_subject(a.p, a.k), is_irr ? "Irreducible" : "FullSymmetricGroup", status, rule, ells}) << "\n";
        }
    } else {
        for (const auto* r : {&irr, &full}) {
            if (const auto* c = std::get_if<Certificate>(r))
                out << report::certificate_text(*c);
            else
                out << std::get<NotFound>(*r).subject << ": not certified: " << std::get<NotFound>(*r).reason << "\n";
        }
    }
    return ok ? kSuccess : kComputation;
}

struct DeduceArgs {
    int k = 0;
    long target = 0;
    long max_prime = 0;
    long hypothesis_prime = 2;
    std::uint64_t bound = 200;
    bool discharge = false;
};

inline int cmd_deduce(CharpolyCache& cache, const RunConfig& cfg, const DeduceArgs& a, std::ostream& out) {
    require_even(a.k);
    if ((a.target == 0) == (a.max_prime == 0))
        throw std::invalid_argument("give exactly one of --target-prime and --max-prime");
    require_prime(a.hypothesis_prime, "hypothesis prime");
    std::vector<long> primes;
    if (a.target != 0) {
        require_prime(a.target, "target prime");
        primes.push_back(a.target);
    } else {
        for (long p = 2; p < a.max_prime; ++p)
            if (is_prime(p)) primes.push_back(p);
    }

    std::optional<CertifyResult> hyp;
    std::optional<Certificate> discharged;
    if (a.discharge && dim_cusp(a.k) > 0) {
        hyp = certify_full_symmetric(cache, a.hypothesis_prime, a.k, a.bound, cfg.seed);
        if (const auto* c = std::get_if<Certificate>(&*hyp)) discharged = *c;
    }
    std::vector<std::pair<long, int>> tasks;
    for (long p : primes) tasks.emplace_back(p, a.k);
    prefetch(cache, tasks, cfg.jobs);

    struct Row {
        long p;
        TransferVerdict thm1, cor;
    };
    std::vector<Row> rows;
    for (long p : primes)
        rows.push_back({p, theorem1_conclusion(cache, p, a.k, discharged), corollary_conclusion(cache, p, a.k, discharged)});

    if (cfg.format == "json") {
        json verdicts = json::array();
        for (const auto& r : rows)
            verdicts.push_back({{"p", r.p}, {"theorem1", report::to_json(r.thm1)}, {"corollary", report::to_json(r.cor)}});
        json j = {{"command", "deduce"}, {"k", a.k}, {"dim", dim_cusp(a.k)}, {"verdicts", verdicts}};
        j["hypothesis"] = hyp ? report::to_json(*hyp) : json(nullptr);
        emit_json(out, j);
    } else if (cfg.format == "csv") {
        out << csv_row({"p", "k", "rule", "applicable", "claim", "unconditional", "ell", "predicted_roots", "direct"}) << "\n";
        for (const auto& r : rows)
            for (const auto* v : {&r.thm1, &r.cor}) {
                const bool is_thm = v == &r.thm1;
                std::string claim, uncond, ell, predicted, direct;
                if (v->certificate) {
                    claim = to_string(v->certificate->claim);
                    uncond = v->certificate->unconditional() ? "true" : "false";
                }
                for (const auto& e : v->evidence) {
                    ell += (ell.empty() ? "" : " ") + std::to_string(e.ell);
                    predicted += (predicted.empty() ? "" : " ") + report::tuple_text(e.predicted);
                    direct += (direct.empty() ? "" : " ") + e.direct.to_string();
                }
                out << csv_row({std::to_string(r.p), std::to_string(a.k), is_thm ? "Theorem1" : "Corollary",
                                v->applicable ? "true" : "false", claim, uncond, ell, predicted, direct})
                    << "\n";
            }
    } else {
        if (hyp) {
            if (discharged)
                out << "hypothesis " << report::certificate_text(*discharged);
            else
                out << "hypothesis not discharged: " << std::get<NotFound>(*hyp).reason << "\n";
        }
        for (const auto& r : rows) {
            for (const auto* v : {&r.thm1, &r.cor}) {
                const char* name = (v == &r.thm1) ? "Theorem1" : "Corollary";
                out << hecke_subject(r.p, a.k) << " " << name << ": "
                    << (v->applicable ? "applicable, " : "not applicable, ") << v->detail << "\n";
                for (const auto& e : v->evidence)
                    out << "  ell=" << e.ell << " row p=" << e.row << ", k = " << e.kclass << " mod " << (e.ell - 1)
                        << ": roots " << report::tuple_text(e.predicted) << "; direct " << e.direct.to_string() << "\n";
                if (v->certificate) {
                    std::istringstream lines(report::certificate_text(*v->certificate));
                    std::string line;
                    std::getline(lines, line);
                    out << "  => " << line << "\n";
                    while (std::getline(lines, line))
                        if (line.rfind("  assuming", 0) == 0 || line.rfind("  note", 0) == 0) out << "  " << line << "\n";
                }
            }
        }
    }
    return kSuccess;
}

} // namespace detail

/// Entry point shared by the executable and the in-process tests.  Returns
/// 0 on success, 1 for usage errors, 2 for computation errors (including an
/// exhausted certificate search), 3 when a checked mathematical statement
/// fails.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hecke polynomials of level one modulo small primes"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--cache-dir", cfg.cache_dir, "Directory for cached characteristic polynomials (HECKE_MOD_CACHE overrides)");
    app.add_option("--seed", cfg.seed, "Seed for randomized factorization (output does not depend on it)");
    app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));

    detail::CharpolyArgs cp;
    auto* charpoly_cmd = app.add_subcommand("charpoly", "Characteristic polynomial T_{p,k}(x), optionally factored mod ell");
    charpoly_cmd->add_option("--prime", cp.p, "Hecke prime p")->required();
    charpoly_cmd->add_option("--weight", cp.k, "Even weight k")->required();
    charpoly_cmd->add_option("--ell", cp.ell, "Reduce and factor modulo this prime");

    detail::TableArgs tb;
    auto* table_cmd = app.add_subcommand("table", "Periodic root-sequence table modulo 5, 7 or 13");
    table_cmd->add_option("--ell", tb.ell, "5, 7 or 13")->required();
    table_cmd->add_option("--max-weight", tb.max_weight, "Largest weight examined (default: two periods)");
    table_cmd->add_flag("--single-period", tb.single_period, "ell = 13 only: first 14 terms, no period confirmation");

    long tn = 0;
    int tk = 0;
    auto* trace_cmd = app.add_subcommand("trace", "Trace of T_n on S_k(1) by the Eichler-Selberg trace formula");
    trace_cmd->add_option("--n", tn, "Hecke index n")->required();
    trace_cmd->add_option("--weight", tk, "Even weight k >= 4")->required();

    detail::PeriodArgs pa;
    auto* period_cmd = app.add_subcommand("period", "Period of the root sequence of T_{p,k} mod ell over one class of k");
    period_cmd->add_option("--prime", pa.p, "Hecke prime p")->required();
    period_cmd->add_option("--ell", pa.ell, "5, 7 or 13")->required();
    period_cmd->add_option("--kclass", pa.kclass, "k mod (ell - 1)")->required();
    period_cmd->add_option("--max-weight", pa.max_weight, "Largest weight examined");

    detail::CertifyArgs ca;
    auto* certify_cmd = app.add_subcommand("certify", "Irreducibility and full-symmetric-group certificates for T_{p,k}");
    certify_cmd->add_option("--prime", ca.p, "Hecke prime p")->required();
    certify_cmd->add_option("--weight", ca.k, "Even weight k")->required();
    certify_cmd->add_option("--bound", ca.bound, "Largest ell scanned");

    detail::DeduceArgs da;
    auto* deduce_cmd = app.add_subcommand("deduce", "Transfer irreducibility and full Galois group to T_{p,k}");
    deduce_cmd->add_option("--weight", da.k, "Even weight k")->required();
    deduce_cmd->add_option("--target-prime", da.target, "Single target prime p");
    deduce_cmd->add_option("--max-prime", da.max_prime, "All primes p below this bound");
    deduce_cmd->add_option("--hypothesis-prime", da.hypothesis_prime, "n whose T_{n,k} discharges the hypothesis");
    deduce_cmd->add_option("--bound", da.bound, "Largest ell scanned for the hypothesis certificate");
    deduce_cmd->add_flag("--discharge", da.discharge,
                         "Certify T_{n,k} for the hypothesis prime n first and emit unconditional verdicts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    if (const char* env = std::getenv("HECKE_MOD_CACHE"); env && *env) cfg.cache_dir = env;

    try {
        std::optional<std::filesystem::path> dir;
        if (!cfg.cache_dir.empty()) dir = std::filesystem::path(cfg.cache_dir);
        CharpolyCache cache(dir);
        int code = kSuccess;
        if (*charpoly_cmd)
            code = detail::cmd_charpoly(cache, cfg, cp, out);
        else if (*table_cmd)
            code = detail::cmd_table(cache, cfg, tb, out);
        else if (*trace_cmd)
            code = detail::cmd_trace(cfg, tn, tk, out);
        else if (*period_cmd)
            code = detail::cmd_period(cache, cfg, pa, out);
        else if (*certify_cmd)
            code = detail::cmd_certify(cache, cfg, ca, out);
        else if (*deduce_cmd)
            code = detail::cmd_deduce(cache, cfg, da, out);
        cache.flush();
        return code;
    } catch (const FalsificationError& e) {
        err << "falsified: " << e.what() << "\n";
        return kFalsified;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "computation error: " << e.what() << "\n";
        return kComputation;
    }
}

} // namespace heckemod::cli
