#pragma once

#include "heckemod/galois.hpp"
#include "heckemod/gfpoly.hpp"
#include "heckemod/hecke.hpp"
#include "heckemod/modfactor.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace heckemod::report {

using nlohmann::json;

inline json to_json(const IntPoly& f) {
    json a = json::array();
    for (const auto& c : f.coeffs()) a.push_back(to_decimal(c));
    return a;
}

inline json to_json(const FpPoly& f) {
    json a = json::array();
    for (auto c : f.coeffs()) a.push_back(c);
    return a;
}

inline json to_json(const FactorMultiset& fm) {
    json factors = json::array();
    for (const auto& f : fm.factors)
        factors.push_back({{"coeffs", to_json(f.poly)}, {"degree", f.poly.degree()}, {"multiplicity", f.multiplicity}});
    return {{"ell", fm.modulus}, {"factors", factors}, {"text", fm.to_string()}, {"unit", fm.unit}};
}

inline json to_json(const Evidence& e) {
    return {{"ell", e.ell},
            {"factorization", to_json(e.factorization)},
            {"partition", e.factorization.degree_partition()},
            {"role", e.role}};
}

inline json to_json(const Certificate& c) {
    json ev = json::array();
    for (const auto& e : c.evidence) ev.push_back(to_json(e));
    return {{"assumptions", c.assumptions},
            {"claim", to_string(c.claim)},
            {"degree", c.degree},
            {"evidence", ev},
            {"k", c.k},
            {"notes", c.notes},
            {"p", c.p},
            {"rule", to_string(c.rule)},
            {"subject", c.subject},
            {"unconditional", c.unconditional()}};
}

inline json to_json(const NotFound& nf) {
    json ev = json::array();
    for (const auto& e : nf.evidence) ev.push_back(to_json(e));
    return {{"evidence", ev}, {"reason", nf.reason}, {"subject", nf.subject}};
}

inline json to_json(const CertifyResult& r) {
    if (const auto* c = std::get_if<Certificate>(&r)) return {{"certificate", to_json(*c)}, {"status", "Certified"}};
    return {{"not_found", to_json(std::get<NotFound>(r))}, {"status", "NotFound"}};
}

inline json to_json(const ShapeVerdict& v) {
    return {{"degree", v.degree},
            {"linear_power_excluded", v.linear_power_excluded},
            {"multiplicity_gcd", v.multiplicity_gcd},
            {"power_excluded", v.power_excluded},
            {"summary", v.summary()},
            {"surviving_powers", v.surviving_powers}};
}

inline json to_json(const TableEvidence& e) {
    return {{"direct", to_json(e.direct)}, {"ell", e.ell}, {"kclass", e.kclass}, {"predicted_roots", e.predicted}, {"row", e.row}};
}

inline json to_json(const TransferVerdict& v) {
    json ev = json::array();
    for (const auto& e : v.evidence) ev.push_back(to_json(e));
    json j = {{"applicable", v.applicable}, {"detail", v.detail}, {"evidence", ev}, {"shape", to_json(v.shape)}};
    j["certificate"] = v.certificate ? to_json(*v.certificate) : json(nullptr);
    return j;
}

inline json to_json(const RootSequence& s) {
    json j = {{"ell", s.ell},
              {"kclass", s.kclass},
              {"p", s.p},
              {"terms", s.terms},
              {"one_period", s.one_period()},
              {"verified_up_to", s.verified_up_to}};
    j["period"] = s.period ? json(*s.period) : json(nullptr);
    return j;
}

/// "(1,4)" for ell in {5, 7}; "(2, 12, 9, ...)" for ell = 13.
inline std::string tuple_text(const std::vector<Residue>& v, const std::string& sep = ",") {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
    os << ")";
    return os.str();
}

inline std::string table_separator(std::uint64_t ell) { return ell == 13 ? ", " : ","; }

/// RFC 4180 field quoting.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string csv_row(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + csv_field(fields[i]);
    return line;
}

inline std::string certificate_text(const Certificate& c) {
    std::ostringstream os;
    os << c.subject << ": " << to_string(c.claim) << " by " << to_string(c.rule)
       << (c.unconditional() ? " (unconditional)" : " (conditional)") << "\n";
    for (const auto& a : c.assumptions) os << "  assuming " << a << "\n";
    for (const auto& e : c.evidence)
        os << "  ell=" << e.ell << ": " << e.factorization.to_string() << "  [" << e.role << "]\n";
    for (const auto& n : c.notes) os << "  note: " << n << "\n";
    return os.str();
}

} // namespace heckemod::report
