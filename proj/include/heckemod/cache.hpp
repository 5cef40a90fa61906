#pragma once

#include "heckemod/hecke.hpp"
#include "heckemod/integer.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heckemod {

/// One cached characteristic polynomial T_{p,k}(x), coefficients ascending.
struct CacheRecord {
    long p = 0;
    int k = 0;
    std::vector<std::string> coeffs;

    static CacheRecord from_poly(long p, int k, const IntPoly& f) {
        CacheRecord r{p, k, {}};
        for (const auto& c : f.coeffs()) r.coeffs.push_back(to_decimal(c));
        return r;
    }

    IntPoly to_poly() const {
        std::vector<Integer> c;
        c.reserve(coeffs.size());
        for (const auto& s : coeffs) c.push_back(from_decimal(s));
        return IntPoly(std::move(c));
    }

    /// Single JSON line, keys sorted, no whitespace, no terminator.
    std::string to_line() const {
        nlohmann::json j = {{"coeffs", coeffs}, {"k", k}, {"p", p}};
        return j.dump();
    }

    static CacheRecord from_line(const std::string& line) {
        auto j = nlohmann::json::parse(line);
        CacheRecord r;
        r.p = j.at("p").get<long>();
        r.k = j.at("k").get<int>();
        r.coeffs = j.at("coeffs").get<std::vector<std::string>>();
        return r;
    }
};

/// Memo of exact Hecke characteristic polynomials, optionally persisted to a
/// directory as one JSON-lines file per prime ("T_<p>.jsonl", records sorted
/// by weight).  Polynomials are computed outside the lock; the first result
/// published for a key wins and later identical results are discarded.
class CharpolyCache {
public:
    CharpolyCache() = default;
    explicit CharpolyCache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {
        if (dir_) std::filesystem::create_directories(*dir_);
    }

    ~CharpolyCache() {
        try {
            flush();
        } catch (...) {
        }
    }

    CharpolyCache(const CharpolyCache&) = delete;
    CharpolyCache& operator=(const CharpolyCache&) = delete;

    const std::optional<std::filesystem::path>& directory() const { return dir_; }

    IntPoly get(long p, int k) {
        {
            std::lock_guard lock(mutex_);
            load_locked(p);
            auto it = polys_.find({p, k});
            if (it != polys_.end()) return it->second;
        }
        IntPoly f = charpoly({p, k}, table_);
        {
            std::lock_guard lock(mutex_);
            auto [it, inserted] = polys_.emplace(std::make_pair(p, k), std::move(f));
            if (inserted) {
                ++computed_;
                if (dir_) append_locked(p, k, it->second);
            }
            return it->second;
        }
    }

    bool contains(long p, int k) {
        std::lock_guard lock(mutex_);
        load_locked(p);
        return polys_.count({p, k}) != 0;
    }

    /// Rewrites every file touched since the last flush in weight order, so
    /// the on-disk bytes do not depend on the order of computation.
    void flush() {
        std::lock_guard lock(mutex_);
        for (long p : dirty_) write_locked(p);
        dirty_.clear();
    }

    /// Number of polynomials computed (rather than loaded) by this instance.
    std::size_t computed() const {
        std::lock_guard lock(mutex_);
        return computed_;
    }

    static std::filesystem::path file_for(const std::filesystem::path& dir, long p) {
        return dir / ("T_" + std::to_string(p) + ".jsonl");
    }

private:
    void load_locked(long p) {
        if (!dir_ || loaded_.count(p)) return;
        loaded_.insert(p);
        std::ifstream in(file_for(*dir_, p));
        if (!in) return;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            CacheRecord rec;
            try {
                rec = CacheRecord::from_line(line);
            } catch (const std::exception& e) {
                throw ComputationError("cache file " + file_for(*dir_, p).string() + ":" + std::to_string(lineno) +
                                       ": " + e.what());
            }
            IntPoly f = rec.to_poly();
            if (rec.p != p || !f.is_monic() || f.degree() != dim_cusp(rec.k))
                throw ComputationError("cache file " + file_for(*dir_, p).string() + ":" + std::to_string(lineno) +
                                       ": record is not a monic polynomial of degree dim S_k");
            polys_.emplace(std::make_pair(rec.p, rec.k), std::move(f));
        }
    }

    void append_locked(long p, int k, const IntPoly& f) {
        std::ofstream out(file_for(*dir_, p), std::ios::binary | std::ios::app);
        if (!out) throw ComputationError("cannot append to cache file " + file_for(*dir_, p).string());
        out << CacheRecord::from_poly(p, k, f).to_line() << '\n';
        dirty_.insert(p);
    }

    void write_locked(long p) {
        const auto path = file_for(*dir_, p);
        const auto tmp = std::filesystem::path(path.string() + ".tmp");
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw ComputationError("cannot write cache file " + tmp.string());
            for (auto it = polys_.lower_bound({p, std::numeric_limits<int>::min()});
                 it != polys_.end() && it->first.first == p; ++it)
                out << CacheRecord::from_poly(p, it->first.second, it->second).to_line() << '\n';
        }
        std::filesystem::rename(tmp, path);
    }

    std::optional<std::filesystem::path> dir_;
    mutable std::mutex mutex_;
    std::map<std::pair<long, int>, IntPoly> polys_;
    std::set<long> loaded_;
    std::set<long> dirty_;
    std::size_t computed_ = 0;
    SeriesTable table_;
};

} // namespace heckemod
