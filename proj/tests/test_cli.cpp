#include "heckemod/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "hecke-mod");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = heckemod::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::directory_iterator(dir)) files[e.path().filename().string()] = slurp(e.path());
    return files;
}

// RFC 4180 field count of one line
std::size_t csv_fields(const std::string& line) {
    std::size_t n = 1;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') quoted = !quoted;
        else if (c == ',' && !quoted) ++n;
    }
    return n;
}

void expect_rectangular_csv(const std::string& text, std::size_t columns) {
    std::istringstream in(text);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
        ++lines;
        EXPECT_EQ(csv_fields(line), columns) << line;
    }
    EXPECT_GE(lines, 2);
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("hecke-mod-test-" + std::to_string(std::random_device{}()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

} // namespace

TEST(Cli, CharpolyText) {
    EXPECT_EQ(run({"charpoly", "--prime", "2", "--weight", "12"}).out, "x + 24\n");
    EXPECT_EQ(run({"charpoly", "--prime", "2", "--weight", "24", "--ell", "5"}).out,
              "x^2 - 1080*x - 20468736\n(x + 1)(x + 4) over F_5\n");
    EXPECT_EQ(run({"charpoly", "--prime", "2", "--weight", "10"}).out, "1 (dim 0)\n");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"charpoly", "--prime", "5", "--weight", "24", "--ell", "5"}).code, 1);
    EXPECT_EQ(run({"charpoly", "--prime", "2", "--weight", "13"}).code, 1);
    EXPECT_EQ(run({"charpoly", "--prime", "4", "--weight", "12"}).code, 1);
    EXPECT_EQ(run({"charpoly", "--weight", "12"}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({"--format", "xml", "trace", "--n", "2", "--weight", "12"}).code, 1);
    EXPECT_EQ(run({"table", "--ell", "11"}).code, 1);
    EXPECT_EQ(run({"period", "--prime", "2", "--ell", "13", "--kclass", "0", "--max-weight", "60"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
    const auto bad = run({"charpoly", "--prime", "4", "--weight", "12"});
    EXPECT_FALSE(bad.err.empty());
}

TEST(Cli, FalsificationExitCode) {
    TempDir dir;
    // A forged cache record that breaks the mod-5 divisibility.
    std::ofstream(heckemod::CharpolyCache::file_for(dir.path(), 2))
        << R"({"coeffs":["1","1"],"k":16,"p":2})" << '\n';
    const auto r = run({"--cache-dir", dir.path().string(), "period", "--prime", "2", "--ell", "5", "--kclass", "0"});
    EXPECT_EQ(r.code, 3) << r.err;
}

TEST(Cli, TraceAndPeriod) {
    EXPECT_EQ(run({"trace", "--n", "2", "--weight", "12"}).out, "-24\n");
    const auto p = run({"period", "--prime", "2", "--ell", "13", "--kclass", "0"});
    EXPECT_EQ(p.code, 0);
    EXPECT_EQ(p.out.substr(0, 3), "14\n");
}

TEST(Cli, TableRows) {
    const auto t13 = run({"table", "--ell", "13"});
    EXPECT_NE(t13.out.find("(11, 2, 7, 12, 9, 12, 7, 2, 11, 6, 1, 4, 1, 6)"), std::string::npos);
    const auto t7 = run({"table", "--ell", "7"});
    EXPECT_NE(t7.out.find("(0,3,0,4)"), std::string::npos);
    const auto t5 = run({"--format", "csv", "table", "--ell", "5"});
    EXPECT_NE(t5.out.find("5,19,4,0,1,(0),"), std::string::npos);
    EXPECT_NE(t5.out.find("5,19,4,2,1,(0),"), std::string::npos);
}

TEST(Cli, DeduceConditionalAndDischarged) {
    const auto c = run({"deduce", "--weight", "24", "--target-prime", "3"});
    EXPECT_EQ(c.code, 0);
    EXPECT_NE(c.out.find("ell=5 row p=3, k = 0 mod 4: roots (2,3)"), std::string::npos);
    EXPECT_NE(c.out.find("FullSymmetricGroup by Theorem1 (conditional)"), std::string::npos);
    const auto u = run({"deduce", "--weight", "24", "--target-prime", "3", "--discharge"});
    EXPECT_NE(u.out.find("FullSymmetricGroup by Theorem1 (unconditional)"), std::string::npos);
    EXPECT_EQ(run({"deduce", "--weight", "24"}).code, 1);
}

TEST(Cli, CsvColumnCounts) {
    expect_rectangular_csv(run({"--format", "csv", "charpoly", "--prime", "2", "--weight", "24", "--ell", "5"}).out, 6);
    expect_rectangular_csv(run({"--format", "csv", "charpoly", "--prime", "3", "--weight", "10"}).out, 6);
    expect_rectangular_csv(run({"--format", "csv", "table", "--ell", "5"}).out, 7);
    expect_rectangular_csv(run({"--format", "csv", "table", "--ell", "13"}).out, 7);
    expect_rectangular_csv(run({"--format", "csv", "trace", "--n", "3", "--weight", "24"}).out, 3);
    expect_rectangular_csv(run({"--format", "csv", "period", "--prime", "3", "--ell", "7", "--kclass", "2"}).out, 7);
    expect_rectangular_csv(run({"--format", "csv", "certify", "--prime", "2", "--weight", "36"}).out, 5);
    expect_rectangular_csv(run({"--format", "csv", "deduce", "--weight", "24", "--max-prime", "20"}).out, 9);
}

TEST(Cli, JsonIsSortedAndParses) {
    const auto r = run({"--format", "json", "certify", "--prime", "2", "--weight", "24"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("irreducible").at("status"), "Certified");
    EXPECT_EQ(j.dump(2) + "\n", r.out);
}

TEST(Cli, CacheRoundTripIsByteIdentical) {
    TempDir dir;
    const std::vector<std::string> table{"--cache-dir", dir.path().string(), "--format", "json", "table", "--ell", "5"};
    const std::vector<std::string> cp{"--cache-dir", dir.path().string(), "charpoly", "--prime", "7", "--weight", "60"};
    const auto first = run(table);
    const auto first_cp = run(cp);
    ASSERT_EQ(first.code, 0);
    const auto files = snapshot(dir.path());
    EXPECT_TRUE(files.count("T_2.jsonl"));
    // reread from the cache
    EXPECT_EQ(run(table).out, first.out);
    EXPECT_EQ(snapshot(dir.path()), files);
    // delete and recompute
    fs::remove_all(dir.path());
    EXPECT_EQ(run(table).out, first.out);
    EXPECT_EQ(run(cp).out, first_cp.out);
    EXPECT_EQ(snapshot(dir.path()), files);
}

TEST(Cli, CacheRecordsAreCanonical) {
    TempDir dir;
    run({"--cache-dir", dir.path().string(), "charpoly", "--prime", "3", "--weight", "24"});
    run({"--cache-dir", dir.path().string(), "charpoly", "--prime", "3", "--weight", "12"});
    const auto text = slurp(heckemod::CharpolyCache::file_for(dir.path(), 3));
    EXPECT_EQ(text, std::string(R"({"coeffs":["-252","1"],"k":12,"p":3})") + "\n" +
                        R"({"coeffs":["-19020146544","-339480","1"],"k":24,"p":3})" + "\n");
}

TEST(Cli, EnvironmentOverridesCacheDir) {
    TempDir a, b;
    ::setenv("HECKE_MOD_CACHE", b.path().string().c_str(), 1);
    run({"--cache-dir", a.path().string(), "charpoly", "--prime", "5", "--weight", "24"});
    ::unsetenv("HECKE_MOD_CACHE");
    EXPECT_TRUE(fs::is_empty(a.path()));
    EXPECT_TRUE(fs::exists(heckemod::CharpolyCache::file_for(b.path(), 5)));
}

TEST(Cli, JobsDoNotChangeOutput) {
    for (const std::string fmt : {"text", "json"}) {
        const auto one = run({"--format", fmt, "--jobs", "1", "table", "--ell", "7"});
        const auto four = run({"--format", fmt, "--jobs", "4", "table", "--ell", "7"});
        EXPECT_EQ(one.out, four.out);
    }
    EXPECT_EQ(run({"--jobs", "1", "deduce", "--weight", "36", "--max-prime", "40"}).out,
              run({"--jobs", "3", "deduce", "--weight", "36", "--max-prime", "40"}).out);
    TempDir x, y;
    run({"--cache-dir", x.path().string(), "--jobs", "1", "table", "--ell", "5"});
    run({"--cache-dir", y.path().string(), "--jobs", "4", "table", "--ell", "5"});
    EXPECT_EQ(snapshot(x.path()), snapshot(y.path()));
}

TEST(Cli, SeedDoesNotChangeOutput) {
    EXPECT_EQ(run({"--seed", "0", "certify", "--prime", "2", "--weight", "48"}).out,
              run({"--seed", "12345", "certify", "--prime", "2", "--weight", "48"}).out);
}
