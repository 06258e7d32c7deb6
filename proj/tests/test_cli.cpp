#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

/* Spawn the installed CLI binary, capturing stdout. */
RunResult run_cli(const std::string& args) {
    const std::string out_path = "cli_test_output.tmp";
    const std::string cmd = std::string(QSERIES_BIN) + " " + args + " > " + out_path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    r.output = buf.str();
    return r;
}

}  // namespace

TEST_CASE("verify passes and exits 0") {
    const auto r = run_cli("verify thm1 --n-max 200 --format json");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["identity"] == "thm1");
    CHECK(j["status"] == "pass");
    CHECK(j["range"][1] == 200);
}

TEST_CASE("verify rejects bad parameters with exit 2") {
    CHECK(run_cli("verify thm3 --k 4 --n-max 10").exit_code == 2);
    CHECK(run_cli("verify thm4 --h 1 --N 2 --n-max 10").exit_code == 2);
    CHECK(run_cli("verify thm4 --h 1 --n-max 10").exit_code == 2);
    CHECK(run_cli("verify nonsense --n-max 10").exit_code == 2);
    CHECK(run_cli("verify thm1 --n-max 0").exit_code == 2);
    CHECK(run_cli("verify thm1 --n-max 10 --format yaml").exit_code == 2);
    CHECK(run_cli("bogus-subcommand").exit_code == 2);
}

TEST_CASE("verify accepts hyphenated identity names") {
    CHECK(run_cli("verify prop21-2 --h 1 --n-max 50").exit_code == 0);
}

TEST_CASE("table output") {
    const auto r = run_cli("table r_eo --n-max 5 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "n,value\n0,1\n1,-2\n2,4\n3,-8\n4,14\n5,-24\n");

    const auto c = run_cli("table c --n-max 8 --format csv");
    CHECK(c.exit_code == 0);
    CHECK(c.output == "n,value\n1,2\n2,-3\n3,2\n4,-1\n5,2\n6,-3\n7,2\n8,-1\n");

    const auto e = run_cli("table e --h 1 --N 3 --n-max 3 --format csv");
    CHECK(e.exit_code == 0);
    CHECK(e.output == "n,value\n1,0\n2,0\n3,1\n");

    const auto lam = run_cli("table lambert --h 0 --N 1 --n-max 4 --format csv");
    CHECK(lam.exit_code == 0);
    CHECK(lam.output == "n,value\n1,2\n2,-4\n3,8\n4,-8\n");

    const auto peo = run_cli("table p_eo --k 5 --n-max 3 --format csv");
    CHECK(peo.exit_code == 0);
    CHECK(peo.output == "n,value\n0,1\n1,-1\n2,0\n3,1\n");

    const auto rhn = run_cli("table r_hn --h 1 --N 3 --n-max 3 --format csv");
    CHECK(rhn.exit_code == 0);
    CHECK(rhn.output == "n,value\n0,1\n1,0\n2,0\n3,-1\n");

    CHECK(run_cli("table no_such_sequence --n-max 3").exit_code == 2);
    CHECK(run_cli("table e --N 3 --n-max 3").exit_code == 2);       // missing --h
    CHECK(run_cli("table r_hn --h 1 --N 2 --n-max 3").exit_code == 2);   // N = 2h
}

TEST_CASE("table json round-trips byte-identically") {
    const auto r = run_cli("table t_eo_plus --n-max 6 --format json");
    CHECK(r.exit_code == 0);
    const auto parsed = nlohmann::ordered_json::parse(r.output);
    CHECK(parsed.dump(2) + "\n" == r.output);
    CHECK(parsed["rows"][3]["value"] == "-2");
}

TEST_CASE("extract recovers the exponent tables") {
    const auto r = run_cli("extract --h 0 --N 1 --order 100 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("n,value\n1,2\n2,-3\n3,2\n4,-1\n", 0) == 0);

    const auto f = run_cli("extract --h 1 --N 2 --order 100 --format csv");
    CHECK(f.exit_code == 0);
    CHECK(f.output.find("\n8,1\n") != std::string::npos);
    CHECK(f.output.find("\n16,-1\n") != std::string::npos);
    CHECK(f.output.find("\n12,0\n") != std::string::npos);
}

TEST_CASE("km demo") {
    const auto r = run_cli("km-demo --n-max 10 --format csv");
    CHECK(r.exit_code == 0);
    std::size_t rows = 0;
    for (char ch : r.output)
        if (ch == '\n') ++rows;
    CHECK(rows == 11);   // header + ten rows
    CHECK(r.output.find("MISMATCH") == std::string::npos);
}

TEST_CASE("jobs produce identical output") {
    const auto seq = run_cli("verify thm3 --k 5 --n-max 100 --format json");
    const auto par = run_cli("verify thm3 --k 5 --n-max 100 --format json --jobs 4");
    CHECK(seq.exit_code == 0);
    CHECK(par.exit_code == 0);
    // elapsed_ms may differ; compare everything else
    auto a = nlohmann::ordered_json::parse(seq.output);
    auto b = nlohmann::ordered_json::parse(par.output);
    a.erase("elapsed_ms");
    b.erase("elapsed_ms");
    CHECK(a == b);
}

TEST_CASE("output file option") {
    const std::string path = "cli_written_report.tmp";
    const auto r = run_cli("verify thm2 --n-max 50 --format json --output " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.empty());
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto j = nlohmann::json::parse(buf.str());
    CHECK(j["status"] == "pass");
    std::remove(path.c_str());
}
