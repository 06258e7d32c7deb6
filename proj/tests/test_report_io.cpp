#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "qseries/identities.hpp"
#include "qseries/report_io.hpp"

using namespace qseries;

namespace {

IdentityReport sample_fail_report() {
    IdentityReport r;
    r.id = IdentityId::thm4;
    r.params.h = 1;
    r.params.N = 3;
    r.range_lo = 1;
    r.range_hi = 10;
    r.failures.push_back({7, Int("123456789012345678901234567890"), Int(-5)});
    r.elapsed_ms = 42;
    return r;
}

}  // namespace

TEST_CASE("status derives from the failure list") {
    IdentityReport r;
    CHECK(r.pass());
    r.failures.push_back({1, 0, 1});
    CHECK_FALSE(r.pass());
}

TEST_CASE("identity names round-trip") {
    for (IdentityId id : {IdentityId::thm1, IdentityId::thm1_2adic, IdentityId::thm2,
                          IdentityId::thm3, IdentityId::thm4, IdentityId::prop21_2,
                          IdentityId::prod_formula, IdentityId::eta_quotient, IdentityId::lambert,
                          IdentityId::exponent_roundtrip, IdentityId::km_recursion})
        CHECK(identity_from_string(to_string(id)) == id);
    CHECK(identity_from_string("prop21-2") == IdentityId::prop21_2);
    CHECK_FALSE(identity_from_string("nope").has_value());
}

TEST_CASE("json schema") {
    const auto j = report_to_json(sample_fail_report());
    CHECK(j["identity"] == "thm4");
    CHECK(j["params"]["h"] == 1);
    CHECK(j["params"]["N"] == 3);
    CHECK_FALSE(j["params"].contains("k"));
    CHECK(j["range"][0] == 1);
    CHECK(j["range"][1] == 10);
    CHECK(j["status"] == "fail");
    CHECK(j["failures"].size() == 1);
    CHECK(j["failures"][0]["n"] == 7);
    CHECK(j["failures"][0]["lhs"] == "123456789012345678901234567890");
    CHECK(j["failures"][0]["rhs"] == "-5");
    CHECK(j["elapsed_ms"] == 42);

    // canonical key order
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>(
                      {"identity", "params", "range", "status", "failures", "elapsed_ms"}));
}

TEST_CASE("json text is byte-stable under parse and re-dump") {
    for (const auto& reports :
         {std::vector<IdentityReport>{sample_fail_report()},
          std::vector<IdentityReport>{verify_thm1(20), verify_thm2(20)}}) {
        const std::string text = reports_to_json_text(reports);
        const auto parsed = nlohmann::ordered_json::parse(text);
        CHECK(parsed.dump(2) + "\n" == text);
    }
}

TEST_CASE("csv and text formats") {
    const std::vector<IdentityReport> reports = {sample_fail_report(), verify_thm2(20)};

    const std::string csv = reports_to_csv_text(reports);
    CHECK(csv.rfind("identity,h,N,k,n_lo,n_hi,status,failures,elapsed_ms\n", 0) == 0);
    CHECK(csv.find("thm4,1,3,,1,10,fail,1,42") != std::string::npos);
    CHECK(csv.find("thm2,,,,1,20,pass,0,") != std::string::npos);

    const std::string text = reports_to_plain_text(reports);
    CHECK(text.find("thm4(h=1,N=3) [1..10]: FAIL") != std::string::npos);
    CHECK(text.find("n=7: lhs=123456789012345678901234567890 rhs=-5") != std::string::npos);
    CHECK(text.find("thm2 [1..20]: PASS") != std::string::npos);
}
