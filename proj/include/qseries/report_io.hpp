#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qseries/report.hpp"

namespace qseries {

/* JSON schema (canonical key order, all counts as exact decimal strings):
 * {"identity": str, "params": {"h":int,"N":int,"k":int?}, "range":[lo,hi],
 *  "status":"pass"|"fail", "failures":[{"n":int,"lhs":str,"rhs":str}],
 *  "elapsed_ms":int} */
inline nlohmann::ordered_json report_to_json(const IdentityReport& report) {
    nlohmann::ordered_json j;
    j["identity"] = to_string(report.id);
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    if (report.params.h) params["h"] = *report.params.h;
    if (report.params.N) params["N"] = *report.params.N;
    if (report.params.k) params["k"] = *report.params.k;
    j["params"] = params;
    j["range"] = {report.range_lo, report.range_hi};
    j["status"] = report.pass() ? "pass" : "fail";
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    for (const Failure& f : report.failures) {
        nlohmann::ordered_json jf;
        jf["n"] = f.n;
        jf["lhs"] = f.lhs.str();
        jf["rhs"] = f.rhs.str();
        failures.push_back(jf);
    }
    j["failures"] = failures;
    j["elapsed_ms"] = report.elapsed_ms;
    return j;
}

inline std::string reports_to_json_text(const std::vector<IdentityReport>& reports) {
    if (reports.size() == 1) return report_to_json(reports.front()).dump(2) + "\n";
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    return arr.dump(2) + "\n";
}

inline std::string params_to_text(const IdentityParams& p) {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const char* name, const std::optional<std::int64_t>& v) {
        if (!v) return;
        os << (first ? "" : ",") << name << "=" << *v;
        first = false;
    };
    emit("h", p.h);
    emit("N", p.N);
    emit("k", p.k);
    return os.str();
}

inline std::string reports_to_csv_text(const std::vector<IdentityReport>& reports) {
    std::ostringstream os;
    os << "identity,h,N,k,n_lo,n_hi,status,failures,elapsed_ms\n";
    auto cell = [](const std::optional<std::int64_t>& v) {
        return v ? std::to_string(*v) : std::string();
    };
    for (const auto& r : reports) {
        os << to_string(r.id) << "," << cell(r.params.h) << "," << cell(r.params.N) << ","
           << cell(r.params.k) << "," << r.range_lo << "," << r.range_hi << ","
           << (r.pass() ? "pass" : "fail") << "," << r.failures.size() << "," << r.elapsed_ms
           << "\n";
    }
    return os.str();
}

inline std::string reports_to_plain_text(const std::vector<IdentityReport>& reports) {
    std::ostringstream os;
    for (const auto& r : reports) {
        os << to_string(r.id);
        const std::string params = params_to_text(r.params);
        if (!params.empty()) os << "(" << params << ")";
        os << " [" << r.range_lo << ".." << r.range_hi << "]: "
           << (r.pass() ? "PASS" : "FAIL") << " (" << r.elapsed_ms << " ms)\n";
        std::size_t shown = 0;
        for (const Failure& f : r.failures) {
            if (shown == 10) {
                os << "  ... " << (r.failures.size() - shown) << " more failures\n";
                break;
            }
            os << "  n=" << f.n << ": lhs=" << f.lhs.str() << " rhs=" << f.rhs.str() << "\n";
            ++shown;
        }
    }
    return os.str();
}

inline std::string reports_to_text(const std::vector<IdentityReport>& reports,
                                   const std::string& format) {
    if (format == "json") return reports_to_json_text(reports);
    if (format == "csv") return reports_to_csv_text(reports);
    return reports_to_plain_text(reports);
}

}  // namespace qseries
