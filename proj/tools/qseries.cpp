// Command-line front end: identity verification sweeps, exact sequence
// tables, exponent extraction, and the multinomial-recursion demo.
// Exit codes: 0 all requested checks pass, 1 some check failed, 2 usage or
// parameter error.

#include <atomic>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qseries/identities.hpp"
#include "qseries/rep_counts.hpp"
#include "qseries/report_io.hpp"

namespace {

using qseries::IdentityId;
using qseries::IdentityParams;
using qseries::IdentityReport;
using qseries::Int;

struct CommonOpts {
    std::optional<std::int64_t> h;
    std::optional<std::int64_t> N;
    std::optional<std::int64_t> k;
    std::int64_t n_max = 100;
    std::int64_t order = 200;
    std::string format = "text";
    int jobs = 1;
    std::string output;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_order, bool with_jobs) {
    cmd->set_help_flag("--help", "print help and exit");
    cmd->add_option("--h", o.h, "congruence class parameter h");
    cmd->add_option("--N", o.N, "congruence modulus N");
    cmd->add_option("--k", o.k, "polygonal parameter k");
    cmd->add_option("--n-max", o.n_max, "upper end of the sweep range")
        ->check(CLI::PositiveNumber);
    if (with_order)
        cmd->add_option("--order", o.order, "series truncation order")->check(CLI::PositiveNumber);
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    if (with_jobs)
        cmd->add_option("--jobs", o.jobs, "max concurrent verifications")
            ->check(CLI::PositiveNumber);
    cmd->add_option("--output", o.output, "write output to this path instead of stdout");
}

int emit(const std::string& text, const CommonOpts& o) {
    if (o.output.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file " << o.output << "\n";
        return 2;
    }
    out << text;
    return 0;
}

/* Whether a verification is ranged by series order rather than by n. */
bool order_ranged(IdentityId id) {
    switch (id) {
        case IdentityId::prod_formula:
        case IdentityId::eta_quotient:
        case IdentityId::lambert:
        case IdentityId::exponent_roundtrip:
            return true;
        default:
            return false;
    }
}

IdentityParams params_from(const CommonOpts& o) {
    IdentityParams p;
    p.h = o.h;
    p.N = o.N;
    p.k = o.k;
    return p;
}

/* Bounded worker pool over independent verifications; results keep the
 * task order so output is deterministic regardless of --jobs. */
std::vector<IdentityReport> run_tasks(const std::vector<std::function<IdentityReport()>>& tasks,
                                      int jobs) {
    std::vector<IdentityReport> results(tasks.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = tasks[i]();
        return results;
    }
    std::atomic<std::size_t> next{0};
    const int workers = std::min<int>(jobs, static_cast<int>(tasks.size()));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                results[i] = tasks[i]();
            }
        });
    }
    for (auto& t : pool) t.join();
    return results;
}

/* The full verification matrix run by `verify all`: every identity at the
 * ranges the acceptance suite uses. */
std::vector<std::function<IdentityReport()>> all_tasks() {
    using qseries::ThetaParams;
    std::vector<std::function<IdentityReport()>> tasks;
    tasks.push_back([] { return qseries::verify_thm1(2000); });
    tasks.push_back([] { return qseries::verify_thm2(2000); });
    for (std::int64_t k = 5; k <= 12; ++k)
        tasks.push_back([k] { return qseries::verify_thm3(k, 500); });
    const std::vector<std::pair<std::int64_t, std::int64_t>> hn_pairs = {
        {1, 3}, {1, 4}, {1, 5}, {2, 5}, {2, 7}, {3, 7}};
    for (auto [h, N] : hn_pairs)
        tasks.push_back([h, N] { return qseries::verify_thm4(h, N, 1000); });
    for (std::int64_t h = 1; h <= 3; ++h)
        tasks.push_back([h] { return qseries::verify_prop21_2(h, 1000); });
    const std::vector<std::pair<std::int64_t, std::int64_t>> theta_pairs = {
        {0, 1}, {1, 3}, {1, 4}, {2, 5}, {1, 2}, {2, 4}};
    for (auto [h, N] : theta_pairs)
        tasks.push_back([h, N] {
            return qseries::verify_product_formula(ThetaParams::normalized(h, N), 2000);
        });
    tasks.push_back([] { return qseries::verify_theta_eta_quotient(2000); });
    for (auto [h, N] : theta_pairs)
        tasks.push_back([h, N] { return qseries::verify_lambert(h, N, 1000); });
    for (auto [h, N] : theta_pairs)
        tasks.push_back([h, N] { return qseries::extract_exponents_roundtrip(h, N, 501); });
    tasks.push_back([] { return qseries::km_recursion_check(30); });
    return tasks;
}

int cmd_verify(const std::string& name, const CommonOpts& o) {
    std::vector<std::function<IdentityReport()>> tasks;
    if (name == "all") {
        tasks = all_tasks();
    } else {
        const auto id = qseries::identity_from_string(name);
        if (!id) {
            std::cerr << "error: unknown identity '" << name << "'\n";
            return 2;
        }
        const std::int64_t range = order_ranged(*id) ? o.order : o.n_max;
        const IdentityParams params = params_from(o);
        // validate parameters up front so bad input never starts a sweep
        if (*id == IdentityId::thm3) {
            if (!o.k) {
                std::cerr << "error: thm3 requires --k\n";
                return 2;
            }
            if (*o.k <= 4) {
                std::cerr << "error: thm3 requires k > 4 (k = 4 is thm1, k = 3 is thm2)\n";
                return 2;
            }
        }
        if (*id == IdentityId::thm4) {
            if (!o.h || !o.N) {
                std::cerr << "error: thm4 requires --h and --N\n";
                return 2;
            }
            const std::int64_t hn = qseries::normalize_class_rep(*o.h, *o.N);
            if (hn == 0) {
                std::cerr << "error: thm4 requires h ≢ 0 (mod N); use thm1 for plain squares\n";
                return 2;
            }
            if (2 * std::abs(hn) == *o.N) {
                std::cerr << "error: thm4 excludes N = ±2h; use prop21-2 for that case\n";
                return 2;
            }
        }
        if (*id == IdentityId::prop21_2 && (!o.h || *o.h == 0)) {
            std::cerr << "error: prop21-2 requires a nonzero --h\n";
            return 2;
        }
        if ((*id == IdentityId::prod_formula || *id == IdentityId::lambert ||
             *id == IdentityId::exponent_roundtrip) &&
            (!o.h || !o.N)) {
            std::cerr << "error: " << name << " requires --h and --N\n";
            return 2;
        }
        tasks.push_back([id, params, range] { return qseries::verify_identity(*id, params, range); });
    }

    const auto reports = run_tasks(tasks, o.jobs);
    const int rc = emit(qseries::reports_to_text(reports, o.format), o);
    if (rc != 0) return rc;
    for (const auto& r : reports)
        if (!r.pass()) return 1;
    return 0;
}

struct TableRows {
    std::string sequence;
    IdentityParams params;
    std::int64_t n_lo = 0;
    std::vector<Int> values;   // values[i] belongs to n = n_lo + i
};

std::string table_to_text(const TableRows& t, const std::string& format) {
    std::ostringstream os;
    if (format == "json") {
        nlohmann::ordered_json j;
        j["sequence"] = t.sequence;
        nlohmann::ordered_json params = nlohmann::ordered_json::object();
        if (t.params.h) params["h"] = *t.params.h;
        if (t.params.N) params["N"] = *t.params.N;
        if (t.params.k) params["k"] = *t.params.k;
        j["params"] = params;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < t.values.size(); ++i) {
            nlohmann::ordered_json row;
            row["n"] = t.n_lo + static_cast<std::int64_t>(i);
            row["value"] = t.values[i].str();
            rows.push_back(row);
        }
        j["rows"] = rows;
        os << j.dump(2) << "\n";
    } else if (format == "csv") {
        os << "n,value\n";
        for (std::size_t i = 0; i < t.values.size(); ++i)
            os << (t.n_lo + static_cast<std::int64_t>(i)) << "," << t.values[i].str() << "\n";
    } else {
        for (std::size_t i = 0; i < t.values.size(); ++i)
            os << (t.n_lo + static_cast<std::int64_t>(i)) << " " << t.values[i].str() << "\n";
    }
    return os.str();
}

std::int64_t require(const std::optional<std::int64_t>& v, const char* what) {
    if (!v) throw qseries::ParamsOutOfRange(std::string("missing parameter: --") + what);
    return *v;
}

int cmd_table(const std::string& name, const CommonOpts& o) {
    using qseries::PartSystem;
    using qseries::WeightTable;
    TableRows t;
    t.sequence = name;
    t.params = params_from(o);

    auto counts_rows = [&](const PartSystem& sys) {
        t.n_lo = 0;
        t.values = qseries::build_signed_counts(sys, o.n_max).values;
    };
    auto weight_rows = [&](const WeightTable& w) {
        t.n_lo = 1;
        for (std::int64_t n = 1; n <= o.n_max; ++n) t.values.emplace_back(w.weight(n));
    };

    if (name == "r_eo") {
        counts_rows(PartSystem::squares());
    } else if (name == "t_eo_plus") {
        counts_rows(PartSystem::triangular());
    } else if (name == "p_eo") {
        counts_rows(PartSystem::kgonal(require(o.k, "k")));
    } else if (name == "r_hn") {
        counts_rows(PartSystem::congruence(require(o.h, "h"), require(o.N, "N")));
    } else if (name == "c") {
        weight_rows(WeightTable::rule_c(o.N.value_or(1)));
    } else if (name == "e") {
        weight_rows(WeightTable::rule_e(require(o.h, "h"), require(o.N, "N")));
    } else if (name == "f") {
        weight_rows(WeightTable::rule_f(require(o.h, "h")));
    } else if (name == "e_prime") {
        weight_rows(WeightTable::rule_e_prime(require(o.k, "k")));
    } else if (name == "lambert") {
        const auto p = qseries::ThetaParams::normalized(require(o.h, "h"), require(o.N, "N"));
        const auto series =
            qseries::lambert_series(qseries::exponent_table(p),
                                    static_cast<std::size_t>(o.n_max) + 1);
        t.n_lo = 1;
        for (std::int64_t n = 1; n <= o.n_max; ++n)
            t.values.push_back(series[static_cast<std::size_t>(n)]);
    } else {
        std::cerr << "error: unknown sequence '" << name << "'\n";
        return 2;
    }
    return emit(table_to_text(t, o.format), o);
}

int cmd_extract(const CommonOpts& o) {
    const std::int64_t h = require(o.h, "h");
    const std::int64_t N = require(o.N, "N");
    const auto order = static_cast<std::size_t>(o.order);
    const auto recovered = qseries::extract_exponent_sequence(h, N, order);
    const auto table = qseries::exponent_table(qseries::ThetaParams::normalized(h, N));

    TableRows t;
    t.sequence = "extracted_exponents";
    t.params.h = o.h;
    t.params.N = o.N;
    t.n_lo = 1;
    bool matches = true;
    for (std::size_t n = 1; n < order; ++n) {
        t.values.push_back(recovered[n]);
        if (recovered[n] != table.weight(static_cast<std::int64_t>(n))) matches = false;
    }
    std::string out = table_to_text(t, o.format);
    if (o.format == "text")
        out += std::string("# recovered table ") + (matches ? "matches" : "DOES NOT match") +
               " rule " + table.name() + "\n";
    const int rc = emit(out, o);
    if (rc != 0) return rc;
    return matches ? 0 : 1;
}

int cmd_km_demo(const CommonOpts& o) {
    const auto result = qseries::km_recursion_rows(o.n_max);
    std::ostringstream os;
    if (o.format == "json") {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : result.rows) {
            nlohmann::ordered_json j;
            j["n"] = row.n;
            j["S"] = row.multinomial_sum.str();
            j["u"] = row.full_coeff.str();
            j["c"] = row.recovered_c.str();
            j["two_a_minus_S"] = row.two_a_minus_sum.str();
            j["sum_matches_truncated"] = row.sum_matches_truncated;
            j["recovers_c"] = row.recovers_c;
            rows.push_back(j);
        }
        os << rows.dump(2) << "\n";
    } else if (o.format == "csv") {
        os << "n,S,u,c,two_a_minus_S,sum_matches_truncated,recovers_c\n";
        for (const auto& row : result.rows)
            os << row.n << "," << row.multinomial_sum.str() << "," << row.full_coeff.str() << ","
               << row.recovered_c.str() << "," << row.two_a_minus_sum.str() << ","
               << (row.sum_matches_truncated ? 1 : 0) << "," << (row.recovers_c ? 1 : 0) << "\n";
    } else {
        os << "  n  S(n)  u_n  c_n  2a(n)-S(n)  checks\n";
        for (const auto& row : result.rows)
            os << "  " << row.n << "  " << row.multinomial_sum.str() << "  "
               << row.full_coeff.str() << "  " << row.recovered_c.str() << "  "
               << row.two_a_minus_sum.str() << "  "
               << (row.sum_matches_truncated ? "sum=trunc" : "SUM MISMATCH") << ","
               << (row.recovers_c ? "c ok" : "C MISMATCH") << "\n";
        os << (result.report.pass() ? "# all rows verified\n" : "# FAILURES present\n");
    }
    const int rc = emit(os.str(), o);
    if (rc != 0) return rc;
    return result.report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-series identity verifier"};
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);

    CommonOpts verify_opts, table_opts, extract_opts, km_opts;
    std::string verify_name, table_name;

    auto* verify = app.add_subcommand("verify", "run identity verification sweeps");
    verify->add_option("identity", verify_name,
                       "identity id (thm1, thm1_2adic, thm2, thm3, thm4, prop21_2, prod_formula, "
                       "eta_quotient, lambert, exponent_roundtrip, km_recursion) or 'all'")
        ->required();
    add_common(verify, verify_opts, /*with_order=*/true, /*with_jobs=*/true);

    auto* table = app.add_subcommand("table", "emit an exact sequence table");
    table->add_option("sequence", table_name,
                      "sequence name (r_eo, t_eo_plus, p_eo, r_hn, c, e, f, e_prime, lambert)")
        ->required();
    add_common(table, table_opts, /*with_order=*/false, /*with_jobs=*/false);

    auto* extract = app.add_subcommand("extract", "recover product exponents from raw theta coefficients");
    add_common(extract, extract_opts, /*with_order=*/true, /*with_jobs=*/false);

    auto* km = app.add_subcommand("km-demo", "multinomial recursion cancellation demo");
    add_common(km, km_opts, /*with_order=*/false, /*with_jobs=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(verify_name, verify_opts);
        if (table->parsed()) return cmd_table(table_name, table_opts);
        if (extract->parsed()) return cmd_extract(extract_opts);
        if (km->parsed()) return cmd_km_demo(km_opts);
    } catch (const qseries::ParamsOutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qseries::KOutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qseries::InputTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
