#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qseries/bigint.hpp"

namespace qseries {

enum class IdentityId {
    thm1,
    thm1_2adic,
    thm2,
    thm3,
    thm4,
    prop21_2,
    prod_formula,
    eta_quotient,
    lambert,
    exponent_roundtrip,
    km_recursion,
};

inline std::string to_string(IdentityId id) {
    switch (id) {
        case IdentityId::thm1: return "thm1";
        case IdentityId::thm1_2adic: return "thm1_2adic";
        case IdentityId::thm2: return "thm2";
        case IdentityId::thm3: return "thm3";
        case IdentityId::thm4: return "thm4";
        case IdentityId::prop21_2: return "prop21_2";
        case IdentityId::prod_formula: return "prod_formula";
        case IdentityId::eta_quotient: return "eta_quotient";
        case IdentityId::lambert: return "lambert";
        case IdentityId::exponent_roundtrip: return "exponent_roundtrip";
        case IdentityId::km_recursion: return "km_recursion";
    }
    throw std::logic_error("unknown identity id");
}

inline std::optional<IdentityId> identity_from_string(std::string name) {
    for (char& ch : name)
        if (ch == '-') ch = '_';
    for (IdentityId id :
         {IdentityId::thm1, IdentityId::thm1_2adic, IdentityId::thm2, IdentityId::thm3,
          IdentityId::thm4, IdentityId::prop21_2, IdentityId::prod_formula,
          IdentityId::eta_quotient, IdentityId::lambert, IdentityId::exponent_roundtrip,
          IdentityId::km_recursion})
        if (to_string(id) == name) return id;
    return std::nullopt;
}

/* Parameters a verification was run with; only the relevant ones are set. */
struct IdentityParams {
    std::optional<std::int64_t> h;
    std::optional<std::int64_t> N;
    std::optional<std::int64_t> k;
};

struct Failure {
    std::int64_t n = 0;   // index (or exponent) where the two sides differ
    Int lhs;
    Int rhs;
};

/* Machine-readable verification outcome. A report passes exactly when the
 * failure list is empty; all failures in range are collected rather than
 * stopping at the first, so systematic patterns stay visible. */
struct IdentityReport {
    IdentityId id = IdentityId::thm1;
    IdentityParams params;
    std::int64_t range_lo = 0;
    std::int64_t range_hi = 0;
    std::vector<Failure> failures;
    std::int64_t elapsed_ms = 0;

    bool pass() const { return failures.empty(); }
};

/* Wall-clock scope timer for filling in elapsed_ms. */
class ReportTimer {
public:
    ReportTimer() : start_(std::chrono::steady_clock::now()) {}

    std::int64_t elapsed_ms() const {
        const auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace qseries
