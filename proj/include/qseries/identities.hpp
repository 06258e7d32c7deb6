#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "qseries/arith.hpp"
#include "qseries/errors.hpp"
#include "qseries/rep_counts.hpp"
#include "qseries/report.hpp"
#include "qseries/series.hpp"
#include "qseries/theta.hpp"

namespace qseries {

/* sum_{d|n} d * w_d for a periodic weight rule. */
inline Int divisor_weighted_sum(const WeightTable& w, std::int64_t n) {
    Int acc = 0;
    for (std::int64_t d : divisors(n)) acc += Int(d) * w.weight(d);
    return acc;
}

/* Divisor-sum sides of the five identities. All values are exact; the
 * triangular and k-gonal identities are evaluated in their pre-scaled
 * integral form (x8 and x8(k-2)) by the sweep drivers. */

inline Int rhs_thm1(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("rhs_thm1: n must be positive");
    return divisor_weighted_sum(WeightTable::rule_c(1), n);
}

/* The 2-adic form: with n = 2^t n' (n' odd),
 * (2 - 6 delta_{t>0}) sigma(n') - 4 sigma(n/4), the last sum empty unless 4 | n. */
inline Int rhs_thm1_2adic(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("rhs_thm1_2adic: n must be positive");
    const auto [t, odd] = two_adic_split(n);
    Int sigma_odd = 0;
    for (std::int64_t d : divisors(odd)) sigma_odd += d;
    Int acc = (t > 0 ? Int(-4) : Int(2)) * sigma_odd;
    if (n % 4 == 0) {
        Int sigma_q = 0;
        for (std::int64_t d : divisors(n / 4)) sigma_q += d;
        acc -= 4 * sigma_q;
    }
    return acc;
}

inline Int rhs_thm2(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("rhs_thm2: n must be positive");
    return divisor_weighted_sum(WeightTable::rule_alt(), n);
}

inline Int rhs_thm3(std::int64_t k, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("rhs_thm3: n must be positive");
    return divisor_weighted_sum(WeightTable::rule_e_prime(k), n);
}

inline Int rhs_thm4(std::int64_t h, std::int64_t N, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("rhs_thm4: n must be positive");
    return divisor_weighted_sum(WeightTable::rule_e(h, N), n);
}

inline Int rhs_prop21_2(std::int64_t h, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("rhs_prop21_2: n must be positive");
    return divisor_weighted_sum(WeightTable::rule_f(h), n);
}

namespace detail {

inline void check_failure(IdentityReport& report, std::int64_t n, const Int& lhs, const Int& rhs) {
    if (lhs != rhs) report.failures.push_back({n, lhs, rhs});
}

}  // namespace detail

/* Weighted squares vs divisor sum, n = 1..n_max, plus agreement of the two
 * divisor-sum forms. */
inline IdentityReport verify_thm1(std::int64_t n_max) {
    ReportTimer timer;
    IdentityReport report;
    report.id = IdentityId::thm1;
    report.range_lo = 1;
    report.range_hi = n_max;

    const auto counts = build_signed_counts(PartSystem::squares(), n_max);
    const auto c = WeightTable::rule_c(1);
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const Int rhs = divisor_weighted_sum(c, n);
        detail::check_failure(report, n, weighted_lhs_squares(n, counts), rhs);
        detail::check_failure(report, n, rhs, rhs_thm1_2adic(n));
    }
    report.elapsed_ms = timer.elapsed_ms();
    return report;
}

/* Weighted squares against the 2-adic divisor-sum form only. */
inline IdentityReport verify_thm1_2adic(std::int64_t n_max) {
    ReportTimer timer;
    IdentityReport report;
    report.id = IdentityId::thm1_2adic;
    report.range_lo = 1;
    report.range_hi = n_max;

    const auto counts = build_signed_counts(PartSystem::squares(), n_max);
    for (std::int64_t n = 1; n <= n_max; ++n)
        detail::check_failure(report, n, weighted_lhs_squares(n, counts), rhs_thm1_2adic(n));
    report.elapsed_ms = timer.elapsed_ms();
    return report;
}

/* Triangular identity, verified as
 * sum (2m+1)^2 t(n - T_m) = 8 sum_{d|n} (-1)^(d+1) d. */
inline IdentityReport verify_thm2(std::int64_t n_max) {
    ReportTimer timer;
    IdentityReport report;
    report.id = IdentityId::thm2;
    report.range_lo = 1;
    report.range_hi = n_max;

    const auto counts = build_signed_counts(PartSystem::triangular(), n_max);
    const auto alt = WeightTable::rule_alt();
    for (std::int64_t n = 1; n <= n_max; ++n)
        detail::check_failure(report, n, weighted_lhs_triangular_x8(n, counts),
                              8 * divisor_weighted_sum(alt, n));
    report.elapsed_ms = timer.elapsed_ms();
    return report;
}

/* k-gonal identity (k > 4), verified in the 8(k-2)-scaled form. */
inline IdentityReport verify_thm3(std::int64_t k, std::int64_t n_max) {
    if (k <= 4) throw KOutOfRange("thm3: requires k > 4");
    ReportTimer timer;
    IdentityReport report;
    report.id = IdentityId::thm3;
    report.params.k = k;
    report.range_lo = 1;
    report.range_hi = n_max;

    const auto counts = build_signed_counts(PartSystem::kgonal(k), n_max);
    const auto eprime = WeightTable::rule_e_prime(k);
    const Int scale = Int(8) * (k - 2);
    for (std::int64_t n = 1; n <= n_max; ++n)
        detail::check_failure(report, n, weighted_lhs_kgonal_scaled(k, n, counts),
                              scale * divisor_weighted_sum(eprime, n));
    report.elapsed_ms = timer.elapsed_ms();
    return report;
}

/* Congruence-class identity for h != 0, N != ±2h. */
inline IdentityReport verify_thm4(std::int64_t h, std::int64_t N, std::int64_t n_max) {
    const std::int64_t hn = normalize_class_rep(h, N);
    if (hn == 0)
        throw ParamsOutOfRange("thm4: h ≡ 0 (mod N) is the plain squares case (thm1)");
    if (2 * std::abs(hn) == N)
        throw ParamsOutOfRange("thm4: N = ±2h is excluded; use prop21_2");
    ReportTimer timer;
    IdentityReport report;
    report.id = IdentityId::thm4;
    report.params.h = hn;
    report.params.N = N;
    report.range_lo = 1;
    report.range_hi = n_max;

    const auto counts = build_signed_counts(PartSystem::congruence(hn, N), n_max);
    const auto e = WeightTable::rule_e(hn, N);
    for (std::int64_t n = 1; n <= n_max; ++n)
        detail::check_failure(report, n, weighted_lhs_general(hn, N, n, counts),
                              divisor_weighted_sum(e, n));
    report.elapsed_ms = timer.elapsed_ms();
    return report;
}

/* The N = 2h variant with parts indexed by s >= 1. */
inline IdentityReport verify_prop21_2(std::int64_t h, std::int64_t n_max) {
    if (h == 0) throw ParamsOutOfRange("prop21_2: requires h != 0");
    h = std::abs(h);
    ReportTimer timer;
    IdentityReport report;
    report.id = IdentityId::prop21_2;
    report.params.h = h;
    report.params.N = 2 * h;
    report.range_lo = 1;
    report.range_hi = n_max;

    const auto counts = build_signed_counts(PartSystem::congruence_plus(h, 2 * h), n_max);
    const auto f = WeightTable::rule_f(h);
    for (std::int64_t n = 1; n <= n_max; ++n)
        detail::check_failure(report, n, weighted_lhs_half(h, n, counts),
                              divisor_weighted_sum(f, n));
    report.elapsed_ms = timer.elapsed_ms();
    return report;
}

/* log-derivative identity: q theta'/theta = h^2 + sum_n (sum_{d|n} d a_d) q^n,
 * coefficientwise to the given order. */
inline IdentityReport verify_lambert(std::int64_t h, std::int64_t N, std::size_t order) {
    const auto p = ThetaParams::normalized(h, N);
    ReportTimer timer;
    IdentityReport report;
    report.id = IdentityId::lambert;
    report.params.h = p.h;
    report.params.N = p.N;
    report.range_lo = 0;
    report.range_hi = static_cast<std::int64_t>(order) - 1;

    const std::size_t h2 = static_cast<std::size_t>(p.h * p.h);
    const Series theta = theta_series(p, order + h2);
    const Series lhs = log_derivative(theta);   // order shrinks by h^2
    Series rhs = lambert_series(exponent_table(p), order);
    rhs.coeff(0) += Int(p.h) * p.h;
    for (std::size_t e = 0; e < order; ++e)
        detail::check_failure(report, static_cast<std::int64_t>(e), lhs[e], rhs[e]);
    report.elapsed_ms = timer.elapsed_ms();
    return report;
}

/* From raw theta coefficients alone: log-derivative, strip h^2, Möbius
 * inversion of the divisor sums, and comparison against the closed-form
 * exponent table, for 1 <= n < order. */
inline IdentityReport extract_exponents_roundtrip(std::int64_t h, std::int64_t N,
                                                  std::size_t order) {
    const auto p = ThetaParams::normalized(h, N);
    ReportTimer timer;
    IdentityReport report;
    report.id = IdentityId::exponent_roundtrip;
    report.params.h = p.h;
    report.params.N = p.N;
    report.range_lo = 1;
    report.range_hi = static_cast<std::int64_t>(order) - 1;

    const std::size_t h2 = static_cast<std::size_t>(p.h * p.h);
    const Series ld = log_derivative(theta_series(p, order + h2));
    std::vector<Int> b(order);
    for (std::size_t n = 1; n < order; ++n) b[n] = ld[n];

    const auto table = exponent_table(p);
    try {
        const std::vector<Int> a = invert_divisor_sum(b);
        for (std::size_t n = 1; n < order; ++n)
            detail::check_failure(report, static_cast<std::int64_t>(n), a[n],
                                  Int(table.weight(static_cast<std::int64_t>(n))));
    } catch (const NonIntegralExponent&) {
        report.failures.push_back({-1, 0, 0});   // inversion itself failed
    }
    report.elapsed_ms = timer.elapsed_ms();
    return report;
}

/* Recovered exponents of theta_{h,N} as a plain sequence a_1..a_{order-1},
 * for the table/extract front ends. */
inline std::vector<Int> extract_exponent_sequence(std::int64_t h, std::int64_t N,
                                                  std::size_t order) {
    const auto p = ThetaParams::normalized(h, N);
    const std::size_t h2 = static_cast<std::size_t>(p.h * p.h);
    const Series ld = log_derivative(theta_series(p, order + h2));
    std::vector<Int> b(order);
    for (std::size_t n = 1; n < order; ++n) b[n] = ld[n];
    return invert_divisor_sum(b);
}

/* One row of the multinomial-recursion demonstration at index n:
 *   multinomial_sum   S(n)  = sum over nu_1+2nu_2+...+(n-1)nu_{n-1} = n of
 *                             (-1)^(nu_1+...+nu_{n-1}) C(c_1,nu_1)...C(c_{n-1},nu_{n-1})
 *   truncated_coeff         = [q^n] prod_{i=1}^{n-1} (1-q^i)^(c_i)
 *   full_coeff        u_n   = [q^n] prod_{i=1}^{n}   (1-q^i)^(c_i)
 *   recovered_c             = S(n) - u_n
 *   two_a_minus_sum         = 2 a(n) - S(n), a(n) the n-th theta coefficient
 * S(n) = truncated_coeff and recovered_c = c_n are definitional and are the
 * asserted identities; two_a_minus_sum is recorded for inspection only. */
struct KmRow {
    std::int64_t n = 0;
    Int multinomial_sum;
    Int truncated_coeff;
    Int full_coeff;
    Int recovered_c;
    Int two_a_minus_sum;
    bool sum_matches_truncated = false;
    bool recovers_c = false;
};

struct KmResult {
    IdentityReport report;
    std::vector<KmRow> rows;
};

namespace detail {

constexpr std::int64_t kKmLimit = 50;   // the sum has p(n) terms

}  // namespace detail

inline KmResult km_recursion_rows(std::int64_t n_max) {
    if (n_max < 1) throw std::invalid_argument("km_recursion: n_max must be positive");
    if (n_max > detail::kKmLimit)
        throw InputTooLarge("km_recursion: n_max exceeds bound " +
                            std::to_string(detail::kKmLimit));
    ReportTimer timer;
    KmResult result;
    result.report.id = IdentityId::km_recursion;
    result.report.range_lo = 1;
    result.report.range_hi = n_max;

    const auto c = WeightTable::rule_c(1);
    const std::size_t order = static_cast<std::size_t>(n_max) + 1;
    const Series theta = theta_series(ThetaParams::normalized(0, 1), order);

    // running product prod_{i<=n} (1-q^i)^(c_i), extended one factor per row
    std::vector<Int> prod(order);
    prod[0] = 1;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        KmRow row;
        row.n = n;
        row.truncated_coeff = prod[static_cast<std::size_t>(n)];

        Int sum = 0;
        if (n >= 2) {
            enumerate_partitions(n, n - 1, [&](const std::vector<std::int64_t>& nu) {
                Int term = 1;
                std::int64_t count = 0;
                for (std::size_t i = 0; i < nu.size(); ++i) {
                    if (nu[i] == 0) continue;
                    term *= gen_binomial(c.weight(static_cast<std::int64_t>(i) + 1), nu[i]);
                    count += nu[i];
                }
                sum += (count % 2 != 0) ? -term : term;
            });
        }
        row.multinomial_sum = sum;

        const int cn = c.weight(n);
        for (int i = 0; i < cn; ++i) detail::mul_binomial_factor(prod, static_cast<std::size_t>(n), -1);
        for (int i = 0; i > cn; --i) detail::div_binomial_factor(prod, static_cast<std::size_t>(n), -1);

        row.full_coeff = prod[static_cast<std::size_t>(n)];
        row.recovered_c = row.multinomial_sum - row.full_coeff;
        row.two_a_minus_sum = 2 * theta[static_cast<std::size_t>(n)] - row.multinomial_sum;
        row.sum_matches_truncated = row.multinomial_sum == row.truncated_coeff;
        row.recovers_c = row.recovered_c == cn;

        if (!row.sum_matches_truncated)
            result.report.failures.push_back({n, row.multinomial_sum, row.truncated_coeff});
        if (!row.recovers_c)
            result.report.failures.push_back({n, row.recovered_c, Int(cn)});
        result.rows.push_back(std::move(row));
    }
    result.report.elapsed_ms = timer.elapsed_ms();
    return result;
}

inline IdentityReport km_recursion_check(std::int64_t n_max) {
    return km_recursion_rows(n_max).report;
}

/* Dispatcher used by the command-line driver. */
inline IdentityReport verify_identity(IdentityId id, const IdentityParams& params,
                                      std::int64_t n_max) {
    auto need = [](const std::optional<std::int64_t>& v, const char* what) {
        if (!v) throw ParamsOutOfRange(std::string("missing parameter: ") + what);
        return *v;
    };
    switch (id) {
        case IdentityId::thm1: return verify_thm1(n_max);
        case IdentityId::thm1_2adic: return verify_thm1_2adic(n_max);
        case IdentityId::thm2: return verify_thm2(n_max);
        case IdentityId::thm3: return verify_thm3(need(params.k, "k"), n_max);
        case IdentityId::thm4:
            return verify_thm4(need(params.h, "h"), need(params.N, "N"), n_max);
        case IdentityId::prop21_2: return verify_prop21_2(need(params.h, "h"), n_max);
        case IdentityId::prod_formula:
            return verify_product_formula(
                ThetaParams::normalized(need(params.h, "h"), need(params.N, "N")),
                static_cast<std::size_t>(n_max));
        case IdentityId::eta_quotient:
            return verify_theta_eta_quotient(static_cast<std::size_t>(n_max));
        case IdentityId::lambert:
            return verify_lambert(need(params.h, "h"), need(params.N, "N"),
                                  static_cast<std::size_t>(n_max));
        case IdentityId::exponent_roundtrip:
            return extract_exponents_roundtrip(need(params.h, "h"), need(params.N, "N"),
                                               static_cast<std::size_t>(n_max));
        case IdentityId::km_recursion: return km_recursion_check(n_max);
    }
    throw std::logic_error("unknown identity id");
}

}  // namespace qseries
