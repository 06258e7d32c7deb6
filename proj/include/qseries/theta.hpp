#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>

#include "qseries/arith.hpp"
#include "qseries/errors.hpp"
#include "qseries/report.hpp"
#include "qseries/series.hpp"

namespace qseries {

/* Parameters of the unary theta function
 *
 *     theta_{h,N}(q) = sum_{n ≡ h (mod N)} q^(n^2),
 *
 * with h reduced into (-N/2, N/2] so that h^2 is minimal in its class.
 * Three shapes of exponent table attach to (h, N):
 *   generic  h != 0 and N != 2h   -> rule e
 *   h_zero   h == 0               -> rule c
 *   half     N == 2h              -> rule f (the class contains both ±h)
 */
struct ThetaParams {
    std::int64_t h = 0;
    std::int64_t N = 1;

    enum class Case { generic, h_zero, half };

    static ThetaParams normalized(std::int64_t h, std::int64_t N) {
        return ThetaParams{normalize_class_rep(h, N), N};
    }

    Case case_tag() const {
        if (h == 0) return Case::h_zero;
        if (2 * h == N) return Case::half;
        return Case::generic;
    }

    /* delta_{N=±2h}: the leading coefficient of theta_{h,N} is 1 + delta. */
    bool doubled() const { return case_tag() == Case::half; }
};

/* Direct q-expansion: coefficient of q^m counts {n ≡ h (mod N) : n^2 = m}.
 * Enumeration runs over n itself (not paired ±n), which keeps the h = 0
 * constant term at 1 without a special case. */
inline Series theta_series(const ThetaParams& p, std::size_t order) {
    Series out(order);
    const std::int64_t radius = isqrt(static_cast<std::int64_t>(order) - 1);
    const std::int64_t t_lo = ceil_div(-radius - p.h, p.N);
    const std::int64_t t_hi = floor_div(radius - p.h, p.N);
    for (std::int64_t t = t_lo; t <= t_hi; ++t) {
        const std::int64_t n = p.h + t * p.N;
        out.coeff(static_cast<std::size_t>(n * n)) += 1;
    }
    return out;
}

/* Jacobi triple product form:
 *
 *   theta_{h,N} = q^(h^2) prod_{n>=1} (1+q^((2n-1)N^2+2hN)) (1+q^((2n-1)N^2-2hN)) (1-q^(2nN^2)).
 *
 * Exactly when N = 2h the n = 1 factor of the middle family has exponent 0
 * and contributes the constant 2; it is folded in as a scalar so the factor
 * loop stays uniform. */
inline Series triple_product_series(const ThetaParams& p, std::size_t order) {
    const std::int64_t h2 = p.h * p.h;
    if (h2 >= static_cast<std::int64_t>(order)) return Series(order);
    const std::size_t len = order - static_cast<std::size_t>(h2);

    std::vector<Int> u(len);
    u[0] = 1;
    bool saw_zero_exponent = false;
    const std::int64_t n2 = p.N * p.N;
    for (std::int64_t n = 1;; ++n) {
        const std::int64_t e_plus = (2 * n - 1) * n2 + 2 * p.h * p.N;
        const std::int64_t e_minus = (2 * n - 1) * n2 - 2 * p.h * p.N;
        const std::int64_t e_even = 2 * n * n2;
        if (std::min({e_plus, e_minus, e_even}) >= static_cast<std::int64_t>(len)) break;
        for (std::int64_t e : {e_plus, e_minus}) {
            if (e == 0)
                saw_zero_exponent = true;   // (1 + q^0) = 2
            else
                detail::mul_binomial_factor(u, static_cast<std::size_t>(e), +1);
        }
        detail::mul_binomial_factor(u, static_cast<std::size_t>(e_even), -1);
    }
    if (saw_zero_exponent)
        for (Int& c : u) c *= 2;

    return Series::from_coeffs(std::move(u)).shifted_up(static_cast<std::size_t>(h2), order);
}

/* q^(-h^2) theta_{h,N} / (1+delta): the unit series with constant term 1
 * whose reciprocal is the generating function of the signed representation
 * counts (geometric-series expansion of 1/(1 - (1 - unit))). */
inline Series theta_unit(const ThetaParams& p, std::size_t order) {
    const std::size_t h2 = static_cast<std::size_t>(p.h * p.h);
    const Series t = theta_series(p, order + h2);
    Series u(order);
    for (std::size_t e = 0; e < order; ++e) u.coeff(e) = t[e + h2];
    if (p.doubled()) {
        for (std::size_t e = 0; e < order; ++e) {
            Int q, r;
            divide_qr(u.coeff(e), Int(2), q, r);
            if (r != 0) throw NonIntegralQuotient("theta_unit: odd coefficient in doubled case");
            u.coeff(e) = std::move(q);
        }
    }
    return u;
}

/* The exponent table of theta_{h,N}: the integer sequence a_n with
 * theta_{h,N} = (1+delta) q^(h^2) prod_{n>=1} (1-q^n)^(-a_n). */
inline WeightTable exponent_table(const ThetaParams& p) {
    switch (p.case_tag()) {
        case ThetaParams::Case::h_zero: return WeightTable::rule_c(p.N);
        case ThetaParams::Case::half: return WeightTable::rule_f(p.h);
        case ThetaParams::Case::generic: return WeightTable::rule_e(p.h, p.N);
    }
    throw std::logic_error("unreachable");
}

/* Builds theta_{h,N} three ways -- direct expansion, triple product, and
 * (1+delta) q^(h^2) prod (1-q^n)^(-a_n) -- and records every exponent where
 * they disagree. */
inline IdentityReport verify_product_formula(const ThetaParams& p, std::size_t order) {
    ReportTimer timer;
    IdentityReport report;
    report.id = IdentityId::prod_formula;
    report.params.h = p.h;
    report.params.N = p.N;
    report.range_lo = 0;
    report.range_hi = static_cast<std::int64_t>(order) - 1;

    const Series direct = theta_series(p, order);
    const Series triple = triple_product_series(p, order);

    Series via_table(order);
    const std::int64_t h2 = p.h * p.h;
    if (h2 < static_cast<std::int64_t>(order)) {
        Series u = product_from_exponents(exponent_table(p), order - static_cast<std::size_t>(h2));
        if (p.doubled()) u = mul(u, monomial(2, 0, u.order()));
        via_table = u.shifted_up(static_cast<std::size_t>(h2), order);
    }

    for (std::size_t e = 0; e < order; ++e) {
        if (direct[e] != triple[e])
            report.failures.push_back({static_cast<std::int64_t>(e), direct[e], triple[e]});
        if (direct[e] != via_table[e])
            report.failures.push_back({static_cast<std::int64_t>(e), direct[e], via_table[e]});
    }
    report.elapsed_ms = timer.elapsed_ms();
    return report;
}

/* theta(q) = sum_{n in Z} q^(n^2) against the eta-style quotient
 *
 *   prod_{n>=1} (1-q^(2n))^5 / ((1-q^(4n))^2 (1-q^n)^2),
 *
 * assembled once directly from those three factor families and once through
 * the exponent table c. */
inline IdentityReport verify_theta_eta_quotient(std::size_t order) {
    ReportTimer timer;
    IdentityReport report;
    report.id = IdentityId::eta_quotient;
    report.range_lo = 0;
    report.range_hi = static_cast<std::int64_t>(order) - 1;

    const Series direct = theta_series(ThetaParams::normalized(0, 1), order);
    const Series via_table = product_from_exponents(WeightTable::rule_c(1), order);

    std::vector<Int> u(order);
    u[0] = 1;
    for (std::size_t n = 1; n < order; ++n) {
        if (2 * n < order)
            for (int i = 0; i < 5; ++i) detail::mul_binomial_factor(u, 2 * n, -1);
        if (4 * n < order)
            for (int i = 0; i < 2; ++i) detail::div_binomial_factor(u, 4 * n, -1);
        for (int i = 0; i < 2; ++i) detail::div_binomial_factor(u, n, -1);
    }
    const Series assembled = Series::from_coeffs(std::move(u));

    for (std::size_t e = 0; e < order; ++e) {
        if (direct[e] != via_table[e])
            report.failures.push_back({static_cast<std::int64_t>(e), direct[e], via_table[e]});
        if (direct[e] != assembled[e])
            report.failures.push_back({static_cast<std::int64_t>(e), direct[e], assembled[e]});
    }
    report.elapsed_ms = timer.elapsed_ms();
    return report;
}

}  // namespace qseries
