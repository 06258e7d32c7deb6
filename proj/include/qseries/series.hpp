#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qseries/arith.hpp"
#include "qseries/bigint.hpp"
#include "qseries/errors.hpp"

namespace qseries {

/* Dense truncated power series in q with exact integer coefficients.
 * A Series of order M carries the coefficients of q^0 .. q^(M-1); every
 * operation is exact below the truncation bound, and binary operations
 * truncate to the smaller order of their operands. Values are immutable
 * in practice: all operations below are pure functions. */
class Series {
public:
    explicit Series(std::size_t order) : coeffs_(order) {
        if (order == 0) throw std::invalid_argument("Series: order must be positive");
    }

    Series(std::initializer_list<Int> coeffs) : coeffs_(coeffs) {
        if (coeffs_.empty()) throw std::invalid_argument("Series: order must be positive");
    }

    static Series from_coeffs(std::vector<Int> coeffs) {
        if (coeffs.empty()) throw std::invalid_argument("Series: order must be positive");
        Series s(coeffs.size());
        s.coeffs_ = std::move(coeffs);
        return s;
    }

    std::size_t order() const { return coeffs_.size(); }

    const Int& operator[](std::size_t e) const { return coeffs_[e]; }
    Int& coeff(std::size_t e) { return coeffs_[e]; }
    const std::vector<Int>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const Int& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    /* Smallest exponent with a nonzero coefficient, if any. */
    std::optional<std::size_t> valuation() const {
        for (std::size_t e = 0; e < coeffs_.size(); ++e)
            if (coeffs_[e] != 0) return e;
        return std::nullopt;
    }

    /* Forget coefficients at exponents >= m. */
    Series truncated(std::size_t m) const {
        if (m == 0 || m > order())
            throw std::invalid_argument("Series::truncated: bad order");
        Series out(m);
        for (std::size_t e = 0; e < m; ++e) out.coeffs_[e] = coeffs_[e];
        return out;
    }

    /* q^k * this, materialized at the given order. The shift must not push
     * known coefficients past the result order unless they are cut off at
     * the top, i.e. order <= this->order() + k. */
    Series shifted_up(std::size_t k, std::size_t order) const {
        if (order > this->order() + k)
            throw std::invalid_argument("Series::shifted_up: result order exceeds known range");
        Series out(order);
        for (std::size_t e = 0; e + k < order && e < this->order(); ++e)
            out.coeffs_[e + k] = coeffs_[e];
        return out;
    }

    friend bool operator==(const Series& a, const Series& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    std::vector<Int> coeffs_;
};

/* Coefficients agree for every exponent below m (both operands must know
 * their coefficients that far). */
inline bool agree_to(const Series& a, const Series& b, std::size_t m) {
    if (a.order() < m || b.order() < m)
        throw std::invalid_argument("agree_to: order too small for requested range");
    for (std::size_t e = 0; e < m; ++e)
        if (a[e] != b[e]) return false;
    return true;
}

/* c * q^e truncated at the given order; exponents at or beyond the order
 * fall off and leave the zero series. */
inline Series monomial(Int c, std::size_t e, std::size_t order) {
    Series out(order);
    if (e < order) out.coeff(e) = std::move(c);
    return out;
}

inline Series add(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.order(), b.order());
    Series out(n);
    for (std::size_t e = 0; e < n; ++e) out.coeff(e) = a[e] + b[e];
    return out;
}

inline Series sub(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.order(), b.order());
    Series out(n);
    for (std::size_t e = 0; e < n; ++e) out.coeff(e) = a[e] - b[e];
    return out;
}

/* Cauchy product truncated at min(order a, order b). */
inline Series mul(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.order(), b.order());
    Series out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j) {
            if (b[j] == 0) continue;
            out.coeff(i + j) += a[i] * b[j];
        }
    }
    return out;
}

/* q d/dq: multiplies the coefficient of q^n by n. This is how the weight
 * operator (1/2πi) d/dτ acts on q-expansions. */
inline Series q_dq(const Series& a) {
    Series out(a.order());
    for (std::size_t e = 1; e < a.order(); ++e)
        out.coeff(e) = Int(e) * a[e];
    return out;
}

/* The unique x with a = b*x, by long division, with every coefficient
 * division checked exact over the integers. Result order is
 * min(order a, order b) - valuation(b). */
inline Series div_exact(const Series& a, const Series& b) {
    const auto vopt = b.valuation();
    if (!vopt) throw ZeroDivisor("div_exact: divisor is identically zero");
    const std::size_t v = *vopt;
    const std::size_t n = std::min(a.order(), b.order());
    if (v >= n) throw NonIntegralQuotient("div_exact: divisor valuation exceeds result order");
    const auto aval = a.valuation();
    if (aval && *aval < v)
        throw NonIntegralQuotient("div_exact: valuation(a) < valuation(b)");
    const std::size_t len = n - v;

    Series x(len);
    const Int& lead = b[v];
    for (std::size_t k = 0; k < len; ++k) {
        Int acc = a[v + k];
        for (std::size_t i = 1; i <= k; ++i) {
            if (b[v + i] == 0) continue;
            acc -= b[v + i] * x[k - i];
        }
        Int q, r;
        divide_qr(acc, lead, q, r);
        if (r != 0)
            throw NonIntegralQuotient("div_exact: non-exact division at exponent " +
                                      std::to_string(v + k));
        x.coeff(k) = std::move(q);
    }
    return x;
}

/* q a'/a as a q-expansion: with a = q^v * u this is v + q u'/u, an integer
 * series whenever u has one (true for every series handled here, where u
 * is a constant times a product of (1-q^n) powers). Order shrinks by v. */
inline Series log_derivative(const Series& a) {
    const auto vopt = a.valuation();
    if (!vopt) throw ZeroDivisor("log_derivative: series is identically zero");
    const std::size_t v = *vopt;
    Series u(a.order() - v);
    for (std::size_t e = 0; e < u.order(); ++e) u.coeff(e) = a[v + e];
    Series out = div_exact(q_dq(u), u);
    out.coeff(0) += Int(v);
    return out;
}

namespace detail {

/* In-place multiply by (1 + s*q^e) on a raw coefficient vector. */
inline void mul_binomial_factor(std::vector<Int>& c, std::size_t e, int s) {
    if (e == 0 || e >= c.size()) return;
    for (std::size_t k = c.size(); k-- > e;) {
        if (c[k - e] == 0) continue;
        if (s > 0)
            c[k] += c[k - e];
        else
            c[k] -= c[k - e];
    }
}

/* In-place divide by (1 + s*q^e): the inverse accumulation, exact. */
inline void div_binomial_factor(std::vector<Int>& c, std::size_t e, int s) {
    if (e == 0 || e >= c.size()) return;
    for (std::size_t k = e; k < c.size(); ++k) {
        if (c[k - e] == 0) continue;
        if (s > 0)
            c[k] -= c[k - e];
        else
            c[k] += c[k - e];
    }
}

}  // namespace detail

/* prod_{n=1}^{M-1} (1 - q^n)^(-a_n) truncated at order M, for any integer
 * exponent rule n -> a_n (a WeightTable or a lambda). Each factor is
 * applied as |a_n| exact in-place passes, so no division remainder can
 * appear. */
template <class Rule>
Series product_from_exponents(const Rule& exponent_of, std::size_t order) {
    std::vector<Int> c(order);
    c[0] = 1;
    for (std::size_t n = 1; n < order; ++n) {
        const std::int64_t a = exponent_of(static_cast<std::int64_t>(n));
        for (std::int64_t i = 0; i < a; ++i) detail::div_binomial_factor(c, n, -1);
        for (std::int64_t i = 0; i > a; --i) detail::mul_binomial_factor(c, n, -1);
    }
    return Series::from_coeffs(std::move(c));
}

/* sum_{n=1}^{M-1} (sum_{d|n} d*w_d) q^n: the q-expansion of the Lambert
 * series sum_n n*w_n*q^n/(1-q^n), computed by sieving over multiples. */
template <class Rule>
Series lambert_series(const Rule& weight_of, std::size_t order) {
    Series out(order);
    for (std::size_t d = 1; d < order; ++d) {
        const std::int64_t w = weight_of(static_cast<std::int64_t>(d));
        if (w == 0) continue;
        const Int term = Int(d) * w;
        for (std::size_t m = d; m < order; m += d) out.coeff(m) += term;
    }
    return out;
}

/* Debug form "c0 + c1*q + ... + O(q^M)", zero terms omitted. */
inline std::string to_string(const Series& s) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t e = 0; e < s.order(); ++e) {
        if (s[e] == 0) continue;
        Int c = s[e];
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        if (e == 0)
            os << c;
        else {
            if (c != 1) os << c << "*";
            os << "q";
            if (e > 1) os << "^" << e;
        }
    }
    if (first) os << "0";
    os << " + O(q^" << s.order() << ")";
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Series& s) {
    return os << to_string(s);
}

inline Series operator+(const Series& a, const Series& b) { return add(a, b); }
inline Series operator-(const Series& a, const Series& b) { return sub(a, b); }
inline Series operator*(const Series& a, const Series& b) { return mul(a, b); }

}  // namespace qseries
