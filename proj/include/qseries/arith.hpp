#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "qseries/bigint.hpp"
#include "qseries/errors.hpp"

namespace qseries {

/* All divisors of n in ascending order, by trial division up to sqrt(n). */
inline std::vector<std::int64_t> divisors(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("divisors: n must be positive");
    std::vector<std::int64_t> small, large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/* Möbius function: 0 on non-squarefree n, otherwise (-1)^(number of prime factors). */
inline int mobius(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("mobius: n must be positive");
    int sign = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

struct TwoAdicSplit {
    int exponent = 0;        // t
    std::int64_t odd = 1;    // n', with n = 2^t * n'
};

/* n = 2^t * n' with n' odd. */
inline TwoAdicSplit two_adic_split(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("two_adic_split: n must be positive");
    TwoAdicSplit s;
    while (n % 2 == 0) {
        n /= 2;
        ++s.exponent;
    }
    s.odd = n;
    return s;
}

/* Integer square root, exact: the largest x >= 0 with x*x <= v. */
inline std::int64_t isqrt(std::int64_t v) {
    if (v < 0) throw std::invalid_argument("isqrt: negative argument");
    auto x = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (x > 0 && x * x > v) --x;
    while ((x + 1) * (x + 1) <= v) ++x;
    return x;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    // b > 0
    return a >= 0 ? a / b : -((-a + b - 1) / b);
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    return -floor_div(-a, b);
}

/* Reduce h modulo N into the window (-N/2, N/2]; the residue class of h is
 * what matters everywhere, and this window makes h^2 minimal in its class. */
inline std::int64_t normalize_class_rep(std::int64_t h, std::int64_t N) {
    if (N < 1) throw ParamsOutOfRange("modulus N must be a positive integer");
    std::int64_t r = ((h % N) + N) % N;
    if (2 * r > N) r -= N;
    return r;
}

/* Generalized binomial coefficient c(c-1)...(c-k+1)/k!, exact for any
 * integer c (negative included) and k >= 0. */
inline Int gen_binomial(std::int64_t c, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("gen_binomial: k must be >= 0");
    Int result = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        result *= Int(c - i);
        result /= Int(i + 1);   // exact: C(c,i)*(c-i) = C(c,i+1)*(i+1)
    }
    return result;
}

/* Recover a from b_n = sum_{d|n} d*a_d via a_n = (1/n) sum_{d|n} mu(n/d) b_d.
 * Layout: index == n, slot 0 ignored (input and output alike).
 * Throws NonIntegralExponent when n does not divide the Möbius sum, i.e.
 * when b is not a divisor sum of this shape. */
inline std::vector<Int> invert_divisor_sum(const std::vector<Int>& b) {
    std::vector<Int> a(b.size());
    for (std::size_t n = 1; n < b.size(); ++n) {
        Int acc = 0;
        for (std::int64_t d : divisors(static_cast<std::int64_t>(n)))
            acc += mobius(static_cast<std::int64_t>(n) / d) * b[static_cast<std::size_t>(d)];
        Int q, r;
        divide_qr(acc, Int(n), q, r);
        if (r != 0)
            throw NonIntegralExponent("invert_divisor_sum: sum not divisible by n at n=" +
                                      std::to_string(n));
        a[n] = q;
    }
    return a;
}

/* Visit every multiplicity vector (nu_1, ..., nu_max_part) with
 * sum_i i*nu_i = n, exactly once, without materializing the list. */
template <class Visitor>
void enumerate_partitions(std::int64_t n, std::int64_t max_part, Visitor&& visit) {
    if (n < 1) throw std::invalid_argument("enumerate_partitions: n must be positive");
    if (max_part < 1) throw std::invalid_argument("enumerate_partitions: max_part must be positive");
    std::vector<std::int64_t> nu(static_cast<std::size_t>(max_part), 0);
    auto rec = [&](auto&& self, std::int64_t part, std::int64_t remaining) -> void {
        if (part == 1) {
            nu[0] = remaining;
            visit(const_cast<const std::vector<std::int64_t>&>(nu));
            nu[0] = 0;
            return;
        }
        for (std::int64_t cnt = 0; cnt * part <= remaining; ++cnt) {
            nu[static_cast<std::size_t>(part - 1)] = cnt;
            self(self, part - 1, remaining - cnt * part);
        }
        nu[static_cast<std::size_t>(part - 1)] = 0;
    };
    rec(rec, max_part, n);
}

/* A periodic divisor-weight rule d -> w_d, realized as a residue lookup
 * over one full period. Each named rule is a list of congruence classes
 * with a contribution; contributions of overlapping classes add. The
 * additive reading matches the triple-product expansion (each class comes
 * from one family of product factors) and is what makes the k=5 table and
 * the h = ±N/6 tables come out right, where the classes genuinely overlap
 * and their contributions cancel.
 *
 * Rules:
 *   c (h = 0):        +2 at N^2 (mod 2N^2), -3 at 2N^2 (mod 4N^2), -1 at 0 (mod 4N^2)
 *   e (generic h,N):  +1 at ±(N^2+2hN) (mod 2N^2),
 *                     -1 at 0, 2N^2, ±(2N^2+4hN) (mod 4N^2)
 *   f (N = 2|h|):     +1 at 8h^2 (mod 16h^2), -1 at 0 (mod 16h^2)
 *   e' (k-gonal):     +1 at ±(k-3) (mod k-2), -1 at 0, k-2, ±2(k-3) (mod 2(k-2))
 *   alt:              (-1)^(d+1)
 *   c':               c with N = 1;   f':  alt
 */
class WeightTable {
public:
    std::int64_t period() const { return static_cast<std::int64_t>(values_.size()); }

    int weight(std::int64_t d) const {
        return values_[static_cast<std::size_t>(d % period())];
    }

    int operator()(std::int64_t d) const { return weight(d); }

    const std::vector<int>& period_values() const { return values_; }
    const std::string& name() const { return name_; }

    static WeightTable rule_c(std::int64_t N) {
        if (N < 1) throw ParamsOutOfRange("rule c: N must be a positive integer");
        std::vector<int> vals(static_cast<std::size_t>(4 * N * N), 0);
        add_class(vals, N * N, 2 * N * N, +2);
        add_class(vals, 2 * N * N, 4 * N * N, -3);
        add_class(vals, 0, 4 * N * N, -1);
        return WeightTable("c(N=" + std::to_string(N) + ")", std::move(vals));
    }

    static WeightTable rule_e(std::int64_t h, std::int64_t N) {
        if (N < 1) throw ParamsOutOfRange("rule e: N must be a positive integer");
        h = normalize_class_rep(h, N);
        if (h == 0) throw ParamsOutOfRange("rule e: h = 0 (mod N); use rule c");
        if (2 * std::abs(h) == N) throw ParamsOutOfRange("rule e: N = ±2h; use rule f");
        std::vector<int> vals(static_cast<std::size_t>(4 * N * N), 0);
        add_class(vals, N * N + 2 * h * N, 2 * N * N, +1);
        add_class(vals, -(N * N + 2 * h * N), 2 * N * N, +1);
        add_class(vals, 0, 4 * N * N, -1);
        add_class(vals, 2 * N * N, 4 * N * N, -1);
        add_class(vals, 2 * N * N + 4 * h * N, 4 * N * N, -1);
        add_class(vals, -(2 * N * N + 4 * h * N), 4 * N * N, -1);
        return WeightTable("e(h=" + std::to_string(h) + ",N=" + std::to_string(N) + ")",
                           std::move(vals));
    }

    static WeightTable rule_f(std::int64_t h) {
        if (h == 0) throw ParamsOutOfRange("rule f: h must be nonzero");
        h = std::abs(h);   // the rule depends on h^2 only
        std::vector<int> vals(static_cast<std::size_t>(16 * h * h), 0);
        add_class(vals, 8 * h * h, 16 * h * h, +1);
        add_class(vals, 0, 16 * h * h, -1);
        return WeightTable("f(h=" + std::to_string(h) + ")", std::move(vals));
    }

    static WeightTable rule_e_prime(std::int64_t k) {
        if (k <= 4) throw KOutOfRange("rule e': requires k > 4");
        std::vector<int> vals(static_cast<std::size_t>(2 * (k - 2)), 0);
        add_class(vals, k - 3, k - 2, +1);
        add_class(vals, -(k - 3), k - 2, +1);
        add_class(vals, 0, 2 * (k - 2), -1);
        add_class(vals, k - 2, 2 * (k - 2), -1);
        add_class(vals, 2 * (k - 3), 2 * (k - 2), -1);
        add_class(vals, -2 * (k - 3), 2 * (k - 2), -1);
        return WeightTable("e'(k=" + std::to_string(k) + ")", std::move(vals));
    }

    static WeightTable rule_alt() {
        return WeightTable("alt", {-1, +1});   // (-1)^(d+1): +1 for odd d
    }

    static WeightTable rule_c_prime() {
        return WeightTable("c'", {-1, +2, -3, +2});
    }

    static WeightTable rule_f_prime() {
        return WeightTable("f'", {-1, +1});
    }

private:
    WeightTable(std::string name, std::vector<int> values)
        : name_(std::move(name)), values_(std::move(values)) {
        for (int v : values_)
            if (v < -3 || v > 2)
                throw std::logic_error("weight table value out of range in " + name_);
    }

    static void add_class(std::vector<int>& vals, std::int64_t residue, std::int64_t modulus,
                          int delta) {
        const auto period = static_cast<std::int64_t>(vals.size());
        std::int64_t r = ((residue % modulus) + modulus) % modulus;
        for (; r < period; r += modulus) vals[static_cast<std::size_t>(r)] += delta;
    }

    std::string name_;
    std::vector<int> values_;
};

}  // namespace qseries
