#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qseries/arith.hpp"
#include "qseries/bigint.hpp"
#include "qseries/errors.hpp"

namespace qseries {

/* The m-th generalized k-gonal number ((k-2)m^2 - (k-4)m)/2. */
inline std::int64_t kgonal_number(std::int64_t k, std::int64_t m) {
    return ((k - 2) * m * m - (k - 4) * m) / 2;
}

enum class PartKind { squares, triangular, kgonal, congruence, congruence_plus };

/* A family of positive part values with multiplicities: the multiplicity of
 * a value is how many indices in the defining range produce it. Ordered
 * tuples of parts drawn from the family are what the signed counts below
 * enumerate. Multiplicities are accumulated from the index range into a
 * value -> count map, so coincidences (±m for squares, any accidental
 * k-gonal collision) need no special casing.
 *
 *   squares             m^2, m in Z \ {0}             (multiplicity 2)
 *   triangular          T_x = x(x+1)/2, x >= 1        (multiplicity 1)
 *   kgonal(k)           p_k(m), m in Z \ {0}, k >= 4
 *   congruence(h,N)     s^2 N^2 + 2shN, s in Z \ {0}, |h| < N/2
 *   congruence_plus(h,N)  the same with s >= 1 only
 */
class PartSystem {
public:
    static PartSystem squares() { return PartSystem(PartKind::squares, 0, 0, 1); }

    static PartSystem triangular() { return PartSystem(PartKind::triangular, 0, 0, 1); }

    static PartSystem kgonal(std::int64_t k) {
        if (k < 4) throw KOutOfRange("kgonal parts: k must be >= 4 (k = 3 is triangular)");
        return PartSystem(PartKind::kgonal, k, 0, 1);
    }

    static PartSystem congruence(std::int64_t h, std::int64_t N) {
        h = normalize_class_rep(h, N);
        if (2 * h == N)
            throw ParamsOutOfRange("congruence parts: N = 2h has a zero part; use congruence_plus");
        return PartSystem(PartKind::congruence, 0, h, N);
    }

    static PartSystem congruence_plus(std::int64_t h, std::int64_t N) {
        h = normalize_class_rep(h, N);
        return PartSystem(PartKind::congruence_plus, 0, h, N);
    }

    PartKind kind() const { return kind_; }
    std::int64_t k() const { return k_; }
    std::int64_t h() const { return h_; }
    std::int64_t N() const { return N_; }

    /* All part values <= max_value with their multiplicities, ascending. */
    std::vector<std::pair<std::int64_t, int>> parts_up_to(std::int64_t max_value) const {
        std::map<std::int64_t, int> acc;
        switch (kind_) {
            case PartKind::squares:
                for (std::int64_t m = 1; m * m <= max_value; ++m) acc[m * m] += 2;
                break;
            case PartKind::triangular:
                for (std::int64_t x = 1; x * (x + 1) / 2 <= max_value; ++x)
                    acc[x * (x + 1) / 2] += 1;
                break;
            case PartKind::kgonal:
                for (std::int64_t m = 1; kgonal_number(k_, m) <= max_value; ++m)
                    acc[kgonal_number(k_, m)] += 1;
                for (std::int64_t m = -1; kgonal_number(k_, m) <= max_value; --m)
                    acc[kgonal_number(k_, m)] += 1;
                break;
            case PartKind::congruence:
                for (std::int64_t s = 1; part_of(s) <= max_value; ++s) acc[part_of(s)] += 1;
                for (std::int64_t s = -1; part_of(s) <= max_value; --s) acc[part_of(s)] += 1;
                break;
            case PartKind::congruence_plus:
                for (std::int64_t s = 1; part_of(s) <= max_value; ++s) acc[part_of(s)] += 1;
                break;
        }
        return {acc.begin(), acc.end()};
    }

    std::string name() const {
        switch (kind_) {
            case PartKind::squares: return "squares";
            case PartKind::triangular: return "triangular";
            case PartKind::kgonal: return "kgonal(k=" + std::to_string(k_) + ")";
            case PartKind::congruence:
                return "congruence(h=" + std::to_string(h_) + ",N=" + std::to_string(N_) + ")";
            case PartKind::congruence_plus:
                return "congruence_plus(h=" + std::to_string(h_) + ",N=" + std::to_string(N_) + ")";
        }
        return "?";
    }

private:
    PartSystem(PartKind kind, std::int64_t k, std::int64_t h, std::int64_t N)
        : kind_(kind), k_(k), h_(h), N_(N) {}

    std::int64_t part_of(std::int64_t s) const { return s * s * N_ * N_ + 2 * s * h_ * N_; }

    PartKind kind_;
    std::int64_t k_;
    std::int64_t h_;
    std::int64_t N_;
};

/* values[m] = sum over ordered tuples of parts summing to m of (-1)^length;
 * the empty tuple gives values[0] = 1. */
struct SignedCountTable {
    SignedCountTable(PartSystem sys, std::vector<Int> vals)
        : system(std::move(sys)), values(std::move(vals)) {}

    PartSystem system;
    std::vector<Int> values;
};

/* Fills the table by first-part decomposition: every tuple summing to
 * m >= 1 is a first part p followed by a tuple summing to m - p with one
 * element fewer, whence v_m = -sum_p mult(p) v_{m-p}. */
inline SignedCountTable build_signed_counts(const PartSystem& sys, std::int64_t n_max) {
    if (n_max < 0) throw std::invalid_argument("build_signed_counts: n_max must be >= 0");
    const auto parts = sys.parts_up_to(n_max);
    std::vector<Int> v(static_cast<std::size_t>(n_max) + 1);
    v[0] = 1;
    for (std::int64_t m = 1; m <= n_max; ++m) {
        Int acc = 0;
        for (const auto& [p, mult] : parts) {
            if (p > m) break;
            acc += mult * v[static_cast<std::size_t>(m - p)];
        }
        v[static_cast<std::size_t>(m)] = -acc;
    }
    return SignedCountTable(sys, std::move(v));
}

namespace detail {

constexpr std::int64_t kBruteForceLimit = 30;

inline Int brute_force_rec(const std::vector<std::pair<std::int64_t, int>>& parts,
                           std::int64_t remaining) {
    if (remaining == 0) return 1;   // one complete tuple ends here
    Int total = 0;
    for (const auto& [p, mult] : parts) {
        if (p > remaining) break;
        // each of the mult indices with value p can be the first part
        total -= mult * brute_force_rec(parts, remaining - p);
    }
    return total;
}

}  // namespace detail

/* Definitionally faithful oracle: exhaustive recursion over first parts,
 * no memoization, each tuple contributing (-1)^length. Exponential in n;
 * guarded by a hard input bound. */
inline Int brute_force_signed_count(const PartSystem& sys, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("brute_force_signed_count: n must be >= 0");
    if (n > detail::kBruteForceLimit)
        throw InputTooLarge("brute_force_signed_count: n exceeds bound " +
                            std::to_string(detail::kBruteForceLimit));
    return detail::brute_force_rec(sys.parts_up_to(n), n);
}

namespace detail {

inline void require_counts(const SignedCountTable& counts, PartKind kind, std::int64_t n) {
    if (counts.system.kind() != kind)
        throw std::invalid_argument("weighted sum: count table built for " + counts.system.name());
    if (static_cast<std::int64_t>(counts.values.size()) <= n)
        throw std::invalid_argument("weighted sum: count table too short");
}

}  // namespace detail

/* sum_{m in Z} m^2 v(n - m^2); only m with m^2 <= n contribute and the
 * m = 0 term carries weight 0. */
inline Int weighted_lhs_squares(std::int64_t n, const SignedCountTable& counts) {
    detail::require_counts(counts, PartKind::squares, n);
    Int acc = 0;
    for (std::int64_t m = 1; m * m <= n; ++m)
        acc += 2 * Int(m) * m * counts.values[static_cast<std::size_t>(n - m * m)];
    return acc;
}

/* sum_{m >= 0} (2m+1)^2 v(n - T_m): the triangular-number sum times 8, so
 * that everything stays integral. Callers compare against 8 times the
 * divisor-sum side. */
inline Int weighted_lhs_triangular_x8(std::int64_t n, const SignedCountTable& counts) {
    detail::require_counts(counts, PartKind::triangular, n);
    Int acc = 0;
    for (std::int64_t m = 0; m * (m + 1) / 2 <= n; ++m) {
        const std::int64_t w = (2 * m + 1) * (2 * m + 1);
        acc += Int(w) * counts.values[static_cast<std::size_t>(n - m * (m + 1) / 2)];
    }
    return acc;
}

/* sum_{m in Z} (8(k-2) p_k(m) + (k-4)^2) v(n - p_k(m)): the k-gonal sum
 * scaled by 8(k-2); compare against 8(k-2) sum_{d|n} d e'_d. */
inline Int weighted_lhs_kgonal_scaled(std::int64_t k, std::int64_t n,
                                      const SignedCountTable& counts) {
    if (k <= 4) throw KOutOfRange("weighted k-gonal sum: requires k > 4");
    detail::require_counts(counts, PartKind::kgonal, n);
    if (counts.system.k() != k)
        throw std::invalid_argument("weighted k-gonal sum: table built for different k");
    Int acc = 0;
    auto add_term = [&](std::int64_t m) {
        const std::int64_t p = kgonal_number(k, m);
        if (p > n) return false;
        const Int w = Int(8) * (k - 2) * p + (k - 4) * (k - 4);
        acc += w * counts.values[static_cast<std::size_t>(n - p)];
        return true;
    };
    add_term(0);
    for (std::int64_t m = 1; add_term(m); ++m) {}
    for (std::int64_t m = -1; add_term(m); --m) {}
    return acc;
}

/* sum over m ≡ h (mod N), m^2 - h^2 <= n, of m^2 v(n - m^2 + h^2). */
inline Int weighted_lhs_general(std::int64_t h, std::int64_t N, std::int64_t n,
                                const SignedCountTable& counts) {
    h = normalize_class_rep(h, N);
    if (h == 0 || 2 * std::abs(h) == N)
        throw ParamsOutOfRange("weighted congruence sum: requires h != 0 and N != ±2h");
    detail::require_counts(counts, PartKind::congruence, n);
    if (counts.system.h() != h || counts.system.N() != N)
        throw std::invalid_argument("weighted congruence sum: table built for different (h,N)");
    Int acc = 0;
    auto add_term = [&](std::int64_t t) {
        const std::int64_t m = h + t * N;
        const std::int64_t p = m * m - h * h;
        if (p > n) return false;
        acc += Int(m) * m * counts.values[static_cast<std::size_t>(n - p)];
        return true;
    };
    add_term(0);
    for (std::int64_t t = 1; add_term(t); ++t) {}
    for (std::int64_t t = -1; add_term(t); --t) {}
    return acc;
}

/* The N = 2h variant: sum over m in N, m ≡ h (mod 2|h|), of
 * m^2 v(n - m^2 + h^2), with v from the s >= 1 part system. */
inline Int weighted_lhs_half(std::int64_t h, std::int64_t n, const SignedCountTable& counts) {
    if (h == 0) throw ParamsOutOfRange("weighted half sum: requires h != 0");
    h = std::abs(h);
    detail::require_counts(counts, PartKind::congruence_plus, n);
    if (counts.system.h() != h || counts.system.N() != 2 * h)
        throw std::invalid_argument("weighted half sum: table built for different (h,N)");
    Int acc = 0;
    for (std::int64_t j = 0;; ++j) {
        const std::int64_t m = h * (2 * j + 1);
        const std::int64_t p = m * m - h * h;
        if (p > n) break;
        acc += Int(m) * m * counts.values[static_cast<std::size_t>(n - p)];
    }
    return acc;
}

}  // namespace qseries
